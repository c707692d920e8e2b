#include "heis/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace heis {

namespace {

// conservative coordinate box containing B(center, r)
struct MetricBox {
    double x_lo, x_hi, y_lo, y_hi, t_lo, t_hi;
};

MetricBox ball_box(const Point& c, double r) {
    // |dx|,|dy| <= r and |t - c.t - (c.x p.y - c.y p.x - c.x c.y + c.y c.x)/2|:
    // the twist term is bounded by r(|c.x|+|c.y|)/2, the vertical part by r^2/4.
    const double tband = 0.25 * r * r + 0.5 * r * (std::abs(c.x) + std::abs(c.y));
    return {c.x - r, c.x + r, c.y - r, c.y + r, c.t - tband, c.t + tband};
}

bool boxes_intersect(const GraphMeasure::BlockBox& b, const MetricBox& m) {
    return b.x_hi >= m.x_lo && b.x_lo <= m.x_hi && b.y_hi >= m.y_lo && b.y_lo <= m.y_hi &&
           b.t_hi >= m.t_lo && b.t_lo <= m.t_hi;
}

}  // namespace

GraphMeasure build_graph_measure(const IntrinsicFunction& phi, double y_min, double y_max,
                                 double t_min, double t_max, std::size_t n_y,
                                 std::size_t n_t) {
    if (n_y < 2 || n_t < 2) throw std::invalid_argument("grid must be at least 2x2");
    require_finite(y_min, "y_min");
    require_finite(y_max, "y_max");
    require_finite(t_min, "t_min");
    require_finite(t_max, "t_max");
    if (y_max <= y_min || t_max <= t_min) throw std::invalid_argument("empty domain rectangle");

    GraphMeasure mu;
    mu.phi = phi;
    mu.y_min = y_min;
    mu.y_max = y_max;
    mu.t_min = t_min;
    mu.t_max = t_max;
    mu.n_y = n_y;
    mu.n_t = n_t;
    mu.cell_dy = (y_max - y_min) / static_cast<double>(n_y);
    mu.cell_dt = (t_max - t_min) / static_cast<double>(n_t);

    const std::size_t n = n_y * n_t;
    mu.nodes.resize(n);
    mu.points.resize(n);
    mu.weights.resize(n);
    mu.grads.resize(n);

    const double cell_area = mu.cell_dy * mu.cell_dt;
    std::vector<int> bad(n, 0);
    parallel_for(n, [&](std::size_t idx) {
        const std::size_t i = idx / n_t;  // y index
        const std::size_t j = idx % n_t;  // t index
        const WPoint w{y_min + (static_cast<double>(i) + 0.5) * mu.cell_dy,
                       t_min + (static_cast<double>(j) + 0.5) * mu.cell_dt};
        mu.nodes[idx] = w;
        const double g = intrinsic_gradient(phi, w);
        const double val = phi.phi(w);
        if (!std::isfinite(g) || !std::isfinite(val)) {
            bad[idx] = 1;
            return;
        }
        mu.grads[idx] = g;
        mu.points[idx] = graph_map(phi, w);
        mu.weights[idx] = cell_area * std::sqrt(1.0 + g * g);
    });
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (bad[idx]) {
            throw std::runtime_error("non-finite graph data at node (w1=" +
                                     fmt_g17(mu.nodes[idx].w1) + ", w2=" +
                                     fmt_g17(mu.nodes[idx].w2) + ")");
        }
    }

    mu.total_mass = parallel_sum(n, [&](std::size_t i) { return mu.weights[i]; });

    // resolution: max Koranyi distance between grid-adjacent points
    std::vector<double> row_max(n, 0.0);
    parallel_for(n, [&](std::size_t idx) {
        const std::size_t i = idx / n_t;
        const std::size_t j = idx % n_t;
        double m = 0.0;
        if (i + 1 < n_y) m = std::max(m, dist(mu.points[idx + n_t], mu.points[idx]));
        if (j + 1 < n_t) m = std::max(m, dist(mu.points[idx + 1], mu.points[idx]));
        row_max[idx] = m;
    });
    mu.resolution = *std::max_element(row_max.begin(), row_max.end());

    // two-sweep diameter estimate
    auto farthest = [&](const Point& from) {
        std::size_t best = 0;
        double bestd = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = dist(mu.points[i], from);
            if (d > bestd) {
                bestd = d;
                best = i;
            }
        }
        return std::make_pair(best, bestd);
    };
    const auto [a, da] = farthest(mu.points[0]);
    (void)da;
    const auto [b, db] = farthest(mu.points[a]);
    (void)b;
    mu.diameter = db;

    // block bounding boxes for ball queries
    const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
    mu.block_boxes.resize(nblocks);
    for (std::size_t bk = 0; bk < nblocks; ++bk) {
        const std::size_t lo = bk * kSumBlock;
        const std::size_t hi = std::min(n, lo + kSumBlock);
        GraphMeasure::BlockBox box{mu.points[lo].x, mu.points[lo].x, mu.points[lo].y,
                                   mu.points[lo].y, mu.points[lo].t, mu.points[lo].t};
        for (std::size_t i = lo + 1; i < hi; ++i) {
            box.x_lo = std::min(box.x_lo, mu.points[i].x);
            box.x_hi = std::max(box.x_hi, mu.points[i].x);
            box.y_lo = std::min(box.y_lo, mu.points[i].y);
            box.y_hi = std::max(box.y_hi, mu.points[i].y);
            box.t_lo = std::min(box.t_lo, mu.points[i].t);
            box.t_hi = std::max(box.t_hi, mu.points[i].t);
        }
        mu.block_boxes[bk] = box;
    }
    return mu;
}

double integrate(const std::function<double(const Point&)>& h, const GraphMeasure& mu) {
    const std::size_t n = mu.size();
    std::vector<double> vals(n);
    std::vector<int> bad(n, 0);
    parallel_for(n, [&](std::size_t i) {
        const double v = h(mu.points[i]);
        if (!std::isfinite(v)) {
            bad[i] = 1;
            return;
        }
        vals[i] = v;
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (bad[i]) {
            throw std::runtime_error("integrand non-finite at node " + std::to_string(i));
        }
    }
    return parallel_sum(n, [&](std::size_t i) { return vals[i] * mu.weights[i]; });
}

double ball_mass(const GraphMeasure& mu, const Point& center, double r) {
    require_positive(r, "ball radius");
    const MetricBox box = ball_box(center, r);
    const double r4 = r * r * r * r;
    const std::size_t n = mu.size();
    const std::size_t nblocks = mu.block_boxes.size();

    std::vector<double> block_sums(nblocks, 0.0);
    parallel_for(nblocks, [&](std::size_t bk) {
        if (!boxes_intersect(mu.block_boxes[bk], box)) return;  // contributes exactly 0
        const std::size_t lo = bk * kSumBlock;
        const std::size_t hi = std::min(n, lo + kSumBlock);
        NeumaierAcc acc;
        for (std::size_t i = lo; i < hi; ++i) {
            if (koranyi_norm4(mul(inv(center), mu.points[i])) <= r4) acc.add(mu.weights[i]);
        }
        block_sums[bk] = acc.value();
    });
    NeumaierAcc total;
    for (double s : block_sums) total.add(s);
    return total.value();
}

std::vector<std::uint32_t> ball_nodes(const GraphMeasure& mu, const Point& center, double r) {
    require_positive(r, "ball radius");
    const MetricBox box = ball_box(center, r);
    const double r4 = r * r * r * r;
    std::vector<std::uint32_t> out;
    const std::size_t n = mu.size();
    for (std::size_t bk = 0; bk < mu.block_boxes.size(); ++bk) {
        if (!boxes_intersect(mu.block_boxes[bk], box)) continue;
        const std::size_t lo = bk * kSumBlock;
        const std::size_t hi = std::min(n, lo + kSumBlock);
        for (std::size_t i = lo; i < hi; ++i) {
            if (koranyi_norm4(mul(inv(center), mu.points[i])) <= r4) {
                out.push_back(static_cast<std::uint32_t>(i));
            }
        }
    }
    return out;
}

AdrReport adr_ratios(const GraphMeasure& mu, std::size_t n_balls, double r_lo, double r_hi,
                     std::uint64_t seed) {
    if (r_hi <= r_lo) throw std::invalid_argument("empty radius range");
    if (r_lo < 4.0 * mu.resolution) {
        throw std::invalid_argument("radius below resolution guard: r_lo=" + fmt_g17(r_lo) +
                                    " < 4*resolution=" + fmt_g17(4.0 * mu.resolution));
    }
    if (r_hi > mu.diameter / 4.0) {
        throw std::invalid_argument("radius above diameter/4 guard: r_hi=" + fmt_g17(r_hi));
    }
    Rng rng(seed);
    AdrReport rep;
    rep.samples = n_balls;
    rep.seed = seed;
    for (std::size_t k = 0; k < n_balls; ++k) {
        const Point c = mu.points[rng.index(mu.size())];
        const double r = rng.log_uniform(r_lo, r_hi);
        const double ratio = ball_mass(mu, c, r) / (r * r * r);
        rep.c_min = std::min(rep.c_min, ratio);
        rep.c_max = std::max(rep.c_max, ratio);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Christ cubes.

namespace {

// Greedy maximal separated net over the deterministic node order.
std::vector<std::uint32_t> greedy_net(const GraphMeasure& mu, double sep) {
    std::vector<std::uint32_t> net;
    const double sep4 = sep * sep * sep * sep;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        bool ok = true;
        for (std::uint32_t k : net) {
            if (koranyi_norm4(mul(inv(mu.points[k]), mu.points[i])) < sep4) {
                ok = false;
                break;
            }
        }
        if (ok) net.push_back(static_cast<std::uint32_t>(i));
    }
    return net;
}

// nearest net point (ties broken by lower net index)
std::vector<std::uint32_t> assign_nearest(const GraphMeasure& mu,
                                          const std::vector<std::uint32_t>& net) {
    std::vector<std::uint32_t> assign(mu.size());
    parallel_for(mu.size(), [&](std::size_t i) {
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t arg = 0;
        for (std::uint32_t k = 0; k < net.size(); ++k) {
            const double d = koranyi_norm4(mul(inv(mu.points[net[k]]), mu.points[i]));
            if (d < best) {
                best = d;
                arg = k;
            }
        }
        assign[i] = arg;
    });
    return assign;
}

}  // namespace

ChristCubeTree build_christ_cubes(const GraphMeasure& mu, int j_min, int j_max) {
    if (j_min > j_max) throw std::invalid_argument("j_min must be <= j_max");
    const double finest = std::ldexp(1.0, j_min);
    const double coarsest = std::ldexp(1.0, j_max);
    if (finest < 4.0 * mu.resolution) {
        throw std::invalid_argument("2^j_min below 4x grid resolution");
    }
    if (coarsest > mu.diameter) {
        throw std::invalid_argument("2^j_max exceeds the point-cloud diameter");
    }

    const std::size_t gens = static_cast<std::size_t>(j_max - j_min + 1);
    const std::size_t n = mu.size();

    ChristCubeTree tree;
    tree.j_min = j_min;
    tree.j_max = j_max;
    tree.cube_of.assign(gens, std::vector<std::uint32_t>(n, 0));

    // parent pointer of each cube, per generation (coarsest has none)
    std::vector<std::vector<std::uint32_t>> parent_ptr(gens);
    std::vector<std::vector<std::uint32_t>> nets(gens);

    for (std::size_t g = 0; g < gens; ++g) {
        const int j = j_max - static_cast<int>(g);
        const double ell = std::ldexp(1.0, j);
        nets[g] = greedy_net(mu, ell);
        const auto assign = assign_nearest(mu, nets[g]);

        if (g == 0) {
            tree.cube_of[0] = assign;
            parent_ptr[0].assign(nets[0].size(), 0);
            continue;
        }

        // parent of cube k := current cube of its net point, one level up
        parent_ptr[g].resize(nets[g].size());
        for (std::uint32_t k = 0; k < nets[g].size(); ++k) {
            parent_ptr[g][k] = tree.cube_of[g - 1][nets[g][k]];
        }

        // assign nodes and cascade the ancestor chain of the net point, so
        // that nesting holds exactly at every computed level
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t k = assign[i];
            tree.cube_of[g][i] = k;
            std::uint32_t cur = parent_ptr[g][k];
            for (std::size_t gg = g; gg-- > 0;) {
                tree.cube_of[gg][i] = cur;
                cur = parent_ptr[gg][cur];
            }
        }
    }

    // assemble cubes; drop empty ones and remap indices
    tree.generations.resize(gens);
    std::vector<std::vector<std::uint32_t>> remap(gens);
    for (std::size_t g = 0; g < gens; ++g) {
        const int j = j_max - static_cast<int>(g);
        const std::size_t ncubes = nets[g].size();
        std::vector<std::size_t> counts(ncubes, 0);
        for (std::size_t i = 0; i < n; ++i) ++counts[tree.cube_of[g][i]];

        remap[g].assign(ncubes, std::numeric_limits<std::uint32_t>::max());
        std::uint32_t next = 0;
        for (std::size_t k = 0; k < ncubes; ++k) {
            if (counts[k] > 0) remap[g][k] = next++;
        }

        auto& out = tree.generations[g];
        out.resize(next);
        for (std::size_t k = 0; k < ncubes; ++k) {
            if (remap[g][k] == std::numeric_limits<std::uint32_t>::max()) continue;
            ChristCube& q = out[remap[g][k]];
            q.j = j;
            q.index = remap[g][k];
            q.center_node = nets[g][k];
            q.node_ids.reserve(counts[k]);
            q.parent = g == 0 ? 0 : remap[g - 1][parent_ptr[g][k]];
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t k = remap[g][tree.cube_of[g][i]];
            tree.cube_of[g][i] = k;
            out[k].node_ids.push_back(static_cast<std::uint32_t>(i));
        }
        for (auto& q : out) {
            q.mass = 0.0;
            NeumaierAcc acc;
            for (std::uint32_t i : q.node_ids) acc.add(mu.weights[i]);
            q.mass = acc.value();
        }
    }

    // ---- verification pass: (C0)-(C3) ----
    tree.partition_ok = true;
    for (std::size_t g = 0; g < gens && tree.partition_ok; ++g) {
        std::vector<std::size_t> seen(tree.generations[g].size(), 0);
        for (const auto& q : tree.generations[g]) {
            for (std::uint32_t i : q.node_ids) {
                if (tree.cube_of[g][i] != q.index) tree.partition_ok = false;
            }
            seen[q.index] += q.node_ids.size();
        }
        std::size_t total = 0;
        for (std::size_t c : seen) total += c;
        if (total != n) tree.partition_ok = false;
    }

    tree.nesting_ok = true;
    for (std::size_t g = 1; g < gens && tree.nesting_ok; ++g) {
        for (const auto& q : tree.generations[g]) {
            for (std::uint32_t i : q.node_ids) {
                if (tree.cube_of[g - 1][i] != q.parent) {
                    tree.nesting_ok = false;
                    break;
                }
            }
            if (!tree.nesting_ok) break;
        }
    }

    // (C2): exact pairwise diameters, parallel over cubes
    tree.diam_const = 0.0;
    for (std::size_t g = 0; g < gens; ++g) {
        auto& cubes = tree.generations[g];
        parallel_for(cubes.size(), [&](std::size_t c) {
            auto& q = cubes[c];
            double best4 = 0.0;
            for (std::size_t a2 = 0; a2 < q.node_ids.size(); ++a2) {
                const Point& pa = mu.points[q.node_ids[a2]];
                for (std::size_t b2 = a2 + 1; b2 < q.node_ids.size(); ++b2) {
                    best4 = std::max(best4,
                                     koranyi_norm4(mul(inv(pa), mu.points[q.node_ids[b2]])));
                }
            }
            q.diam = std::sqrt(std::sqrt(best4));
        });
        for (auto& q : cubes) {
            tree.diam_const = std::max(tree.diam_const, q.diam / std::ldexp(1.0, q.j));
        }
    }

    // (C3): nearest node outside the cube, via expanding ball queries
    tree.inner_const = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < gens; ++g) {
        auto& cubes = tree.generations[g];
        parallel_for(cubes.size(), [&](std::size_t c) {
            auto& q = cubes[c];
            const Point& z = mu.points[q.center_node];
            const double ell = std::ldexp(1.0, q.j);
            double best = std::numeric_limits<double>::infinity();
            for (double rad = 0.25 * ell; rad <= 4.0 * mu.diameter; rad *= 2.0) {
                const auto cand = ball_nodes(mu, z, rad);
                for (std::uint32_t i : cand) {
                    if (tree.cube_of[g][i] != q.index) {
                        best = std::min(best, dist(mu.points[i], z));
                    }
                }
                if (std::isfinite(best) && best <= rad) break;
            }
            q.inner_radius = best;
        });
        for (auto& q : cubes) {
            if (std::isfinite(q.inner_radius)) {
                tree.inner_const =
                    std::min(tree.inner_const, q.inner_radius / std::ldexp(1.0, q.j));
            }
        }
    }

    tree.mass_lo = std::numeric_limits<double>::infinity();
    tree.mass_hi = 0.0;
    for (std::size_t g = 0; g < gens; ++g) {
        for (const auto& q : tree.generations[g]) {
            const double ell3 = std::ldexp(1.0, 3 * q.j);
            tree.mass_lo = std::min(tree.mass_lo, q.mass / ell3);
            tree.mass_hi = std::max(tree.mass_hi, q.mass / ell3);
        }
    }
    return tree;
}

double boundary_layer(const GraphMeasure& mu, const ChristCubeTree& tree, std::size_t gen,
                      std::size_t cube, double rho) {
    require_positive(rho, "rho");
    const auto& q = tree.generations.at(gen).at(cube);
    if (rho > 2.0) return q.mass;
    const double band = rho * std::ldexp(1.0, q.j);
    const double band4 = band * band * band * band;

    // candidate outside nodes near the cube's bounding box
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo, t_lo = x_lo, t_hi = -x_lo;
    double cmax = 0.0;
    for (std::uint32_t i : q.node_ids) {
        const Point& p = mu.points[i];
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
        t_lo = std::min(t_lo, p.t);
        t_hi = std::max(t_hi, p.t);
        cmax = std::max(cmax, std::abs(p.x) + std::abs(p.y));
    }
    const double tband = 0.25 * band * band + 0.5 * band * cmax;
    std::vector<std::uint32_t> outside;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (tree.cube_of[gen][i] == q.index) continue;
        const Point& p = mu.points[i];
        if (p.x < x_lo - band || p.x > x_hi + band) continue;
        if (p.y < y_lo - band || p.y > y_hi + band) continue;
        if (p.t < t_lo - tband || p.t > t_hi + tband) continue;
        outside.push_back(static_cast<std::uint32_t>(i));
    }

    std::vector<int> flagged(q.node_ids.size(), 0);
    parallel_for(q.node_ids.size(), [&](std::size_t a) {
        const Point& p = mu.points[q.node_ids[a]];
        for (std::uint32_t i : outside) {
            if (koranyi_norm4(mul(inv(p), mu.points[i])) <= band4) {
                flagged[a] = 1;
                return;
            }
        }
    });
    return parallel_sum(q.node_ids.size(),
                        [&](std::size_t a) { return flagged[a] ? mu.weights[q.node_ids[a]] : 0.0; });
}

BoundaryFit thin_boundary_fit(const GraphMeasure& mu, const ChristCubeTree& tree,
                              std::size_t gen, std::size_t cube) {
    const auto& q = tree.generations.at(gen).at(cube);
    BoundaryFit fit;
    std::vector<double> lx, ly;
    for (int k = 1; k <= 6; ++k) {
        const double rho = std::ldexp(1.0, -k);
        if (rho * std::ldexp(1.0, q.j) < mu.resolution) {
            ++fit.resolution_limited;
            continue;
        }
        const double frac = boundary_layer(mu, tree, gen, cube, rho) / q.mass;
        fit.rhos.push_back(rho);
        fit.layer_fraction.push_back(frac);
        if (frac > 0.0 && frac < 1.0) {
            lx.push_back(std::log(rho));
            ly.push_back(std::log(frac));
        }
    }
    if (lx.size() >= 2) {
        fit.exponent = fit_slope(lx, ly);
        fit.fit_ok = true;
    }
    return fit;
}

// ---------------------------------------------------------------------------

ProjectedBallArea projected_ball_area(const VerticalSubgroup& W, const Point& z, double r,
                                      std::size_t n_mc, std::uint64_t seed) {
    require_positive(r, "radius");
    if (n_mc < 10000) throw std::invalid_argument("n_mc must be at least 1e4");

    // rotate to the theta = 0 frame; areas are rotation-invariant
    const Point z0 = rotate_z(-W.theta, z);
    const double r4 = r * r * r * r;

    // fiber over w: (v, w1, w2 - v w1 / 2); minimise ||z0^{-1} . fiber||^4 in v
    auto min_dist4 = [&](const WPoint& w) {
        auto f = [&](double v) {
            const Point p{v, w.w1, w.w2 - 0.5 * v * w.w1};
            return koranyi_norm4(mul(inv(z0), p));
        };
        // coarse grid then golden refinement around the best cell
        const double lo = z0.x - 1.5 * r, hi = z0.x + 1.5 * r;
        const int grid = 33;
        double best = std::numeric_limits<double>::infinity(), bestv = lo;
        for (int i = 0; i < grid; ++i) {
            const double v = lo + (hi - lo) * i / (grid - 1);
            const double fv = f(v);
            if (fv < best) {
                best = fv;
                bestv = v;
            }
        }
        const double cell = (hi - lo) / (grid - 1);
        double a = bestv - cell, b2 = bestv + cell;
        const double gr = 0.6180339887498949;
        double x1 = b2 - gr * (b2 - a), x2 = a + gr * (b2 - a);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                b2 = x2;
                x2 = x1;
                f2 = f1;
                x1 = b2 - gr * (b2 - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b2 - a);
                f2 = f(x2);
            }
        }
        return std::min({best, f1, f2});
    };

    // bounding box of pi_W(B(z0, r)) in (w1, w2) coordinates
    const double w1_lo = z0.y - r, w1_hi = z0.y + r;
    const double w2c = z0.t + 0.5 * z0.x * z0.y;
    const double half = (0.75 * r * r + std::abs(z0.x) * r) * 1.000001 + 1e-300;
    const double w2_lo = w2c - half, w2_hi = w2c + half;
    const double box_area = (w1_hi - w1_lo) * (w2_hi - w2_lo);

    Rng rng(seed);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n_mc; ++i) {
        const WPoint w{rng.uniform(w1_lo, w1_hi), rng.uniform(w2_lo, w2_hi)};
        if (min_dist4(w) <= r4) ++hits;
    }

    ProjectedBallArea out;
    out.samples = n_mc;
    out.hits = hits;
    const double p = static_cast<double>(hits) / static_cast<double>(n_mc);
    out.area = box_area * p;
    out.std_error = box_area * std::sqrt(p * (1.0 - p) / static_cast<double>(n_mc));
    return out;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

void put_f64(std::ofstream& os, double v) {
    static_assert(sizeof(double) == 8);
    os.write(reinterpret_cast<const char*>(&v), 8);
}

void put_u64(std::ofstream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), 8);
}

double get_f64(std::ifstream& is) {
    double v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

std::uint64_t get_u64(std::ifstream& is) {
    std::uint64_t v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

}  // namespace

void write_hsm1(const GraphMeasure& mu, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os.write("HSM1", 4);
    put_u64(os, mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        put_f64(os, mu.nodes[i].w1);
        put_f64(os, mu.nodes[i].w2);
        put_f64(os, mu.weights[i]);
        put_f64(os, mu.points[i].x);
        put_f64(os, mu.points[i].y);
        put_f64(os, mu.points[i].t);
    }
    if (!os) throw std::runtime_error("write failure on " + path);
}

MeasureRecord read_hsm1(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "HSM1", 4) != 0) {
        throw std::runtime_error("bad magic in " + path);
    }
    const std::uint64_t n = get_u64(is);
    MeasureRecord rec;
    rec.nodes.resize(n);
    rec.weights.resize(n);
    rec.points.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        rec.nodes[i].w1 = get_f64(is);
        rec.nodes[i].w2 = get_f64(is);
        rec.weights[i] = get_f64(is);
        rec.points[i].x = get_f64(is);
        rec.points[i].y = get_f64(is);
        rec.points[i].t = get_f64(is);
    }
    if (!is) throw std::runtime_error("truncated file " + path);
    return rec;
}

void write_measure_csv(const GraphMeasure& mu, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << "w1,w2,weight,px,py,pt\n";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        os << fmt_g17(mu.nodes[i].w1) << ',' << fmt_g17(mu.nodes[i].w2) << ','
           << fmt_g17(mu.weights[i]) << ',' << fmt_g17(mu.points[i].x) << ','
           << fmt_g17(mu.points[i].y) << ',' << fmt_g17(mu.points[i].t) << '\n';
    }
}

}  // namespace heis
