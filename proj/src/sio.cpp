#include "heis/sio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

namespace {

// Sum a per-node vector-valued contribution deterministically.
template <class Fn>
SioValue sum_contributions(std::size_t n, int dim, Fn&& fill) {
    std::vector<double> c0(n, 0.0), c1, c2;
    if (dim > 1) c1.assign(n, 0.0);
    if (dim > 2) c2.assign(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        double out[3] = {0.0, 0.0, 0.0};
        fill(i, out);
        c0[i] = out[0];
        if (dim > 1) c1[i] = out[1];
        if (dim > 2) c2[i] = out[2];
    });
    SioValue v;
    v.dim = dim;
    v.v[0] = parallel_sum(n, [&](std::size_t i) { return c0[i]; });
    if (dim > 1) v.v[1] = parallel_sum(n, [&](std::size_t i) { return c1[i]; });
    if (dim > 2) v.v[2] = parallel_sum(n, [&](std::size_t i) { return c2[i]; });
    return v;
}

}  // namespace

SioValue truncated_sio(const CzKernel& K, const GraphMeasure& mu,
                       const std::vector<double>& f, const Point& p, double eps) {
    require_positive(eps, "eps");
    if (f.size() != mu.size()) throw std::invalid_argument("f must be node-indexed");
    const double eps4 = eps * eps * eps * eps;
    SioValue v = sum_contributions(mu.size(), K.dim, [&](std::size_t i, double* out) {
        if (f[i] == 0.0) return;
        const Point g = mul(inv(mu.points[i]), p);
        if (koranyi_norm4(g) <= eps4) return;
        const KernelValue k = K(g);
        const double c = f[i] * mu.weights[i];
        for (int d = 0; d < K.dim; ++d) out[d] = k[d] * c;
    });
    v.resolution_flagged = eps < 2.0 * mu.resolution;
    return v;
}

SioValue smooth_sio(const CzKernel& K, const GraphMeasure& mu, const std::vector<double>& f,
                    const Point& p, const BumpProfile& psi, int N) {
    if (f.size() != mu.size()) throw std::invalid_argument("f must be node-indexed");
    SioValue v = sum_contributions(mu.size(), K.dim, [&](std::size_t i, double* out) {
        if (f[i] == 0.0) return;
        const Point g = mul(inv(mu.points[i]), p);
        const double n = koranyi_norm(g);
        const double window = 1.0 - psi(std::ldexp(n, N + 1));
        if (window == 0.0) return;  // kills the near-diagonal exactly
        const KernelValue k = K(g);
        const double c = window * f[i] * mu.weights[i];
        for (int d = 0; d < K.dim; ++d) out[d] = k[d] * c;
    });
    v.resolution_flagged = std::ldexp(1.0, -N) < 2.0 * mu.resolution;
    return v;
}

double maximal_function(const GraphMeasure& mu, const std::vector<double>& f, const Point& p,
                        const std::vector<double>& radii) {
    if (f.size() != mu.size()) throw std::invalid_argument("f must be node-indexed");
    if (radii.empty()) throw std::invalid_argument("empty radius grid");
    double best = 0.0;
    for (double r : radii) {
        require_positive(r, "maximal-function radius");
        const auto ids = ball_nodes(mu, p, r);
        if (ids.empty()) continue;
        NeumaierAcc mass, integral;
        for (std::uint32_t i : ids) {
            mass.add(mu.weights[i]);
            integral.add(std::abs(f[i]) * mu.weights[i]);
        }
        if (mass.value() <= 0.0) continue;
        best = std::max(best, integral.value() / mass.value());
    }
    return best;
}

std::vector<double> geometric_radii(double lo, double hi, double factor) {
    require_positive(lo, "radius lo");
    if (hi <= lo) throw std::invalid_argument("empty radius range");
    if (factor <= 1.0) throw std::invalid_argument("factor must be > 1");
    std::vector<double> out;
    for (double r = lo; r <= hi * (1.0 + 1e-12); r *= factor) out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// T1 testing.

namespace {

// Kernel functors producing K(g) and K(g^{-1}) in one evaluation; n4 is the
// fourth power of the Koranyi norm of g.
struct RieszBoth {
    static constexpr int dim = 2;
    void operator()(double gx, double gy, double gt, double n4, double* fwd,
                    double* adj) const {
        const double r2 = gx * gx + gy * gy;
        const double n6 = n4 * std::sqrt(n4);
        const double a = 2.0 * gx * r2, b = 8.0 * gy * gt;
        const double c = 2.0 * gy * r2, d = 8.0 * gx * gt;
        fwd[0] = (-a + b) / n6;
        fwd[1] = (-c - d) / n6;
        adj[0] = (a + b) / n6;
        adj[1] = (c - d) / n6;
    }
};

struct QuasiBoth {
    static constexpr int dim = 3;
    void operator()(double gx, double gy, double gt, double n4, double* fwd,
                    double* adj) const {
        const double n5 = n4 * std::sqrt(std::sqrt(n4));
        fwd[0] = gx / n4;
        fwd[1] = gy / n4;
        fwd[2] = gt / n5;
        adj[0] = -fwd[0];
        adj[1] = -fwd[1];
        adj[2] = -fwd[2];
    }
};

struct RadialBoth {
    static constexpr int dim = 1;
    double exponent;
    void operator()(double, double, double, double n4, double* fwd, double* adj) const {
        fwd[0] = std::pow(n4, -exponent / 4.0);
        adj[0] = fwd[0];
    }
};

struct GenericBoth {
    static constexpr int dim = 3;  // upper bound; actual dim passed separately
    const CzKernel* K;
    void operator()(double gx, double gy, double gt, double /*n4*/, double* fwd,
                    double* adj) const {
        const Point g{gx, gy, gt};
        const KernelValue a = (*K)(g);
        const KernelValue b = (*K)(inv(g));
        for (int d = 0; d < a.dim; ++d) {
            fwd[d] = a[d];
            adj[d] = b[d];
        }
    }
};

struct CubeData {
    std::vector<double> xs, ys, ts, ws;
};

// For one cube and all eps simultaneously: per target node, bucket the pair
// contributions by the number of eps thresholds below the pair distance,
// then suffix-sum. norm2_out[dir][k] receives ||T chi_R||^2 over the cube.
template <class KF>
void t1_cube(const KF& kf, int dim, const CubeData& cd, const std::vector<double>& eps4,
             std::vector<std::array<double, 2>>& norm2_out) {
    const std::size_t c = cd.xs.size();
    const std::size_t m = eps4.size();
    std::vector<double> contrib(c * m * 2, 0.0);

    parallel_for(c, [&](std::size_t a) {
        // buckets[dir][d][cnt]
        std::vector<double> buckets(2 * static_cast<std::size_t>(dim) * (m + 1), 0.0);
        auto slot = [&](int dir, int d, std::size_t cnt) -> double& {
            return buckets[(static_cast<std::size_t>(dir) * static_cast<std::size_t>(dim) +
                            static_cast<std::size_t>(d)) *
                               (m + 1) +
                           cnt];
        };
        const double px = cd.xs[a], py = cd.ys[a], pt = cd.ts[a];
        double fwd[3] = {0.0, 0.0, 0.0}, adj[3] = {0.0, 0.0, 0.0};
        for (std::size_t b = 0; b < c; ++b) {
            const double gx = px - cd.xs[b];
            const double gy = py - cd.ys[b];
            const double gt = pt - cd.ts[b] - 0.5 * (cd.xs[b] * py - px * cd.ys[b]);
            const double r2 = gx * gx + gy * gy;
            const double n4 = r2 * r2 + 16.0 * gt * gt;
            if (n4 == 0.0) continue;
            std::size_t cnt = 0;
            while (cnt < m && eps4[cnt] < n4) ++cnt;
            if (cnt == 0) continue;  // excluded from every truncation
            kf(gx, gy, gt, n4, fwd, adj);
            const double w = cd.ws[b];
            for (int d = 0; d < dim; ++d) {
                slot(0, d, cnt) += fwd[d] * w;
                slot(1, d, cnt) += adj[d] * w;
            }
        }
        // suffix sums: value at eps_k = sum over cnt >= k+1
        for (int dir = 0; dir < 2; ++dir) {
            for (std::size_t k = m; k-- > 0;) {
                double n2 = 0.0;
                for (int d = 0; d < dim; ++d) {
                    slot(dir, d, k + 1) += k + 2 <= m ? slot(dir, d, k + 2) : 0.0;
                    n2 += slot(dir, d, k + 1) * slot(dir, d, k + 1);
                }
                contrib[(a * m + k) * 2 + dir] = n2 * cd.ws[a];
            }
        }
    });

    norm2_out.assign(m, {0.0, 0.0});
    for (std::size_t k = 0; k < m; ++k) {
        for (int dir = 0; dir < 2; ++dir) {
            norm2_out[k][static_cast<std::size_t>(dir)] = parallel_sum(
                c, [&](std::size_t a) { return contrib[(a * m + k) * 2 + dir]; });
        }
    }
}

}  // namespace

double T1Report::max_ratio(double eps, bool adjoint) const {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rows) {
        if (r.eps == eps && r.adjoint == adjoint) {
            if (std::isnan(best) || r.ratio > best) best = r.ratio;
        }
    }
    return best;
}

double T1Report::sweep_factor(bool adjoint) const {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double eps : eps_grid) {
        if (eps < 4.0 * resolution) continue;
        const double m = max_ratio(eps, adjoint);
        if (std::isnan(m)) continue;
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    if (!std::isfinite(lo) || lo <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return hi / lo;
}

T1Report t1_test(const CzKernel& K, const GraphMeasure& mu, const ChristCubeTree& tree,
                 const std::vector<double>& eps_grid) {
    if (eps_grid.empty()) throw std::invalid_argument("empty eps grid");
    std::vector<double> eps = eps_grid;
    std::sort(eps.begin(), eps.end());
    for (double e : eps) {
        if (e < 2.0 * mu.resolution) {
            throw std::invalid_argument("eps=" + fmt_g17(e) +
                                        " below the resolution guard 2*res=" +
                                        fmt_g17(2.0 * mu.resolution));
        }
    }
    std::vector<double> eps4(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) eps4[k] = eps[k] * eps[k] * eps[k] * eps[k];

    T1Report report;
    report.eps_grid = eps;
    report.resolution = mu.resolution;

    // If K is itself a builtin adjoint, the fused pass computes (K*, K);
    // swap the row labels accordingly.
    const bool swapped = K.adjoint_flag;

    for (std::size_t g = 0; g < tree.generation_count(); ++g) {
        for (const auto& q : tree.generations[g]) {
            CubeData cd;
            cd.xs.reserve(q.node_ids.size());
            cd.ys.reserve(q.node_ids.size());
            cd.ts.reserve(q.node_ids.size());
            cd.ws.reserve(q.node_ids.size());
            for (std::uint32_t i : q.node_ids) {
                cd.xs.push_back(mu.points[i].x);
                cd.ys.push_back(mu.points[i].y);
                cd.ts.push_back(mu.points[i].t);
                cd.ws.push_back(mu.weights[i]);
            }

            std::vector<std::array<double, 2>> norm2;
            switch (K.tag) {
                case KernelTag::Riesz:
                    t1_cube(RieszBoth{}, 2, cd, eps4, norm2);
                    break;
                case KernelTag::QuasiRiesz:
                    t1_cube(QuasiBoth{}, 3, cd, eps4, norm2);
                    break;
                case KernelTag::RadialPower:
                    t1_cube(RadialBoth{K.radial_exponent}, 1, cd, eps4, norm2);
                    break;
                case KernelTag::Zero: {
                    norm2.assign(eps.size(), {0.0, 0.0});
                    break;
                }
                case KernelTag::Custom:
                    t1_cube(GenericBoth{&K}, K.dim, cd, eps4, norm2);
                    break;
            }

            for (std::size_t k = 0; k < eps.size(); ++k) {
                for (int dir = 0; dir < 2; ++dir) {
                    T1Row row;
                    row.gen = static_cast<int>(g);
                    row.j = q.j;
                    row.cube = q.index;
                    row.eps = eps[k];
                    row.adjoint = swapped ? dir == 0 : dir == 1;
                    row.norm2 = norm2[k][static_cast<std::size_t>(dir)];
                    row.mass = q.mass;
                    row.ratio = row.norm2 / q.mass;
                    row.eps_resolved = eps[k] >= 4.0 * mu.resolution;
                    report.rows.push_back(row);
                }
            }
        }
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const T1Row& a, const T1Row& b) {
        if (a.gen != b.gen) return a.gen < b.gen;
        if (a.cube != b.cube) return a.cube < b.cube;
        if (a.eps != b.eps) return a.eps < b.eps;
        return a.adjoint < b.adjoint;
    });
    return report;
}

// ---------------------------------------------------------------------------
// AB integral.

AbResult ab_integral(const CzKernel& scalar_kernel, const VerticalSubgroup& W,
                     const BumpProfile& psi, double r, double R, std::size_t quad_n) {
    if (scalar_kernel.dim != 1) {
        throw std::invalid_argument("ab_integral takes a scalar kernel component");
    }
    require_positive(r, "inner radius r");
    if (!(r < R)) throw std::invalid_argument("need 0 < r < R");
    if (quad_n < 4) throw std::invalid_argument("quad_n too small");
    const std::size_t m = quad_n / 2;

    // support of psi^R lies in ||w|| <= 2R: |w1| <= 2R, |w2| <= R^2;
    // the grid covers the conservative box |w1| <= 2R, |w2| <= 4R^2.
    const double d1 = 2.0 * R / static_cast<double>(m);
    const double d2 = 4.0 * R * R / static_cast<double>(m);
    const double cell = d1 * d2;

    auto term = [&](double w1, double w2) {
        const double nw = wnorm({w1, w2});
        const double window = psi(nw / R) - psi(nw / r);
        if (window == 0.0) return 0.0;
        return window * scalar_kernel(embed_w(W, {w1, w2}))[0] * cell;
    };

    // quadruple grouping over (+-u, +-v): horizontally antisymmetric kernels
    // cancel within (u,v)+(-u,v), antisymmetric ones within (u,v)+(-u,-v),
    // both exactly in floating point.
    NeumaierAcc integral, abssum;
    for (std::size_t i = 0; i < m; ++i) {
        const double u = (static_cast<double>(i) + 0.5) * d1;
        for (std::size_t j = 0; j < m; ++j) {
            const double v = (static_cast<double>(j) + 0.5) * d2;
            const double a = term(u, v);
            const double b = term(-u, v);
            const double c = term(u, -v);
            const double d = term(-u, -v);
            integral.add((a + b) + (c + d));
            abssum.add(std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d));
        }
    }
    return {integral.value(), abssum.value()};
}

// ---------------------------------------------------------------------------
// Vertical-plane operator norm.

UbvpResult ubvp_plane_norm(const CzKernel& K, const VerticalSubgroup& W, const PlaneGrid& grid,
                           double eps, int max_iters, double tol) {
    require_positive(eps, "eps");
    if (grid.n1 < 2 || grid.n2 < 2) throw std::invalid_argument("plane grid too small");
    if (grid.w1_hi <= grid.w1_lo || grid.w2_hi <= grid.w2_lo) {
        throw std::invalid_argument("empty plane grid rectangle");
    }
    const std::size_t n1 = grid.n1, n2 = grid.n2, n = n1 * n2;
    const double d1 = (grid.w1_hi - grid.w1_lo) / static_cast<double>(n1);
    const double d2 = (grid.w2_hi - grid.w2_lo) / static_cast<double>(n2);
    const double dA = d1 * d2;
    const int dim = K.dim;

    // Difference table: the group law restricted to W is plane addition, so
    // the operator is a convolution; K(w_i - w_j) with the eps truncation.
    const std::size_t t1 = 2 * n1 - 1, t2 = 2 * n2 - 1;
    std::vector<double> table(static_cast<std::size_t>(dim) * t1 * t2, 0.0);
    const double eps4 = eps * eps * eps * eps;
    parallel_for(t1 * t2, [&](std::size_t idx) {
        const std::ptrdiff_t di = static_cast<std::ptrdiff_t>(idx / t2) -
                                  static_cast<std::ptrdiff_t>(n1 - 1);
        const std::ptrdiff_t dj = static_cast<std::ptrdiff_t>(idx % t2) -
                                  static_cast<std::ptrdiff_t>(n2 - 1);
        const WPoint dw{static_cast<double>(di) * d1, static_cast<double>(dj) * d2};
        const Point g = embed_w(W, dw);
        const double g4 = koranyi_norm4(g);
        if (g4 <= eps4) return;
        const KernelValue k = K(g);
        for (int d = 0; d < dim; ++d) {
            table[static_cast<std::size_t>(d) * t1 * t2 + idx] = k[d];
        }
    });

    auto tab = [&](int d, std::ptrdiff_t di, std::ptrdiff_t dj) {
        const std::size_t idx =
            static_cast<std::size_t>(di + static_cast<std::ptrdiff_t>(n1 - 1)) * t2 +
            static_cast<std::size_t>(dj + static_cast<std::ptrdiff_t>(n2 - 1));
        return table[static_cast<std::size_t>(d) * t1 * t2 + idx];
    };

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> tv(static_cast<std::size_t>(dim) * n, 0.0);
    std::vector<double> back(n, 0.0);

    auto apply_T = [&]() {
        parallel_for(n, [&](std::size_t i) {
            const std::ptrdiff_t i1 = static_cast<std::ptrdiff_t>(i / n2);
            const std::ptrdiff_t i2 = static_cast<std::ptrdiff_t>(i % n2);
            for (int d = 0; d < dim; ++d) {
                NeumaierAcc acc;
                for (std::size_t jj = 0; jj < n; ++jj) {
                    const std::ptrdiff_t j1 = static_cast<std::ptrdiff_t>(jj / n2);
                    const std::ptrdiff_t j2 = static_cast<std::ptrdiff_t>(jj % n2);
                    acc.add(tab(d, i1 - j1, i2 - j2) * v[jj]);
                }
                tv[static_cast<std::size_t>(d) * n + i] = acc.value() * dA;
            }
        });
    };
    auto apply_Tstar = [&]() {
        parallel_for(n, [&](std::size_t j) {
            const std::ptrdiff_t j1 = static_cast<std::ptrdiff_t>(j / n2);
            const std::ptrdiff_t j2 = static_cast<std::ptrdiff_t>(j % n2);
            NeumaierAcc acc;
            for (int d = 0; d < dim; ++d) {
                for (std::size_t ii = 0; ii < n; ++ii) {
                    const std::ptrdiff_t i1 = static_cast<std::ptrdiff_t>(ii / n2);
                    const std::ptrdiff_t i2 = static_cast<std::ptrdiff_t>(ii % n2);
                    acc.add(tab(d, i1 - j1, i2 - j2) * tv[static_cast<std::size_t>(d) * n + ii]);
                }
            }
            back[j] = acc.value() * dA;
        });
    };

    UbvpResult res;
    double prev = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        apply_T();
        double tnorm2 = 0.0;
        for (std::size_t i = 0; i < tv.size(); ++i) tnorm2 += tv[i] * tv[i];
        tnorm2 *= dA;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) vnorm2 += v[i] * v[i];
        vnorm2 *= dA;
        res.norm_estimate = std::sqrt(tnorm2 / vnorm2);
        res.iterations = it + 1;
        if (it > 0 && std::abs(res.norm_estimate - prev) <=
                          tol * std::max(1e-300, std::abs(res.norm_estimate))) {
            res.converged = true;
            break;
        }
        prev = res.norm_estimate;
        apply_Tstar();
        double bnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) bnorm += back[i] * back[i];
        bnorm = std::sqrt(bnorm);
        if (bnorm == 0.0) {
            res.converged = true;
            res.norm_estimate = 0.0;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = back[i] / bnorm;
    }
    return res;
}

}  // namespace heis
