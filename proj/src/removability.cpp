#include "heis/removability.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace heis {

double fundamental_solution(const Point& p) {
    if (p.x == 0.0 && p.y == 0.0 && p.t == 0.0) {
        throw std::domain_error("fundamental solution evaluated at the pole");
    }
    if (!p.finite()) throw std::invalid_argument("non-finite point");
    const double n = koranyi_norm(p);
    return 1.0 / (n * n);
}

Point HorizontalPath::endpoint_by_composition() const {
    Point p = p_start;
    for (const auto& seg : segments) {
        p = mul(p, {seg.length * std::cos(seg.angle), seg.length * std::sin(seg.angle), 0.0});
    }
    return p;
}

HorizontalPath horizontal_path(const Point& z1, const Point& z2) {
    if (!z1.finite() || !z2.finite()) throw std::invalid_argument("non-finite endpoint");
    HorizontalPath path;
    path.p_start = z1;
    path.p_end = z2;

    const Point g = mul(inv(z1), z2);  // work in translated coordinates

    Point cursor = z1;
    // segment 1: kill the planar offset
    const double planar = std::hypot(g.x, g.y);
    if (planar > 0.0) {
        PathSegment seg;
        seg.start = cursor;
        seg.angle = std::atan2(g.y, g.x);
        seg.length = planar;
        cursor = seg.end();
        path.segments.push_back(seg);
    }

    // remaining offset is purely vertical: t' = g.t
    const double tp = g.t;
    if (tp != 0.0) {
        const double s = std::sqrt(std::abs(tp));
        // the loop (+x, +y, -x, -y) accumulates +s^2 in t; reverse the
        // orientation for negative offsets
        const double pi = 3.14159265358979323846;
        const double angles_pos[4] = {0.0, 0.5 * pi, pi, 1.5 * pi};
        const double angles_neg[4] = {0.5 * pi, 0.0, 1.5 * pi, pi};
        const double* angles = tp > 0.0 ? angles_pos : angles_neg;
        for (int k = 0; k < 4; ++k) {
            PathSegment seg;
            seg.start = cursor;
            seg.angle = angles[k];
            seg.length = s;
            cursor = seg.end();
            path.segments.push_back(seg);
        }
    }
    return path;
}

double potential(const GraphMeasure& mu, const std::vector<double>& h, const Point& p) {
    if (h.size() != mu.size()) throw std::invalid_argument("density must be node-indexed");
    if (!p.finite()) throw std::invalid_argument("non-finite evaluation point");
    const std::size_t n = mu.size();
    std::vector<double> vals(n, 0.0);
    std::vector<int> clash(n, 0);
    parallel_for(n, [&](std::size_t i) {
        const double n4 = koranyi_norm4(mul(inv(mu.points[i]), p));
        if (n4 == 0.0) {
            clash[i] = 1;
            return;
        }
        if (h[i] == 0.0) return;
        vals[i] = h[i] * mu.weights[i] / std::sqrt(n4);
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (clash[i]) {
            throw std::invalid_argument("potential evaluated on node " + std::to_string(i) +
                                        " at (w1=" + fmt_g17(mu.nodes[i].w1) +
                                        ", w2=" + fmt_g17(mu.nodes[i].w2) + ")");
        }
    }
    return parallel_sum(n, [&](std::size_t i) { return vals[i]; });
}

std::vector<HarmonicityRow> check_harmonic_off_support(const ScalarField& f,
                                                       const std::vector<Point>& points,
                                                       double h_fd,
                                                       const std::vector<Point>& support) {
    require_positive(h_fd, "fd step");
    std::vector<HarmonicityRow> rows;
    rows.reserve(points.size());
    for (const Point& p : points) {
        HarmonicityRow row;
        row.p = p;
        double d_min = std::numeric_limits<double>::infinity();
        for (const Point& q : support) d_min = std::min(d_min, dist(p, q));
        if (d_min < 10.0 * h_fd) {
            row.accepted = false;
            rows.push_back(row);
            continue;
        }
        row.accepted = true;
        row.residual = std::abs(
            horizontal_derivatives_fd(f, p, kDefaultFdStepFirst, h_fd).sublaplacian);
        rows.push_back(row);
    }
    return rows;
}

LipschitzStat lipschitz_stat(const ScalarField& f,
                             const std::vector<std::pair<Point, Point>>& pairs) {
    LipschitzStat stat;
    for (const auto& [p, q] : pairs) {
        const double d = dist(p, q);
        if (d == 0.0) {
            ++stat.skipped;
            continue;
        }
        stat.sup_quotient = std::max(stat.sup_quotient, std::abs(f(p) - f(q)) / d);
        ++stat.pairs;
    }
    return stat;
}

double nonharmonicity_pairing(const GraphMeasure& mu, const std::vector<double>& h,
                              const PlateauBump& g, const QuadBox& box, std::size_t n,
                              double fd_step) {
    if (h.size() != mu.size()) throw std::invalid_argument("density must be node-indexed");
    if (n < 4) throw std::invalid_argument("quadrature n too small");
    require_positive(fd_step, "fd step");

    // plateau condition: g identically 1 near the active nodes
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (h[i] == 0.0) continue;
        const double margin = dist(mu.points[i], g.center) +
                              4.0 * fd_step;  // FD stencil stays on the plateau
        if (margin > g.plateau_radius) {
            throw std::invalid_argument(
                "plateau condition violated: active node at distance " +
                fmt_g17(dist(mu.points[i], g.center)) + " with plateau radius " +
                fmt_g17(g.plateau_radius));
        }
    }
    // support condition: spt g = B(center, 2 plateau_radius) must sit inside
    // the box with room for the FD stencil
    {
        const double reach = 2.0 * g.plateau_radius;
        const double tband =
            0.25 * reach * reach + 0.5 * reach * (std::abs(g.center.x) + std::abs(g.center.y));
        const double margin = 4.0 * fd_step;
        const bool inside = g.center.x - reach - margin >= box.x_lo &&
                            g.center.x + reach + margin <= box.x_hi &&
                            g.center.y - reach - margin >= box.y_lo &&
                            g.center.y + reach + margin <= box.y_hi &&
                            g.center.t - tband - margin >= box.t_lo &&
                            g.center.t + tband + margin <= box.t_hi;
        if (!inside) {
            throw std::invalid_argument("bump support is not contained in the quadrature box");
        }
    }

    const double dx = (box.x_hi - box.x_lo) / static_cast<double>(n);
    const double dy = (box.y_hi - box.y_lo) / static_cast<double>(n);
    const double dt = (box.t_hi - box.t_lo) / static_cast<double>(n);
    const double cell = dx * dy * dt;

    const std::size_t total = n * n * n;
    std::vector<double> vals(total, 0.0);
    parallel_for(total, [&](std::size_t idx) {
        const std::size_t ix = idx / (n * n);
        const std::size_t iy = (idx / n) % n;
        const std::size_t it = idx % n;
        const Point p{box.x_lo + (static_cast<double>(ix) + 0.5) * dx,
                      box.y_lo + (static_cast<double>(iy) + 0.5) * dy,
                      box.t_lo + (static_cast<double>(it) + 0.5) * dt};
        // Delta_H g by central differences along the horizontal frame
        const double g0 = g(p);
        const double gxp = g(mul(p, {fd_step, 0.0, 0.0}));
        const double gxm = g(mul(p, {-fd_step, 0.0, 0.0}));
        const double gyp = g(mul(p, {0.0, fd_step, 0.0}));
        const double gym = g(mul(p, {0.0, -fd_step, 0.0}));
        const double lap = (gxp - 2.0 * g0 + gxm + gyp - 2.0 * g0 + gym) / (fd_step * fd_step);
        if (lap == 0.0) return;  // plateau or far field
        vals[idx] = potential(mu, h, p) * lap * cell;
    });
    return parallel_sum(total, [&](std::size_t i) { return vals[i]; });
}

void write_potential_lattice(const GraphMeasure& mu, const std::vector<double>& h,
                             const QuadBox& box, std::size_t nx, std::size_t ny,
                             std::size_t nt, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os.write("HPT1", 4);
    auto put_u64 = [&os](std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); };
    auto put_f64 = [&os](double v) { os.write(reinterpret_cast<const char*>(&v), 8); };
    put_u64(nx);
    put_u64(ny);
    put_u64(nt);
    put_f64(box.x_lo);
    put_f64(box.x_hi);
    put_f64(box.y_lo);
    put_f64(box.y_hi);
    put_f64(box.t_lo);
    put_f64(box.t_hi);
    const double dx = (box.x_hi - box.x_lo) / static_cast<double>(nx);
    const double dy = (box.y_hi - box.y_lo) / static_cast<double>(ny);
    const double dt = (box.t_hi - box.t_lo) / static_cast<double>(nt);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t it = 0; it < nt; ++it) {
                const Point p{box.x_lo + (static_cast<double>(ix) + 0.5) * dx,
                              box.y_lo + (static_cast<double>(iy) + 0.5) * dy,
                              box.t_lo + (static_cast<double>(it) + 0.5) * dt};
                put_f64(potential(mu, h, p));
            }
        }
    }
    if (!os) throw std::runtime_error("write failure on " + path);
}

}  // namespace heis
