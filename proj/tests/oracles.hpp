#pragma once

// Test-side oracles, independent of the library implementation paths they
// check: forward-mode AD for horizontal derivatives, naive reference sums,
// and a from-scratch verification of the cube axioms.

#include <array>
#include <cmath>
#include <vector>

#include "heis/kernels.hpp"
#include "heis/quadrature.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// Forward AD with three partials (x, y, t).

struct Dual {
    double v = 0.0;
    double dx = 0.0, dy = 0.0, dt = 0.0;
};

inline Dual operator+(const Dual& a, const Dual& b) {
    return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dt + b.dt};
}
inline Dual operator-(const Dual& a, const Dual& b) {
    return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dt - b.dt};
}
inline Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy,
            a.dt * b.v + a.v * b.dt};
}
inline Dual operator*(double c, const Dual& a) { return {c * a.v, c * a.dx, c * a.dy, c * a.dt}; }
inline Dual pow_ad(const Dual& a, double e) {
    const double f = std::pow(a.v, e);
    const double g = e * std::pow(a.v, e - 1.0);
    return {f, g * a.dx, g * a.dy, g * a.dt};
}

// Euclidean gradient of u(x,y,t) = ||(x,y,t)||^{-2} by AD, then the
// horizontal combination Xu = u_x - (y/2) u_t, Yu = u_y + (x/2) u_t.
inline std::array<double, 2> ad_horizontal_gradient_norm_inv2(double x, double y, double t) {
    const Dual X{x, 1.0, 0.0, 0.0}, Y{y, 0.0, 1.0, 0.0}, T{t, 0.0, 0.0, 1.0};
    const Dual r2 = X * X + Y * Y;
    const Dual q = r2 * r2 + 16.0 * (T * T);  // ||.||^4
    const Dual u = pow_ad(q, -0.5);           // ||.||^{-2}
    return {u.dx - 0.5 * y * u.dt, u.dy + 0.5 * x * u.dt};
}

// ---------------------------------------------------------------------------
// Naive reference for the truncated SIO: a single straight loop, no blocks.

inline std::array<double, 3> naive_truncated_sio(const heis::CzKernel& K,
                                                 const heis::GraphMeasure& mu,
                                                 const std::vector<double>& f,
                                                 const heis::Point& p, double eps) {
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (f[i] == 0.0) continue;
        const heis::Point g = heis::mul(heis::inv(mu.points[i]), p);
        if (heis::koranyi_norm(g) <= eps) continue;
        const heis::KernelValue k = K(g);
        for (int d = 0; d < K.dim; ++d) {
            acc[static_cast<std::size_t>(d)] += k[d] * f[i] * mu.weights[i];
        }
    }
    return acc;
}

// Naive ball mass: same Neumaier block structure as the library but without
// the box prefilter; must agree bit-for-bit.
inline double naive_ball_mass(const heis::GraphMeasure& mu, const heis::Point& c, double r) {
    const double r4 = r * r * r * r;
    const std::size_t n = mu.size();
    const std::size_t nblocks = (n + heis::kSumBlock - 1) / heis::kSumBlock;
    heis::NeumaierAcc total;
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::size_t lo = b * heis::kSumBlock;
        const std::size_t hi = std::min(n, lo + heis::kSumBlock);
        heis::NeumaierAcc acc;
        for (std::size_t i = lo; i < hi; ++i) {
            if (heis::koranyi_norm4(heis::mul(heis::inv(c), mu.points[i])) <= r4) {
                acc.add(mu.weights[i]);
            }
        }
        total.add(acc.value());
    }
    return total.value();
}

// ---------------------------------------------------------------------------
// From-scratch verification of the cube axioms on the assembled node sets.

struct CubeAxioms {
    bool partition = true;
    bool nesting = true;
    double diam_const = 0.0;
    double inner_const = std::numeric_limits<double>::infinity();
};

inline CubeAxioms brute_force_axioms(const heis::GraphMeasure& mu,
                                     const heis::ChristCubeTree& tree) {
    CubeAxioms ax;
    const std::size_t n = mu.size();
    for (std::size_t g = 0; g < tree.generation_count(); ++g) {
        std::vector<int> owner(n, -1);
        for (const auto& q : tree.generations[g]) {
            for (auto i : q.node_ids) {
                if (owner[i] != -1) ax.partition = false;  // overlap
                owner[i] = static_cast<int>(q.index);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (owner[i] == -1) ax.partition = false;  // uncovered
        }
        if (g > 0) {
            std::vector<int> parent_owner(n, -1);
            for (const auto& q : tree.generations[g - 1]) {
                for (auto i : q.node_ids) parent_owner[i] = static_cast<int>(q.index);
            }
            for (const auto& q : tree.generations[g]) {
                for (auto i : q.node_ids) {
                    if (parent_owner[i] != static_cast<int>(q.parent)) ax.nesting = false;
                }
            }
        }
        for (const auto& q : tree.generations[g]) {
            const double ell = std::ldexp(1.0, q.j);
            double diam = 0.0;
            for (std::size_t a = 0; a < q.node_ids.size(); ++a) {
                for (std::size_t b = a + 1; b < q.node_ids.size(); ++b) {
                    diam = std::max(diam,
                                    heis::dist(mu.points[q.node_ids[a]], mu.points[q.node_ids[b]]));
                }
            }
            ax.diam_const = std::max(ax.diam_const, diam / ell);
            double nearest_out = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                bool inside = false;
                for (auto id : q.node_ids) {
                    if (id == i) {
                        inside = true;
                        break;
                    }
                }
                if (!inside) {
                    nearest_out = std::min(
                        nearest_out, heis::dist(mu.points[i], mu.points[q.center_node]));
                }
            }
            if (std::isfinite(nearest_out)) {
                ax.inner_const = std::min(ax.inner_const, nearest_out / ell);
            }
        }
    }
    return ax;
}

}  // namespace oracles
