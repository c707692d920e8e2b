#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heis/sio.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {

GraphMeasure plane_measure(std::size_t ny, std::size_t nt) {
    return build_graph_measure(builtin("zero"), -0.5, 0.5, -0.0625, 0.0625, ny, nt);
}

GraphMeasure bump_measure(std::size_t ny, std::size_t nt) {
    return build_graph_measure(builtin("bump", {{"radius", 0.24}, {"height", 0.02}}),
                               -0.5, 0.5, -0.0625, 0.0625, ny, nt);
}

}  // namespace

TEST_CASE("truncated sio basics") {
    const GraphMeasure mu = plane_measure(24, 288);
    const CzKernel riesz = make_riesz();

    SUBCASE("zero density") {
        std::vector<double> f(mu.size(), 0.0);
        CHECK(truncated_sio(riesz, mu, f, {0.2, 0.1, 0.0}, 0.1).norm() == 0.0);
    }
    SUBCASE("empty truncation domain") {
        std::vector<double> f(mu.size(), 1.0);
        CHECK(truncated_sio(riesz, mu, f, mu.points[0], 8.0).norm() == 0.0);
    }
    SUBCASE("matches the naive reference sum") {
        std::vector<double> f(mu.size(), 1.0);
        const Point center{0.0, 0.0, 0.0};
        const SioValue got = truncated_sio(riesz, mu, f, center, 0.25);
        const auto want = oracles::naive_truncated_sio(riesz, mu, f, center, 0.25);
        const double scale = std::max({1.0, std::abs(want[0]), std::abs(want[1])});
        CHECK(std::abs(got[0] - want[0]) / scale <= 1e-12);
        CHECK(std::abs(got[1] - want[1]) / scale <= 1e-12);
        CHECK_FALSE(got.resolution_flagged);
    }
    SUBCASE("resolution flag") {
        std::vector<double> f(mu.size(), 1.0);
        const SioValue v = truncated_sio(riesz, mu, f, mu.points[7], 0.5 * mu.resolution);
        CHECK(v.resolution_flagged);
    }
}

TEST_CASE("smooth vs truncated comparison") {
    const GraphMeasure mu = plane_measure(32, 512);
    const CzKernel riesz = make_riesz();
    const BumpProfile psi;

    SUBCASE("zero density") {
        std::vector<double> f(mu.size(), 0.0);
        CHECK(smooth_sio(riesz, mu, f, mu.points[3], psi, 3).norm() == 0.0);
    }
    SUBCASE("telescoping identity: per-piece sum equals the closed form") {
        std::vector<double> f(mu.size(), 1.0);
        const Point p = mu.points[mu.size() / 2 + 7];
        const int N = 4;
        const SioValue closed = smooth_sio(riesz, mu, f, p, psi, N);
        double acc[2] = {0.0, 0.0};
        for (int j = -4; j <= N; ++j) {  // spt K_(j) exceeds diam below j = -4
            const CzKernel piece = lp_piece(riesz, j, psi);
            const SioValue tj = truncated_sio(piece, mu, f, p, 1e-12);
            acc[0] += tj[0];
            acc[1] += tj[1];
        }
        CHECK(std::abs(acc[0] - closed[0]) <= 1e-10);
        CHECK(std::abs(acc[1] - closed[1]) <= 1e-10);
    }
    SUBCASE("difference bounded by the maximal function, stable under refinement") {
        auto stat = [&](const GraphMeasure& m) {
            const ChristCubeTree tree = build_christ_cubes(m, -3, -2);
            // f = indicator of a mid-tree cube
            const auto& q = tree.generations[1][tree.generations[1].size() / 2];
            std::vector<double> f(m.size(), 0.0);
            for (auto i : q.node_ids) f[i] = 1.0;
            const int N = 3;
            const double eps = std::ldexp(1.0, -N);
            const auto radii = geometric_radii(2.0 * m.resolution, m.diameter, std::sqrt(2.0));
            double sup = 0.0;
            Rng rng(71);
            for (int k = 0; k < 60; ++k) {
                // half the samples inside the cube, where the truncation
                // boundary actually matters, half anywhere
                const Point p = k % 2 == 0 ? m.points[q.node_ids[rng.index(q.node_ids.size())]]
                                           : m.points[rng.index(m.size())];
                SioValue s = smooth_sio(make_riesz(), m, f, p, BumpProfile(), N);
                SioValue t = truncated_sio(make_riesz(), m, f, p, eps);
                const double d = std::hypot(s[0] - t[0], s[1] - t[1]);
                const double M = maximal_function(m, f, p, radii);
                if (M > 0.0) sup = std::max(sup, d / M);
            }
            return sup;
        };
        const double c1 = stat(plane_measure(32, 512));
        const double c2 = stat(plane_measure(45, 724));
        CHECK(std::isfinite(c1));
        CHECK(c1 > 0.0);
        CHECK(c2 <= 2.0 * c1);
        CHECK(c1 <= 2.0 * c2);
    }
}

TEST_CASE("lp piece operators stay uniformly bounded") {
    const GraphMeasure mu = plane_measure(32, 512);
    const CzKernel riesz = make_riesz();
    const BumpProfile psi;
    std::vector<double> ones(mu.size(), 1.0);
    Rng rng(72);
    double worst = 0.0;
    for (int j = -3; j <= 5; ++j) {
        const CzKernel piece = lp_piece(riesz, j, psi);
        for (int k = 0; k < 10; ++k) {
            const Point p = mu.points[rng.index(mu.size())];
            worst = std::max(worst, truncated_sio(piece, mu, ones, p, 1e-12).norm());
        }
    }
    CHECK(std::isfinite(worst));
    CHECK(worst < 50.0);  // regression bound; the sup is O(1) by the support annulus
}

TEST_CASE("maximal function") {
    const GraphMeasure mu = plane_measure(24, 288);
    const auto radii = geometric_radii(2.0 * mu.resolution, mu.diameter, std::sqrt(2.0));
    SUBCASE("constants") {
        std::vector<double> f(mu.size(), -2.5);
        CHECK(maximal_function(mu, f, mu.points[5], radii) ==
              doctest::Approx(2.5).epsilon(1e-12));
    }
    SUBCASE("indicator attains 1 at its center") {
        const Point p = mu.points[mu.size() / 2];
        const double r0 = 0.1;
        std::vector<double> f(mu.size(), 0.0);
        for (auto i : ball_nodes(mu, p, r0)) f[i] = 1.0;
        const double m = maximal_function(mu, f, p, radii);
        CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("dominates ball averages") {
        Rng rng(73);
        std::vector<double> f(mu.size());
        for (auto& v : f) v = rng.uniform(0.0, 1.0);
        const Point p = mu.points[17];
        const double m = maximal_function(mu, f, p, radii);
        for (double r : radii) {
            const auto ids = ball_nodes(mu, p, r);
            if (ids.empty()) continue;
            double mass = 0.0, integral = 0.0;
            for (auto i : ids) {
                mass += mu.weights[i];
                integral += f[i] * mu.weights[i];
            }
            CHECK(m >= integral / mass - 1e-12);
        }
    }
}

TEST_CASE("t1 testing harness") {
    SUBCASE("zero kernel gives zero ratios") {
        const GraphMeasure mu = plane_measure(32, 512);
        const ChristCubeTree tree = build_christ_cubes(mu, -3, -2);
        const T1Report rep = t1_test(make_zero_kernel(), mu, tree, {0.25, 0.125});
        for (const auto& row : rep.rows) CHECK(row.ratio == 0.0);
    }
    SUBCASE("riesz on the plane: fused path matches the direct computation") {
        const GraphMeasure mu = plane_measure(16, 192);
        const ChristCubeTree tree = build_christ_cubes(mu, -2, -2);
        const CzKernel riesz = make_riesz();
        const double eps = 0.25;
        const T1Report rep = t1_test(riesz, mu, tree, {eps});
        for (const auto& q : tree.generations[0]) {
            std::vector<double> chi(mu.size(), 0.0);
            for (auto i : q.node_ids) chi[i] = 1.0;
            NeumaierAcc direct, direct_adj;
            const CzKernel adj = adjoint_kernel(riesz);
            for (auto i : q.node_ids) {
                const double n = truncated_sio(riesz, mu, chi, mu.points[i], eps).norm();
                direct.add(n * n * mu.weights[i]);
                const double na = truncated_sio(adj, mu, chi, mu.points[i], eps).norm();
                direct_adj.add(na * na * mu.weights[i]);
            }
            for (const auto& row : rep.rows) {
                if (row.cube != q.index || row.eps != eps) continue;
                const double want = row.adjoint ? direct_adj.value() : direct.value();
                CHECK(row.norm2 ==
                      doctest::Approx(want).epsilon(1e-10).scale(std::abs(want) + 1e-12));
            }
        }
    }
    SUBCASE("resolution guard is enforced") {
        const GraphMeasure mu = plane_measure(16, 192);
        const ChristCubeTree tree = build_christ_cubes(mu, -2, -2);
        CHECK_THROWS_AS(t1_test(make_riesz(), mu, tree, {mu.resolution}),
                        std::invalid_argument);
    }
    SUBCASE("plane + riesz sweep is stable in eps and under refinement") {
        auto max_per_eps = [](const GraphMeasure& m, const std::vector<double>& eps) {
            const ChristCubeTree tree = build_christ_cubes(m, -3, -2);
            return t1_test(make_riesz(), m, tree, eps);
        };
        const std::vector<double> eps{0.25, 0.125};
        const GraphMeasure m1 = plane_measure(32, 512);
        const GraphMeasure m2 = plane_measure(45, 724);
        const T1Report r1 = max_per_eps(m1, eps);
        const T1Report r2 = max_per_eps(m2, eps);
        for (bool adj : {false, true}) {
            CHECK(r1.sweep_factor(adj) < 4.0);
            for (double e : eps) {
                const double a = r1.max_ratio(e, adj);
                const double b = r2.max_ratio(e, adj);
                CHECK(b < 2.0 * a);
                CHECK(a < 2.0 * b);
            }
        }
    }
}

TEST_CASE("ab cancellation integrals") {
    const BumpProfile psi;
    const CzKernel riesz = make_riesz();
    const CzKernel quasi = make_quasi_riesz();

    SUBCASE("exact zero for both builtin kernels, all components") {
        for (double theta : {0.0, 0.5235987755982988, 0.7853981633974483, 1.5707963267948966}) {
            const VerticalSubgroup W(theta);
            for (auto [r, R] : {std::pair<double, double>{0.5, 2.0}, {0.1, 10.0}}) {
                for (int comp = 0; comp < 2; ++comp) {
                    const AbResult res = ab_integral(component(riesz, comp), W, psi, r, R, 256);
                    CHECK(std::abs(res.integral) <= 1e-12 * std::max(1e-300, res.abs_sum));
                }
                for (int comp = 0; comp < 3; ++comp) {
                    const AbResult res = ab_integral(component(quasi, comp), W, psi, r, R, 256);
                    CHECK(std::abs(res.integral) <= 1e-12 * std::max(1e-300, res.abs_sum));
                }
            }
        }
    }
    SUBCASE("radial control does not cancel and grows with log(R/r)") {
        const VerticalSubgroup W(0.0);
        const AbResult narrow = ab_integral(make_radial_power(3.0), W, psi, 0.5, 2.0, 256);
        const AbResult wide = ab_integral(make_radial_power(3.0), W, psi, 0.1, 10.0, 256);
        CHECK(narrow.integral > 1e-2);
        CHECK(wide.integral > narrow.integral);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(ab_integral(make_radial_power(3.0), VerticalSubgroup(0.0), psi,
                                    2.0, 0.5, 64),
                        std::invalid_argument);
        CHECK_THROWS_AS(ab_integral(make_riesz(), VerticalSubgroup(0.0), psi, 0.5, 2.0, 64),
                        std::invalid_argument);  // vector kernel rejected
    }
}

TEST_CASE("vertical plane operator norms") {
    // metrically balanced plane grids: dw2 ~ (dw1/2)^2
    const PlaneGrid small{-0.75, 0.75, -0.07, 0.07, 16, 64};
    const PlaneGrid fine{-0.75, 0.75, -0.0625, 0.0625, 24, 128};
    SUBCASE("zero kernel") {
        const UbvpResult res = ubvp_plane_norm(make_zero_kernel(), VerticalSubgroup(0.0), small,
                                               0.25);
        CHECK(res.norm_estimate == 0.0);
    }
    SUBCASE("riesz estimates agree across plane angles") {
        double est[3];
        int k = 0;
        for (double theta : {0.0, 0.7853981633974483, 1.5707963267948966}) {
            est[k++] = ubvp_plane_norm(make_riesz(), VerticalSubgroup(theta), small, 0.25)
                           .norm_estimate;
        }
        CHECK(est[0] > 0.0);
        CHECK(std::abs(est[1] - est[0]) <= 0.1 * est[0]);
        CHECK(std::abs(est[2] - est[0]) <= 0.1 * est[0]);
    }
    SUBCASE("stable under halving eps") {
        const double a =
            ubvp_plane_norm(make_riesz(), VerticalSubgroup(0.0), fine, 0.25).norm_estimate;
        const double b =
            ubvp_plane_norm(make_riesz(), VerticalSubgroup(0.0), fine, 0.125).norm_estimate;
        CHECK(b <= 2.0 * a);
        CHECK(a <= 2.0 * b);
    }
}

TEST_CASE("discrete adjoint identity on a graph measure") {
    const GraphMeasure mu = bump_measure(16, 128);
    const CzKernel comp = component(make_riesz(), 0);
    const CzKernel compadj = adjoint_kernel(comp);
    Rng rng(74);
    std::vector<double> f(mu.size()), g(mu.size());
    for (auto& v : f) v = rng.uniform(-1.0, 1.0);
    for (auto& v : g) v = rng.uniform(-1.0, 1.0);
    const double eps = 0.1;
    NeumaierAcc lhs, rhs;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        lhs.add(truncated_sio(comp, mu, f, mu.points[i], eps)[0] * g[i] * mu.weights[i]);
        rhs.add(truncated_sio(compadj, mu, g, mu.points[i], eps)[0] * f[i] * mu.weights[i]);
    }
    CHECK(std::abs(lhs.value() - rhs.value()) <=
          1e-12 * std::max(1.0, std::abs(lhs.value())));
}
