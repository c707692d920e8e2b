#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heis/kernels.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {
Point rand_point(Rng& rng, double half) {
    return {rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half)};
}
}  // namespace

TEST_CASE("riesz closed form against the ad oracle") {
    // frozen oracle values, recomputed here by forward AD of grad_H ||.||^{-2}
    {
        const auto g = oracles::ad_horizontal_gradient_norm_inv2(1, 0, 0);
        CHECK(g[0] == doctest::Approx(-2.0).epsilon(1e-14));
        CHECK(g[1] == doctest::Approx(0.0).epsilon(1e-14));
    }
    {
        const auto g = oracles::ad_horizontal_gradient_norm_inv2(0, 1, 0);
        CHECK(g[0] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(g[1] == doctest::Approx(-2.0).epsilon(1e-14));
    }
    {
        const auto g = oracles::ad_horizontal_gradient_norm_inv2(0, 0, 1.7);
        CHECK(std::abs(g[0]) <= 1e-15);
        CHECK(std::abs(g[1]) <= 1e-15);
    }

    const RieszValue a = riesz_kernel({1, 0, 0});
    CHECK(a.k1 == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(a.k2 == 0.0);
    const RieszValue b = riesz_kernel({0, 1, 0});
    CHECK(b.k1 == 0.0);
    CHECK(b.k2 == doctest::Approx(-2.0).epsilon(1e-15));
    const RieszValue c = riesz_kernel({0, 0, 1});
    CHECK(c.k1 == 0.0);
    CHECK(c.k2 == 0.0);

    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        Point p = rand_point(rng, 3.0);
        if (koranyi_norm(p) < 1e-2) p.x += 1.0;
        const auto want = oracles::ad_horizontal_gradient_norm_inv2(p.x, p.y, p.t);
        const RieszValue got = riesz_kernel(p);
        const double scale = std::max({1.0, std::abs(want[0]), std::abs(want[1])});
        CHECK(std::abs(got.k1 - want[0]) / scale <= 1e-12);
        CHECK(std::abs(got.k2 - want[1]) / scale <= 1e-12);
    }
}

TEST_CASE("quasi-riesz closed form") {
    const QuasiRieszValue a = quasi_riesz_kernel({1, 0, 0});
    CHECK(a.k1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.k2 == 0.0);
    CHECK(a.k3 == 0.0);
    const QuasiRieszValue b = quasi_riesz_kernel({0, 0, 1});
    CHECK(b.k1 == 0.0);
    CHECK(b.k2 == 0.0);
    CHECK(b.k3 == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
}

TEST_CASE("symmetry classes") {
    const CzKernel riesz = make_riesz();
    const CzKernel quasi = make_quasi_riesz();
    CHECK(check_symmetry(riesz, 1000, 22));
    CHECK(check_symmetry(quasi, 1000, 23));
    CHECK_FALSE(check_symmetry_class(riesz, KernelSymmetry::Antisymmetric, 1000, 24));
    // zero kernel satisfies everything
    CHECK(check_symmetry_class(make_zero_kernel(), KernelSymmetry::Antisymmetric, 100, 25));
}

TEST_CASE("homogeneity of both builtins") {
    Rng rng(26);
    const CzKernel riesz = make_riesz();
    const CzKernel quasi = make_quasi_riesz();
    for (int i = 0; i < 200; ++i) {
        Point p = rand_point(rng, 3.0);
        if (koranyi_norm(p) < 1e-2) p.y += 1.0;
        const double r = rng.log_uniform(0.05, 20.0);
        for (const CzKernel* K : {&riesz, &quasi}) {
            const KernelValue kv = (*K)(dilate(r, p));
            const KernelValue base = (*K)(p);
            for (int d = 0; d < K->dim; ++d) {
                CHECK(kv[d] * r * r * r ==
                      doctest::Approx(base[d]).epsilon(1e-12).scale(std::abs(base[d]) + 1e-12));
            }
        }
    }
}

TEST_CASE("adjoint kernel") {
    const CzKernel riesz = make_riesz();
    const CzKernel quasi = make_quasi_riesz();
    const CzKernel radj = adjoint_kernel(riesz);
    const CzKernel qadj = adjoint_kernel(quasi);
    CHECK(radj.beta == doctest::Approx(0.5));

    SUBCASE("adjoint of an antisymmetric kernel is its negative") {
        Rng rng(27);
        for (int i = 0; i < 100; ++i) {
            Point p = rand_point(rng, 2.0);
            if (koranyi_norm(p) < 1e-2) p.x += 1.0;
            const KernelValue a = qadj(p);
            const KernelValue b = quasi(p);
            for (int d = 0; d < 3; ++d) CHECK(a[d] == doctest::Approx(-b[d]).epsilon(1e-15));
        }
    }
    SUBCASE("involution") {
        Rng rng(28);
        const CzKernel twice = adjoint_kernel(radj);
        CHECK(twice.beta == doctest::Approx(1.0));
        for (int i = 0; i < 100; ++i) {
            Point p = rand_point(rng, 2.0);
            if (koranyi_norm(p) < 1e-2) p.x += 1.0;
            const KernelValue a = twice(p);
            const KernelValue b = riesz(p);
            CHECK(a[0] == b[0]);
            CHECK(a[1] == b[1]);
        }
    }
    SUBCASE("riesz first component at the documented pair") {
        const double k1a = riesz({0, 1, 1}).v[0];
        const double k1b = riesz({0, -1, -1}).v[0];
        CHECK(k1a == doctest::Approx(k1b).epsilon(1e-15));
        // the adjoint evaluates at the inverse point
        const double k1adj = radj({0, 1, 1}).v[0];
        CHECK(k1adj == doctest::Approx(k1a).epsilon(1e-15));
    }
}

TEST_CASE("bump profile") {
    const BumpProfile psi;
    CHECK(psi(0.0) == 1.0);
    CHECK(psi(0.49) == 1.0);
    CHECK(psi(1.0) == 1.0);
    CHECK(psi(2.0) == 0.0);
    CHECK(psi(2.7) == 0.0);
    CHECK(psi(-0.3) == psi(0.3));
    CHECK(psi(-1.4) == psi(1.4));
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
        const double s = 1.0 + i / 100.0;
        const double v = psi(s);
        CHECK(v <= prev + 1e-15);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    CHECK(psi.derivative_bound() > 0.0);
}

TEST_CASE("littlewood-paley pieces") {
    const CzKernel riesz = make_riesz();
    const BumpProfile psi;
    const CzKernel piece0 = lp_piece(riesz, 0, psi);

    SUBCASE("support annulus is exact") {
        CHECK(piece0({3, 0, 0}).norm() == 0.0);
        CHECK(piece0({0.05, 0, 0}).norm() == 0.0);
        // where psi_0 = 1 and psi_1 = 0 the piece equals the kernel; for the
        // default profile that is the unit sphere
        Point probe{0.8, 0.2, 0.05};
        probe = dilate(1.0 / koranyi_norm(probe), probe);
        REQUIRE(psi_j(psi, 0, probe) == 1.0);
        REQUIRE(psi_j(psi, 1, probe) == 0.0);
        const KernelValue kv = piece0(probe);
        const KernelValue rv = riesz(probe);
        CHECK(kv[0] == rv[0]);
        CHECK(kv[1] == rv[1]);
    }
    SUBCASE("telescoping partition") {
        Rng rng(29);
        for (int i = 0; i < 50; ++i) {
            Point p = rand_point(rng, 2.0);
            if (koranyi_norm(p) < 1e-2) p.x += 0.5;
            const int N = 3;
            double sum = 0.0;
            for (int j = -8; j <= N; ++j) {
                const double n = koranyi_norm(p);
                sum += psi(std::ldexp(n, j)) - psi(std::ldexp(n, j + 1));
            }
            const double closed = 1.0 - psi(std::ldexp(koranyi_norm(p), N + 1));
            // the lower tail is identically 1 once 2^j ||p|| <= 1
            CHECK(sum == doctest::Approx(closed).epsilon(1e-14));
        }
    }
    SUBCASE("sup bound scales like 2^{3j}") {
        Rng rng(30);
        for (int j : {-2, 0, 3}) {
            const CzKernel piece = lp_piece(riesz, j, psi);
            double sup = 0.0;
            for (int i = 0; i < 4000; ++i) {
                const double r = rng.log_uniform(std::ldexp(1.0, -3 - j), std::ldexp(1.0, 2 - j));
                Point p = rand_point(rng, 1.0);
                if (koranyi_norm(p) < 1e-3) p.x += 1.0;
                p = dilate(r / koranyi_norm(p), p);
                sup = std::max(sup, piece(p).norm());
            }
            CHECK(sup <= 3.0 * std::ldexp(1.0, 3 * (j + 2)));
            CHECK(sup > 0.0);
        }
    }
}

TEST_CASE("growth and hoelder reports") {
    const CzKernel riesz = make_riesz();
    SUBCASE("riesz growth is finite and scale-free") {
        const GrowthReport rep = check_growth(riesz, 10000, 31);
        CHECK(rep.finite());
        CHECK(rep.max_value > 0.0);
        for (std::size_t d = 1; d < rep.decade_max.size(); ++d) {
            if (rep.decade_max[d] > 0.0 && rep.decade_max[d - 1] > 0.0) {
                const double r = rep.decade_max[d] / rep.decade_max[d - 1];
                CHECK(r < 2.0);
                CHECK(r > 0.5);
            }
        }
    }
    SUBCASE("riesz hoelder stats finite on admissible pairs") {
        const HoelderReport rep = check_hoelder(riesz, 10000, 32);
        CHECK(rep.finite());
        CHECK(rep.max_direct > 0.0);
        CHECK(rep.max_inverse > 0.0);
    }
    SUBCASE("zero kernel has zero maxima") {
        const GrowthReport g = check_growth(make_zero_kernel(), 1000, 33);
        CHECK(g.max_value == 0.0);
        const HoelderReport h = check_hoelder(make_zero_kernel(), 1000, 34);
        CHECK(h.max_direct == 0.0);
        CHECK(h.max_inverse == 0.0);
    }
}

TEST_CASE("evaluation guards") {
    const CzKernel riesz = make_riesz();
    CHECK_THROWS_AS(riesz({0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(riesz_kernel({0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(quasi_riesz_kernel({0, 0, 0}), std::domain_error);
}

TEST_CASE("kernel lookup and components") {
    CHECK(kernel_by_name("riesz").dim == 2);
    CHECK(kernel_by_name("quasi-riesz").dim == 3);
    CHECK(kernel_by_name("radial", {{"exponent", 2.5}}).radial_exponent ==
          doctest::Approx(2.5));
    CHECK_THROWS_AS(kernel_by_name("nosuch"), std::invalid_argument);

    const CzKernel second = component(make_riesz(), 1);
    CHECK(second.dim == 1);
    const Point p{0.4, -0.3, 0.2};
    CHECK(second(p)[0] == make_riesz()(p)[1]);
    CHECK_THROWS_AS(component(make_riesz(), 2), std::invalid_argument);
}
