#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heis/core.hpp"
#include "heis/removability.hpp"

using namespace heis;

namespace {
Point rand_point(Rng& rng, double half) {
    return {rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half)};
}
}  // namespace

TEST_CASE("group law") {
    const Point a = mul({1, 0, 0}, {0, 1, 0});
    CHECK(a.x == 1.0);
    CHECK(a.y == 1.0);
    CHECK(a.t == 0.5);

    const Point b = mul({0, 1, 0}, {1, 0, 0});
    CHECK(b.t == -0.5);

    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        const Point p = rand_point(rng, 5.0);
        const Point q = mul(p, {0, 0, 0});
        CHECK(q == p);
    }
}

TEST_CASE("inverses") {
    const Point p = inv({1, 2, 3});
    CHECK(p.x == -1.0);
    CHECK(p.y == -2.0);
    CHECK(p.t == -3.0);
    CHECK(inv(Point{0, 0, 0}) == Point{0, 0, 0});
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        const Point q = rand_point(rng, 10.0);
        CHECK(inv(inv(q)) == q);
        const Point e = mul(q, inv(q));
        CHECK(e.x == 0.0);
        CHECK(e.y == 0.0);
        CHECK(e.t == 0.0);
    }
}

TEST_CASE("koranyi norm") {
    CHECK(koranyi_norm({3, 4, 0}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(koranyi_norm({0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(koranyi_norm({0, 0, 0}) == 0.0);
}

TEST_CASE("metric") {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        const Point p = rand_point(rng, 5.0);
        CHECK(dist(p, p) == 0.0);
    }
    CHECK(dist({0, 0, 0}, {0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-15));
    // left-invariance
    for (int i = 0; i < 200; ++i) {
        const Point g = rand_point(rng, 10.0), p = rand_point(rng, 10.0),
                    q = rand_point(rng, 10.0);
        const double d0 = dist(p, q);
        CHECK(dist(mul(g, p), mul(g, q)) == doctest::Approx(d0).epsilon(1e-10));
    }
}

TEST_CASE("dilations") {
    const Point d = dilate(2.0, {1, 1, 1});
    CHECK(d.x == 2.0);
    CHECK(d.y == 2.0);
    CHECK(d.t == 4.0);
    Rng rng(14);
    const Point p = rand_point(rng, 3.0);
    CHECK(dilate(1.0, p) == p);
    CHECK(koranyi_norm(dilate(3.0, {1, 0, 1})) ==
          doctest::Approx(3.0 * koranyi_norm({1, 0, 1})).epsilon(1e-14));
    CHECK_THROWS_AS(dilate(0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(dilate(-2.0, p), std::invalid_argument);
}

TEST_CASE("associativity property") {
    Rng rng(15);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Point p = rand_point(rng, 10.0), q = rand_point(rng, 10.0),
                    r = rand_point(rng, 10.0);
        const Point a = mul(mul(p, q), r), b = mul(p, mul(q, r));
        const double scale = std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(a.t)});
        worst = std::max({worst, std::abs(a.x - b.x) / scale, std::abs(a.y - b.y) / scale,
                          std::abs(a.t - b.t) / scale});
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("homogeneity and norm symmetry properties") {
    Rng rng(16);
    for (int i = 0; i < 500; ++i) {
        const Point p = rand_point(rng, 5.0);
        const double r = rng.log_uniform(1e-2, 1e2);
        CHECK(koranyi_norm(dilate(r, p)) ==
              doctest::Approx(r * koranyi_norm(p)).epsilon(1e-12));
        CHECK(koranyi_norm(p) == koranyi_norm(inv(p)));
    }
}

TEST_CASE("subgroup projections") {
    const VerticalSubgroup W0(0.0);
    SUBCASE("theta = 0 closed form") {
        const Point p{1, 2, 3};
        const WPoint w = proj_vertical(p, W0);
        CHECK(w.w1 == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(w.w2 == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(proj_horizontal(p, W0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("embeddings") {
        const Point e = embed_w(W0, {1, 2});
        CHECK(e.x == 0.0);
        CHECK(e.y == 1.0);
        CHECK(e.t == 2.0);
        const VerticalSubgroup W90(1.5707963267948966);
        const Point v = embed_v(W90, 1.0);
        CHECK(v.x == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(v.y == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(v.t == 0.0);
        const Point z = embed_w(W0, {0, 0});
        CHECK(z == Point{0, 0, 0});
    }
    SUBCASE("idempotence on W") {
        Rng rng(17);
        for (int i = 0; i < 50; ++i) {
            const VerticalSubgroup W(rng.uniform(0.0, 3.1));
            const WPoint w{rng.uniform(-3, 3), rng.uniform(-3, 3)};
            const Point p = embed_w(W, w);
            CHECK(proj_vertical(p, W).w1 == doctest::Approx(w.w1).epsilon(1e-13));
            CHECK(proj_vertical(p, W).w2 == doctest::Approx(w.w2).epsilon(1e-13));
            CHECK(std::abs(proj_horizontal(p, W)) <= 1e-13 * (1.0 + std::abs(w.w1)));
        }
    }
    SUBCASE("recomposition") {
        Rng rng(18);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const VerticalSubgroup W(rng.uniform(0.0, 3.1));
            const Point p = rand_point(rng, 5.0);
            const Point back =
                mul(embed_w(W, proj_vertical(p, W)), embed_v(W, proj_horizontal(p, W)));
            worst = std::max({worst, std::abs(back.x - p.x), std::abs(back.y - p.y),
                              std::abs(back.t - p.t)});
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("theta normalization") {
    const double pi = 3.14159265358979323846;
    CHECK(VerticalSubgroup(0.3 + pi).theta == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(VerticalSubgroup(-0.3).theta == doctest::Approx(pi - 0.3).epsilon(1e-12));
    CHECK(VerticalSubgroup(0.0).theta == 0.0);
}

TEST_CASE("validation") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(checked_point(nan, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(checked_point(0, std::numeric_limits<double>::infinity(), 0),
                    std::invalid_argument);
    CHECK_NOTHROW(checked_point(1, 2, 3));
}

TEST_CASE("fd derivatives on coordinate fields") {
    const Point p{0.7, -1.3, 0.4};
    SUBCASE("u = x") {
        const auto d = horizontal_derivatives_fd([](const Point& q) { return q.x; }, p);
        CHECK(d.x_deriv == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(d.y_deriv == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(std::abs(d.sublaplacian) <= 1e-8);
    }
    SUBCASE("u = t") {
        const auto d = horizontal_derivatives_fd([](const Point& q) { return q.t; }, p);
        CHECK(d.x_deriv == doctest::Approx(-p.y / 2.0).epsilon(1e-10));
        CHECK(d.y_deriv == doctest::Approx(p.x / 2.0).epsilon(1e-10));
        CHECK(std::abs(d.sublaplacian) <= 1e-8);
    }
}

TEST_CASE("fd sub-laplacian of the fundamental solution") {
    const ScalarField u = [](const Point& q) { return fundamental_solution(q); };
    SUBCASE("harmonic at a sample point") {
        const auto d = horizontal_derivatives_fd(u, {1, 1, 1}, 1e-4, 1e-3);
        CHECK(std::abs(d.sublaplacian) <= 1e-5);
    }
    SUBCASE("convergence order >= 1.8") {
        Rng rng(19);
        double worst_order = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 20; ++i) {
            Point p = rand_point(rng, 2.0);
            if (koranyi_norm(p) < 1e-3) p.x += 1.0;
            p = dilate(rng.uniform(0.5, 5.0) / koranyi_norm(p), p);
            const double r1 = std::abs(horizontal_derivatives_fd(u, p, 1e-4, 1e-2).sublaplacian);
            const double r2 = std::abs(horizontal_derivatives_fd(u, p, 1e-4, 1e-3).sublaplacian);
            if (r2 > 0.0) worst_order = std::min(worst_order, std::log10(r1 / r2));
        }
        CHECK(worst_order >= 1.8);
    }
}

TEST_CASE("fd rejects non-finite fields") {
    const ScalarField u = [](const Point& q) {
        return q.x > 0.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    };
    CHECK_THROWS_AS(horizontal_derivatives_fd(u, {0.5, 0, 0}), std::runtime_error);
    CHECK_THROWS_AS(horizontal_derivatives_fd([](const Point&) { return 1.0; }, {0, 0, 0}, -1.0),
                    std::invalid_argument);
}
