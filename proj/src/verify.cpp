#include "heis/verify.hpp"

#include <algorithm>
#include <cmath>

#include "heis/removability.hpp"
#include "heis/sio.hpp"

namespace heis {

namespace {

Point random_point(Rng& rng, double half) {
    return {rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half)};
}

CheckResult make(const std::string& name, bool pass, const std::string& detail) {
    return {name, pass, detail};
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

std::vector<CheckResult> verify_core(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);

    {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Point p = random_point(rng, 10.0), q = random_point(rng, 10.0),
                        r = random_point(rng, 10.0);
            const Point a = mul(mul(p, q), r), b = mul(p, mul(q, r));
            const double scale = std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(a.t)});
            worst = std::max({worst, std::abs(a.x - b.x) / scale, std::abs(a.y - b.y) / scale,
                              std::abs(a.t - b.t) / scale});
        }
        out.push_back(make("associativity", worst <= 1e-12, "max rel dev " + fmt_g17(worst)));
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const Point g = random_point(rng, 10.0), p = random_point(rng, 10.0),
                        q = random_point(rng, 10.0);
            const double d0 = dist(p, q);
            const double d1 = dist(mul(g, p), mul(g, q));
            worst = std::max(worst, std::abs(d0 - d1) / std::max(1e-12, d0));
        }
        out.push_back(make("left-invariance", worst <= 1e-10, "max rel dev " + fmt_g17(worst)));
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const Point p = random_point(rng, 5.0);
            const double r = rng.log_uniform(1e-2, 1e2);
            worst = std::max(worst, std::abs(koranyi_norm(dilate(r, p)) - r * koranyi_norm(p)) /
                                        std::max(1e-12, r * koranyi_norm(p)));
        }
        out.push_back(make("dilation homogeneity", worst <= 1e-12, "max rel dev " + fmt_g17(worst)));
    }
    {
        bool ok = true;
        for (int i = 0; i < 500 && ok; ++i) {
            const Point p = random_point(rng, 10.0);
            ok = koranyi_norm(p) == koranyi_norm(inv(p));
        }
        out.push_back(make("norm symmetry", ok, "exact equality on 500 samples"));
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const VerticalSubgroup W(rng.uniform(0.0, 3.14159265358979323846));
            const Point p = random_point(rng, 5.0);
            const Point back = mul(embed_w(W, proj_vertical(p, W)), embed_v(W, proj_horizontal(p, W)));
            worst = std::max({worst, std::abs(back.x - p.x), std::abs(back.y - p.y),
                              std::abs(back.t - p.t)});
        }
        out.push_back(make("projection recomposition", worst <= 1e-12, "max abs dev " + fmt_g17(worst)));
    }
    {
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            const Point p = random_point(rng, 10.0);
            const Point e = mul(p, inv(p));
            ok = e.x == 0.0 && e.y == 0.0 && e.t == 0.0;
        }
        out.push_back(make("exact inverses", ok, "p.p^-1 = 0 on 200 samples"));
    }
    {
        // FD sub-Laplacian of ||.||^{-2} converges at order >= 1.8
        const ScalarField u = [](const Point& p) { return fundamental_solution(p); };
        double worst_order = std::numeric_limits<double>::infinity();
        double res_coarse_max = 0.0;
        for (int i = 0; i < 20; ++i) {
            Point p = random_point(rng, 2.0);
            const double n = koranyi_norm(p);
            if (n < 1e-6) {
                p.x += 1.0;
            }
            const double target = rng.uniform(0.5, 5.0);
            p = dilate(target / koranyi_norm(p), p);
            const double r1 =
                std::abs(horizontal_derivatives_fd(u, p, 1e-4, 1e-2).sublaplacian);
            const double r2 =
                std::abs(horizontal_derivatives_fd(u, p, 1e-4, 1e-3).sublaplacian);
            res_coarse_max = std::max(res_coarse_max, r1);
            if (r2 > 0.0) {
                worst_order = std::min(worst_order, std::log10(r1 / r2));
            }
        }
        // h shrinks by 10, order p gives residual factor 10^p
        out.push_back(make("fd convergence order", worst_order >= 1.8,
                           "min observed order " + fmt_g17(worst_order)));
    }
    return out;
}

std::vector<CheckResult> verify_kernels(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);
    const CzKernel riesz = make_riesz();
    const CzKernel quasi = make_quasi_riesz();

    {
        const RieszValue a = riesz_kernel({1.0, 0.0, 0.0});
        const RieszValue b = riesz_kernel({0.0, 1.0, 0.0});
        const RieszValue c = riesz_kernel({0.0, 0.0, 1.0});
        const bool ok = std::abs(a.k1 + 2.0) <= 1e-15 && std::abs(a.k2) <= 1e-15 &&
                        std::abs(b.k1) <= 1e-15 && std::abs(b.k2 + 2.0) <= 1e-15 &&
                        std::abs(c.k1) <= 1e-15 && std::abs(c.k2) <= 1e-15;
        out.push_back(make("riesz closed form", ok,
                           "K(1,0,0)=(" + fmt_g17(a.k1) + "," + fmt_g17(a.k2) + ")"));
    }
    {
        const QuasiRieszValue a = quasi_riesz_kernel({0.0, 0.0, 1.0});
        const bool ok = a.k1 == 0.0 && a.k2 == 0.0 && std::abs(a.k3 - 1.0 / 32.0) <= 1e-16;
        out.push_back(make("quasi-riesz closed form", ok, "K(0,0,1)=(0,0," + fmt_g17(a.k3) + ")"));
    }
    out.push_back(make("riesz horizontal antisymmetry", check_symmetry(riesz, 1000, seed + 1),
                       "1000 samples"));
    out.push_back(make("quasi-riesz antisymmetry", check_symmetry(quasi, 1000, seed + 2),
                       "1000 samples"));
    out.push_back(make("riesz is not antisymmetric",
                       !check_symmetry_class(riesz, KernelSymmetry::Antisymmetric, 1000, seed + 3),
                       "declared-antisymmetric check must fail"));
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const Point p = random_point(rng, 3.0);
            if (koranyi_norm(p) < 1e-3) continue;
            const double r = rng.log_uniform(0.1, 10.0);
            const KernelValue a = riesz(dilate(r, p));
            const KernelValue b = riesz(p);
            for (int d = 0; d < 2; ++d) {
                worst = std::max(worst, std::abs(a[d] * r * r * r - b[d]) /
                                            std::max(1e-12, std::abs(b[d])));
            }
        }
        out.push_back(make("riesz -3 homogeneity", worst <= 1e-12, "max rel dev " + fmt_g17(worst)));
    }
    {
        const BumpProfile psi;
        const CzKernel piece = lp_piece(riesz, 0, psi);
        bool ok = true;
        // outside the annulus the piece is exactly zero
        ok = ok && piece({3.0, 0.0, 0.0}).norm() == 0.0;
        ok = ok && piece({0.05, 0.0, 0.0}).norm() == 0.0;
        // where psi_j = 1 and psi_{j+1} = 0 the piece equals the kernel
        const Point probe{0.9, 0.3, 0.1};  // ||p|| in (2^-1, 2^0)
        const double n = koranyi_norm(probe);
        bool applicable = n > 0.5 && n < 1.0;
        const KernelValue kv = piece(probe);
        const KernelValue rv = riesz(probe);
        ok = ok && applicable && kv[0] == rv[0] && kv[1] == rv[1];
        out.push_back(make("lp piece support/partition", ok, "support annulus exact"));
    }
    {
        const CzKernel adj2 = adjoint_kernel(adjoint_kernel(riesz));
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const Point p = random_point(rng, 3.0);
            if (koranyi_norm(p) < 1e-3) continue;
            const KernelValue a = adj2(p);
            const KernelValue b = riesz(p);
            for (int d = 0; d < 2; ++d) worst = std::max(worst, std::abs(a[d] - b[d]));
        }
        out.push_back(make("adjoint involution", worst == 0.0, "pointwise identical"));
    }
    {
        const GrowthReport g = check_growth(riesz, 5000, seed + 4);
        double ratio = 1.0;
        for (std::size_t d = 1; d < g.decade_max.size(); ++d) {
            if (g.decade_max[d] > 0.0 && g.decade_max[d - 1] > 0.0) {
                const double r = g.decade_max[d] / g.decade_max[d - 1];
                ratio = std::max(ratio, std::max(r, 1.0 / r));
            }
        }
        out.push_back(make("riesz growth scale-free", g.finite() && ratio < 2.0,
                           "sup |K| ||z||^3 = " + fmt_g17(g.max_value) +
                               ", per-decade ratio " + fmt_g17(ratio)));
    }
    {
        const HoelderReport h = check_hoelder(riesz, 5000, seed + 5);
        out.push_back(make("riesz hoelder finite", h.finite(),
                           "direct " + fmt_g17(h.max_direct) + ", inverse " +
                               fmt_g17(h.max_inverse)));
    }
    {
        // Riesz equals the FD horizontal gradient of ||.||^{-2}
        const ScalarField u = [](const Point& p) { return fundamental_solution(p); };
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            Point p = random_point(rng, 2.0);
            if (koranyi_norm(p) < 0.3) p.x += 1.0;
            const auto fd = horizontal_gradient_fd(u, p, 1e-4);
            const RieszValue k = riesz_kernel(p);
            worst = std::max({worst, std::abs(fd.x_deriv - k.k1), std::abs(fd.y_deriv - k.k2)});
        }
        out.push_back(make("riesz = grad_H ||.||^{-2} (fd)", worst <= 1e-5,
                           "max abs dev " + fmt_g17(worst)));
    }
    return out;
}

std::vector<CheckResult> verify_graphs(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);

    {
        const IntrinsicFunction lin = builtin("linear", {{"b", 0.7}});
        const IntrinsicFunction ex = builtin("ex1", {{"alpha", 1.0}});
        const IntrinsicFunction zero = builtin("zero");
        const double g1 = intrinsic_gradient(lin, {3.0, -2.0});
        const double g2 = intrinsic_gradient(ex, {0.0, 1.0});
        const double g3 = intrinsic_gradient(zero, {1.0, 1.0});
        const bool ok = std::abs(g1 - 0.7) <= 1e-14 && std::abs(g2 - 3.0) <= 1e-12 && g3 == 0.0;
        out.push_back(make("intrinsic gradients", ok,
                           "linear->" + fmt_g17(g1) + ", ex1(0,1)->" + fmt_g17(g2)));
    }
    {
        const IntrinsicFunction c2 = builtin("constant", {{"c", 2.0}});
        const Point p = graph_map(c2, {1.0, 0.0});
        const bool ok = p.x == 2.0 && p.y == 1.0 && std::abs(p.t + 1.0) <= 1e-15;
        out.push_back(make("graph map", ok,
                           "(2,1," + fmt_g17(p.t) + ")"));
    }
    {
        const IntrinsicFunction zero = builtin("zero");
        const IntrinsicFunction shifted = translate_function(zero, {1.5, 0.0, 0.0});
        bool ok = true;
        for (int i = 0; i < 50; ++i) {
            const WPoint w{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            ok = ok && std::abs(shifted.phi(w) - 1.5) <= 1e-15;
        }
        out.push_back(make("translated zero graph", ok, "phi^{p0} == x0"));
    }
    {
        const IntrinsicFunction bump = builtin("bump", {{"radius", 1.0}, {"height", 0.1}});
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const WPoint w{rng.uniform(-1.5, 1.5), rng.uniform(-0.4, 0.4)};
            const Point p = graph_map(bump, w);
            const WPoint back = proj_vertical(p, bump.W);
            worst = std::max({worst, std::abs(back.w1 - w.w1), std::abs(back.w2 - w.w2)});
        }
        ok = worst <= 1e-12;
        out.push_back(make("graph projects back", ok, "max dev " + fmt_g17(worst)));
    }
    {
        // RK4 exact on polynomial right sides of degree <= 3
        const IntrinsicFunction cubic =
            builtin("polynomial", {{"c0", 0.3}, {"cy", -0.5}, {"cy2", 0.25}, {"cy3", 0.125}});
        const Curve curve = characteristic_curve(cubic, 0.0, 0.0, -1.0, 1.0, 1e-2);
        double worst = 0.0;
        for (const auto& [s, tau] : curve.samples) {
            const double exact =
                0.3 * s - 0.25 * s * s + 0.25 * s * s * s / 3.0 + 0.125 * s * s * s * s / 4.0;
            worst = std::max(worst, std::abs(tau - exact));
        }
        out.push_back(make("rk4 exact on cubics", worst <= 1e-12, "max dev " + fmt_g17(worst)));
    }
    {
        const IntrinsicFunction lin = builtin("linear", {{"b", 0.4}});
        const Curve curve = characteristic_curve(lin, 0.0, 0.2, -1.0, 1.0, 1e-2);
        const double res = check_integral_representation(lin, curve);
        out.push_back(make("integral representation (linear)", res <= 1e-12,
                           "residual " + fmt_g17(res)));
    }
    {
        // Burgers form vs difference-quotient definition of the gradient
        const IntrinsicFunction bump = builtin("bump", {{"radius", 1.0}, {"height", 0.1}});
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const WPoint w{rng.uniform(-0.8, 0.8), rng.uniform(-0.2, 0.2)};
            const Point p = graph_map(bump, w);
            const IntrinsicFunction sh = translate_function(bump, inv(p));
            const double y = 1e-5;
            const double quotient = sh.phi({y, 0.0}) / y;
            worst = std::max(worst, std::abs(quotient - intrinsic_gradient(bump, w)));
        }
        out.push_back(make("burgers consistency", worst <= 1e-4, "max dev " + fmt_g17(worst)));
    }
    {
        // quadratic curve bound |tau(y)| <= 10 L y^2, in the normalization
        // where the curve starts on the graph: integrate the translated
        // parametrization phi^{(p^-1)} from (0,0), p in Gamma(phi)
        const IntrinsicFunction bump = builtin("bump", {{"radius", 1.0}, {"height", 0.2}});
        const Point p = graph_map(bump, {0.2, 0.01});
        const IntrinsicFunction sh = translate_function(bump, inv(p));
        const Curve curve = characteristic_curve(sh, 0.0, 0.0, -1.5, 1.5, 1e-3);
        bool ok = true;
        for (const auto& [s, tau] : curve.samples) {
            if (std::abs(tau) > 10.0 * std::max(0.1, bump.grad_bound) * s * s + 1e-12) {
                ok = false;
            }
        }
        out.push_back(make("quadratic curve bound", ok,
                           "L = " + fmt_g17(bump.grad_bound)));
    }
    return out;
}

std::vector<CheckResult> verify_cubes(std::uint64_t seed) {
    std::vector<CheckResult> out;
    const IntrinsicFunction zero = builtin("zero");
    const GraphMeasure mu = build_graph_measure(zero, 0.0, 1.0, 0.0, 0.0625, 36, 432);

    {
        const double err = std::abs(mu.total_mass - 0.0625);
        out.push_back(make("plane mass exact", err <= 1e-12, "err " + fmt_g17(err)));
    }
    {
        const IntrinsicFunction lin = builtin("linear", {{"b", 2.0}});
        const GraphMeasure ml = build_graph_measure(lin, 0.0, 1.0, 0.0, 1.0, 32, 32);
        const double want = std::sqrt(5.0);
        out.push_back(make("linear graph mass", rel_err(ml.total_mass, want) <= 1e-10,
                           "mass " + fmt_g17(ml.total_mass)));
    }
    const ChristCubeTree tree = build_christ_cubes(mu, -3, -1);
    out.push_back(make("cube partition (C0)", tree.partition_ok, "exact set arithmetic"));
    out.push_back(make("cube nesting (C1)", tree.nesting_ok, "exact set arithmetic"));
    out.push_back(make("cube diameter (C2)", tree.diam_const <= 8.0,
                       "A0 = " + fmt_g17(tree.diam_const)));
    out.push_back(make("cube inner ball (C3)", tree.inner_const > 0.0,
                       "c0 = " + fmt_g17(tree.inner_const)));
    {
        const double band = tree.mass_hi / tree.mass_lo;
        out.push_back(make("cube mass band", band <= 20.0,
                           "mu(Q)/l(Q)^3 in [" + fmt_g17(tree.mass_lo) + ", " +
                               fmt_g17(tree.mass_hi) + "]"));
    }
    {
        const auto& gen = tree.generations[1];
        std::size_t pick = 0;
        for (std::size_t c = 0; c < gen.size(); ++c) {
            if (gen[c].node_ids.size() > gen[pick].node_ids.size()) pick = c;
        }
        const double full = boundary_layer(mu, tree, 1, pick, 2.0);
        const bool trivial = full == gen[pick].mass;
        const BoundaryFit fit = thin_boundary_fit(mu, tree, 1, pick);
        out.push_back(make("boundary layer", trivial && (!fit.fit_ok || fit.exponent > 0.0),
                           "exponent " + fmt_g17(fit.exponent)));
    }
    {
        const AdrReport rep = adr_ratios(mu, 24, 4.0 * mu.resolution, mu.diameter / 4.0, seed);
        out.push_back(make("adr ratios positive", rep.c_min > 0.0 && std::isfinite(rep.c_max),
                           "[" + fmt_g17(rep.c_min) + ", " + fmt_g17(rep.c_max) + "]"));
    }
    {
        const VerticalSubgroup W(0.0);
        const auto a1 = projected_ball_area(W, {0.0, 0.0, 0.0}, 1.0, 20000, seed + 1);
        const auto a2 = projected_ball_area(W, {0.0, 0.0, 0.0}, 2.0, 20000, seed + 2);
        const double r1 = a1.area, r2 = a2.area / 8.0;
        const double se = std::sqrt(a1.std_error * a1.std_error +
                                    a2.std_error * a2.std_error / 64.0);
        const bool ok = std::abs(r1 - r2) <= 3.0 * se;
        out.push_back(make("projected ball r^3 scaling", ok,
                           "area(1)=" + fmt_g17(r1) + " area(2)/8=" + fmt_g17(r2)));
    }
    return out;
}

std::vector<CheckResult> verify_sio(std::uint64_t seed) {
    std::vector<CheckResult> out;
    const IntrinsicFunction zero = builtin("zero");
    const GraphMeasure mu = build_graph_measure(zero, 0.0, 1.0, 0.0, 0.0625, 32, 384);
    const CzKernel riesz = make_riesz();
    const BumpProfile psi;

    {
        std::vector<double> f(mu.size(), 0.0);
        const SioValue v = truncated_sio(riesz, mu, f, {0.5, 0.5, 0.0}, 0.1);
        out.push_back(make("zero density", v.norm() == 0.0, "T 0 = 0"));
    }
    {
        std::vector<double> f(mu.size(), 1.0);
        const SioValue v = truncated_sio(riesz, mu, f, {0.0, 0.5, 0.03}, 10.0);
        out.push_back(make("empty truncation", v.norm() == 0.0, "eps > diam"));
    }
    {
        // discrete adjoint identity <Tf, g> = <f, T*g> over the full node set
        Rng rng(seed);
        const GraphMeasure ms = build_graph_measure(zero, 0.0, 1.0, 0.0, 0.0625, 16, 128);
        std::vector<double> f(ms.size()), g(ms.size());
        for (auto& v : f) v = rng.uniform(-1.0, 1.0);
        for (auto& v : g) v = rng.uniform(-1.0, 1.0);
        const CzKernel comp = component(riesz, 0);
        const CzKernel compadj = adjoint_kernel(comp);
        const double eps = 0.1;
        NeumaierAcc lhs, rhs;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const double tf = truncated_sio(comp, ms, f, ms.points[i], eps)[0];
            const double tg = truncated_sio(compadj, ms, g, ms.points[i], eps)[0];
            lhs.add(tf * g[i] * ms.weights[i]);
            rhs.add(tg * f[i] * ms.weights[i]);
        }
        const double dev = std::abs(lhs.value() - rhs.value()) /
                           std::max(1e-12, std::abs(lhs.value()));
        out.push_back(make("adjoint pairing", dev <= 1e-10, "rel dev " + fmt_g17(dev)));
    }
    {
        // telescoping: sum of lp pieces equals the closed form
        std::vector<double> f(mu.size(), 1.0);
        const Point p = mu.points[mu.size() / 2];
        const int N = 4;
        const SioValue closed = smooth_sio(riesz, mu, f, p, psi, N);
        double per_j[2] = {0.0, 0.0};
        for (int j = -3; j <= N; ++j) {  // 2^{1-j} > diam for j < -3
            const CzKernel piece = lp_piece(riesz, j, psi);
            const SioValue tj = truncated_sio(piece, mu, f, p, 1e-9);
            per_j[0] += tj[0];
            per_j[1] += tj[1];
        }
        const double dev = std::hypot(per_j[0] - closed[0], per_j[1] - closed[1]);
        out.push_back(make("telescoping", dev <= 1e-10, "abs dev " + fmt_g17(dev)));
    }
    {
        // AB integrals: riesz component exactly cancels, radial control does not
        const AbResult a = ab_integral(component(riesz, 0), VerticalSubgroup(0.0), psi, 0.5, 2.0, 256);
        const AbResult c = ab_integral(make_radial_power(3.0), VerticalSubgroup(0.0), psi, 0.5, 2.0, 256);
        const bool ok = std::abs(a.integral) <= 1e-12 * std::max(1e-300, a.abs_sum) &&
                        c.integral > 1e-2;
        out.push_back(make("ab cancellation", ok,
                           "riesz " + fmt_g17(a.integral) + ", radial " + fmt_g17(c.integral)));
    }
    {
        std::vector<double> f(mu.size(), 3.0);
        const auto radii = geometric_radii(4.0 * mu.resolution, mu.diameter, std::sqrt(2.0));
        const double m = maximal_function(mu, f, mu.points[10], radii);
        out.push_back(make("maximal of constant", std::abs(m - 3.0) <= 1e-12,
                           "M = " + fmt_g17(m)));
    }
    return out;
}

std::vector<CheckResult> verify_removability(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);

    {
        const double a = fundamental_solution({0.0, 0.0, 1.0});
        const double b = fundamental_solution({1.0, 0.0, 0.0});
        out.push_back(make("fundamental solution values",
                           std::abs(a - 0.25) <= 1e-15 && std::abs(b - 1.0) <= 1e-15,
                           "Phi(0,0,1)=" + fmt_g17(a)));
    }
    {
        // endpoint error in coordinates: the Koranyi metric turns a t-slip of
        // machine size eps into sqrt(eps), so coordinate agreement is the
        // right floating-point statement of exactness
        double worst_end = 0.0, worst_len = 0.0;
        for (int i = 0; i < 200; ++i) {
            const Point z1 = random_point(rng, 3.0), z2 = random_point(rng, 3.0);
            const HorizontalPath path = horizontal_path(z1, z2);
            const Point end = path.endpoint_by_composition();
            worst_end = std::max({worst_end, std::abs(end.x - z2.x), std::abs(end.y - z2.y),
                                  std::abs(end.t - z2.t)});
            const double excess = path.total_length() - 3.0 * dist(z1, z2);
            worst_len = std::max(worst_len, excess);
        }
        out.push_back(make("horizontal path", worst_end <= 1e-10 && worst_len <= 1e-10,
                           "endpoint coord err " + fmt_g17(worst_end)));
    }
    {
        // single-node potential is harmonic off the pole
        const Point q{0.3, -0.2, 0.1};
        const ScalarField f = [&q](const Point& p) {
            return fundamental_solution(mul(inv(q), p));
        };
        std::vector<Point> pts;
        for (int i = 0; i < 10; ++i) {
            Point p = random_point(rng, 2.0);
            const double d = dist(p, q);
            if (d < 0.5) p.x += 2.0;
            pts.push_back(p);
        }
        const auto rows = check_harmonic_off_support(f, pts, 1e-3, {q});
        double worst = 0.0;
        for (const auto& r : rows) {
            if (r.accepted) worst = std::max(worst, r.residual);
        }
        out.push_back(make("potential harmonic off pole", worst <= 1e-4,
                           "max residual " + fmt_g17(worst)));
    }
    {
        // x-coordinate is 1-Lipschitz for d
        const ScalarField f = [](const Point& p) { return p.x; };
        std::vector<std::pair<Point, Point>> pairs;
        for (int i = 0; i < 500; ++i) {
            pairs.emplace_back(random_point(rng, 4.0), random_point(rng, 4.0));
        }
        const LipschitzStat st = lipschitz_stat(f, pairs);
        out.push_back(make("coordinate lipschitz", st.sup_quotient <= 1.0 + 1e-12,
                           "sup quotient " + fmt_g17(st.sup_quotient)));
    }
    {
        // pairing: negative and linear in the density
        const IntrinsicFunction bump = builtin("bump", {{"radius", 0.4}, {"height", 0.05}});
        const GraphMeasure mu = build_graph_measure(bump, -0.5, 0.5, -0.05, 0.05, 24, 48);
        std::vector<double> h1(mu.size(), 1.0), h2(mu.size(), 0.5);
        const PlateauBump g{{0.0, 0.0, 0.0}, 1.6, BumpProfile()};
        const QuadBox box{-3.4, 3.4, -3.4, 3.4, -3.0, 3.0};
        const double p1 = nonharmonicity_pairing(mu, h1, g, box, 20);
        const double p2 = nonharmonicity_pairing(mu, h2, g, box, 20);
        const bool ok = p1 < 0.0 && p2 < 0.0 && std::abs(p1 / p2 - 2.0) <= 0.1 * 2.0;
        out.push_back(make("pairing sign and linearity", ok,
                           "p1 " + fmt_g17(p1) + ", p1/p2 " + fmt_g17(p1 / p2)));
    }
    return out;
}

bool known_suite(const std::string& suite) {
    return suite == "core" || suite == "kernels" || suite == "graphs" || suite == "cubes" ||
           suite == "sio" || suite == "removability" || suite == "all";
}

std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto append = [&out](std::vector<CheckResult> more) {
        out.insert(out.end(), more.begin(), more.end());
    };
    if (suite == "core" || suite == "all") append(verify_core(seed));
    if (suite == "kernels" || suite == "all") append(verify_kernels(seed));
    if (suite == "graphs" || suite == "all") append(verify_graphs(seed));
    if (suite == "cubes" || suite == "all") append(verify_cubes(seed));
    if (suite == "sio" || suite == "all") append(verify_sio(seed));
    if (suite == "removability" || suite == "all") append(verify_removability(seed));
    if (out.empty() && !known_suite(suite)) {
        throw std::invalid_argument("unknown verify suite: " + suite);
    }
    return out;
}

}  // namespace heis
