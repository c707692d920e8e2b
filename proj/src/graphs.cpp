#include "heis/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

namespace {

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     const std::string& family) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw std::invalid_argument("builtin '" + family + "' needs parameter '" + key + "'");
    }
    return it->second;
}

// Numerically estimate sup |grad^phi phi| over a box; used to fill the
// grad_bound metadata of the bump family.
double estimate_grad_bound(const IntrinsicFunction& f, double half_w1, double half_w2) {
    double best = 0.0;
    const int n = 96;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const WPoint w{-half_w1 + 2.0 * half_w1 * i / n, -half_w2 + 2.0 * half_w2 * j / n};
            best = std::max(best, std::abs(intrinsic_gradient(f, w)));
        }
    }
    return best;
}

}  // namespace

IntrinsicFunction builtin(const std::string& name, const std::map<std::string, double>& params) {
    IntrinsicFunction f;
    f.name = name;
    f.params = params;
    f.W = VerticalSubgroup(get_param(params, "theta", 0.0));

    if (name == "zero") {
        f.phi = [](const WPoint&) { return 0.0; };
        f.dy = [](const WPoint&) { return 0.0; };
        f.dt = [](const WPoint&) { return 0.0; };
        f.alpha = 1.0;
        f.hoelder_H = 0.0;
        f.grad_bound = 0.0;
        return f;
    }
    if (name == "constant") {
        const double c = require_param(params, "c", name);
        require_finite(c, "constant c");
        f.phi = [c](const WPoint&) { return c; };
        f.dy = [](const WPoint&) { return 0.0; };
        f.dt = [](const WPoint&) { return 0.0; };
        f.alpha = 1.0;
        f.hoelder_H = 0.0;
        f.grad_bound = 0.0;
        return f;
    }
    if (name == "linear") {
        const double b = require_param(params, "b", name);
        require_finite(b, "linear b");
        f.phi = [b](const WPoint& w) { return b * w.w1; };
        f.dy = [b](const WPoint&) { return b; };
        f.dt = [](const WPoint&) { return 0.0; };
        f.alpha = 1.0;
        f.hoelder_H = 0.0;
        f.grad_bound = std::abs(b);
        return f;
    }
    if (name == "ex1") {
        const double a = get_param(params, "alpha", 1.0);
        if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("ex1 needs alpha in (0,1]");
        const double e = 1.0 + 0.5 * a;
        f.phi = [e](const WPoint& w) { return 1.0 + std::pow(std::abs(w.w2), e); };
        f.dy = [](const WPoint&) { return 0.0; };
        f.dt = [e](const WPoint& w) {
            if (w.w2 == 0.0) return 0.0;
            const double s = w.w2 > 0.0 ? 1.0 : -1.0;
            return s * e * std::pow(std::abs(w.w2), e - 1.0);
        };
        f.alpha = a;
        f.hoelder_H = std::numeric_limits<double>::quiet_NaN();  // not intrinsically C^{1,a}
        f.grad_bound = std::numeric_limits<double>::quiet_NaN(); // unbounded support
        return f;
    }
    if (name == "bump") {
        // Support is the Koranyi W-ball of the given radius:
        //   u = (w1^4 + 16 w2^2) / radius^4 < 1,  phi = height exp(1 - 1/(1-u)).
        const double radius = require_param(params, "radius", name);
        const double height = require_param(params, "height", name);
        require_positive(radius, "bump radius");
        require_finite(height, "bump height");
        const double r4 = radius * radius * radius * radius;
        auto u_of = [r4](const WPoint& w) {
            return (w.w1 * w.w1 * w.w1 * w.w1 + 16.0 * w.w2 * w.w2) / r4;
        };
        auto shape = [](double u) {
            return u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u)) : 0.0;
        };
        auto dshape = [shape](double u) {
            if (u >= 1.0) return 0.0;
            const double d = 1.0 - u;
            return -shape(u) / (d * d);
        };
        f.phi = [height, u_of, shape](const WPoint& w) { return height * shape(u_of(w)); };
        f.dy = [height, r4, u_of, dshape](const WPoint& w) {
            return height * dshape(u_of(w)) * 4.0 * w.w1 * w.w1 * w.w1 / r4;
        };
        f.dt = [height, r4, u_of, dshape](const WPoint& w) {
            return height * dshape(u_of(w)) * 32.0 * w.w2 / r4;
        };
        f.alpha = get_param(params, "alpha", 1.0);
        f.hoelder_H = std::numeric_limits<double>::quiet_NaN();  // estimated empirically
        f.support_radius = radius;
        f.grad_bound = estimate_grad_bound(f, radius, radius * radius / 4.0);
        return f;
    }
    if (name == "polynomial") {
        const double c0 = get_param(params, "c0", 0.0);
        const double cy = get_param(params, "cy", 0.0);
        const double ct = get_param(params, "ct", 0.0);
        const double cy2 = get_param(params, "cy2", 0.0);
        const double cyt = get_param(params, "cyt", 0.0);
        const double ct2 = get_param(params, "ct2", 0.0);
        const double cy3 = get_param(params, "cy3", 0.0);
        f.phi = [=](const WPoint& w) {
            return c0 + cy * w.w1 + ct * w.w2 + cy2 * w.w1 * w.w1 + cyt * w.w1 * w.w2 +
                   ct2 * w.w2 * w.w2 + cy3 * w.w1 * w.w1 * w.w1;
        };
        f.dy = [=](const WPoint& w) {
            return cy + 2.0 * cy2 * w.w1 + cyt * w.w2 + 3.0 * cy3 * w.w1 * w.w1;
        };
        f.dt = [=](const WPoint& w) { return ct + cyt * w.w1 + 2.0 * ct2 * w.w2; };
        f.alpha = 1.0;
        f.hoelder_H = std::numeric_limits<double>::quiet_NaN();
        f.grad_bound = std::numeric_limits<double>::quiet_NaN();
        return f;
    }
    throw std::invalid_argument("unknown builtin function family: " + name);
}

Point graph_map(const IntrinsicFunction& phi, const WPoint& w) {
    return mul(embed_w(phi.W, w), embed_v(phi.W, phi.phi(w)));
}

IntrinsicFunction translate_function(const IntrinsicFunction& phi, const Point& p0) {
    if (!p0.finite()) throw std::invalid_argument("non-finite translation point");
    const double v0 = proj_horizontal(p0, phi.W);
    const WPoint w0 = proj_vertical(p0, phi.W);

    IntrinsicFunction out = phi;
    out.name = phi.name + "^p0";
    out.support_radius.reset();  // support is sheared, no longer a centred ball
    auto base = phi.phi;
    auto pre = [v0, w0](const WPoint& w) {
        return WPoint{w.w1 - w0.w1, w.w2 - w0.w2 - (w.w1 - w0.w1) * v0};
    };
    out.phi = [base, pre, v0](const WPoint& w) { return base(pre(w)) + v0; };
    if (phi.has_partials()) {
        auto bdy = phi.dy;
        auto bdt = phi.dt;
        out.dy = [bdy, bdt, pre, v0](const WPoint& w) {
            const WPoint q = pre(w);
            return bdy(q) - v0 * bdt(q);
        };
        out.dt = [bdt, pre](const WPoint& w) { return bdt(pre(w)); };
    }
    return out;
}

double intrinsic_gradient(const IntrinsicFunction& phi, const WPoint& w) {
    if (phi.has_partials()) {
        return phi.dy(w) + phi.phi(w) * phi.dt(w);
    }
    const double h = phi.fd_step;
    const double py = (phi.phi({w.w1 + h, w.w2}) - phi.phi({w.w1 - h, w.w2})) / (2.0 * h);
    const double pt = (phi.phi({w.w1, w.w2 + h}) - phi.phi({w.w1, w.w2 - h})) / (2.0 * h);
    return py + phi.phi(w) * pt;
}

// ---------------------------------------------------------------------------

namespace {

// One classical RK4 step for tau' = phi(s, tau).
double rk4_step(const IntrinsicFunction& phi, double s, double tau, double h) {
    const double k1 = phi.phi({s, tau});
    const double k2 = phi.phi({s + 0.5 * h, tau + 0.5 * h * k1});
    const double k3 = phi.phi({s + 0.5 * h, tau + 0.5 * h * k2});
    const double k4 = phi.phi({s + h, tau + h * k3});
    return tau + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Curve characteristic_curve(const IntrinsicFunction& phi, double y0, double t0,
                           double s_min, double s_max, double step, double blow_up_bound) {
    require_positive(step, "curve step");
    require_finite(y0, "y0");
    require_finite(t0, "t0");
    if (s_min > y0 || s_max < y0) {
        throw std::invalid_argument("s_range must contain y0");
    }

    Curve curve;
    curve.y0 = y0;
    curve.t0 = t0;
    curve.step = step;

    std::vector<std::pair<double, double>> fwd, bwd;
    // forward sweep
    {
        double s = y0, tau = t0;
        while (s < s_max - 0.5 * step) {
            tau = rk4_step(phi, s, tau, step);
            s += step;
            if (!std::isfinite(tau) || std::abs(tau) > blow_up_bound) {
                curve.truncated = true;
                break;
            }
            fwd.emplace_back(s, tau);
        }
    }
    // backward sweep
    {
        double s = y0, tau = t0;
        while (s > s_min + 0.5 * step) {
            tau = rk4_step(phi, s, tau, -step);
            s -= step;
            if (!std::isfinite(tau) || std::abs(tau) > blow_up_bound) {
                curve.truncated = true;
                break;
            }
            bwd.emplace_back(s, tau);
        }
    }

    curve.samples.reserve(bwd.size() + 1 + fwd.size());
    for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) curve.samples.push_back(*it);
    curve.samples.emplace_back(y0, t0);
    curve.samples.insert(curve.samples.end(), fwd.begin(), fwd.end());
    return curve;
}

double check_integral_representation(const IntrinsicFunction& phi, const Curve& curve) {
    const auto& smp = curve.samples;
    if (smp.size() < 3) return 0.0;

    // locate the anchor (y0, t0)
    std::size_t anchor = 0;
    for (std::size_t i = 0; i < smp.size(); ++i) {
        if (smp[i].first == curve.y0) {
            anchor = i;
            break;
        }
    }
    const double phi0 = phi.phi({curve.y0, curve.t0});

    std::vector<double> grad(smp.size());
    for (std::size_t i = 0; i < smp.size(); ++i) {
        grad[i] = intrinsic_gradient(phi, {smp[i].first, smp[i].second});
    }

    // Cumulative integral from the anchor outwards. Simpson over sample
    // pairs, with each half-panel given by the quadratic interpolant, so
    // every sample gets an O(h^4)-accurate value; a trailing odd panel uses
    // the quadratic through the last three samples.
    auto sweep = [&](bool forward, std::vector<double>& out) {
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(smp.size());
        const std::ptrdiff_t stepdir = forward ? 1 : -1;
        double acc = 0.0;
        std::ptrdiff_t i = static_cast<std::ptrdiff_t>(anchor);
        out[anchor] = 0.0;
        while (true) {
            const std::ptrdiff_t i1 = i + stepdir, i2 = i + 2 * stepdir;
            if (i1 < 0 || i1 >= n) break;
            const double h = std::abs(smp[static_cast<std::size_t>(i1)].first -
                                      smp[static_cast<std::size_t>(i)].first);
            if (i2 >= 0 && i2 < n) {
                const double g0 = grad[static_cast<std::size_t>(i)];
                const double g1 = grad[static_cast<std::size_t>(i1)];
                const double g2 = grad[static_cast<std::size_t>(i2)];
                out[static_cast<std::size_t>(i1)] = acc + h / 12.0 * (5.0 * g0 + 8.0 * g1 - g2);
                acc = out[static_cast<std::size_t>(i1)] + h / 12.0 * (-g0 + 8.0 * g1 + 5.0 * g2);
                out[static_cast<std::size_t>(i2)] = acc;  // equals Simpson over the pair
                i = i2;
            } else {
                // trailing odd panel
                const double g1 = grad[static_cast<std::size_t>(i)];
                const double g2 = grad[static_cast<std::size_t>(i1)];
                const std::ptrdiff_t ib = i - stepdir;
                if (ib >= 0 && ib < n) {
                    const double g0 = grad[static_cast<std::size_t>(ib)];
                    out[static_cast<std::size_t>(i1)] =
                        acc + h / 12.0 * (-g0 + 8.0 * g1 + 5.0 * g2);
                } else {
                    out[static_cast<std::size_t>(i1)] = acc + 0.5 * h * (g1 + g2);
                }
                break;
            }
        }
    };

    std::vector<double> integral(smp.size(), 0.0);
    sweep(true, integral);
    sweep(false, integral);
    // Below the anchor the sweep accumulated with positive panel widths; the
    // oriented integral needs the sign flipped there.
    for (std::size_t i = 0; i < anchor; ++i) integral[i] = -integral[i];

    double worst = 0.0;
    for (std::size_t i = 0; i < smp.size(); ++i) {
        const double lhs = phi.phi({smp[i].first, smp[i].second});
        worst = std::max(worst, std::abs(lhs - phi0 - integral[i]));
    }
    return worst;
}

// ---------------------------------------------------------------------------

double vertical_line_hoelder_stat(const IntrinsicFunction& phi, double y0,
                                  const std::vector<double>& t_samples) {
    if (t_samples.size() < 2) throw std::invalid_argument("need >= 2 t samples");
    const double expo = 0.5 * (1.0 + phi.alpha);
    double worst = 0.0;
    for (std::size_t i = 0; i < t_samples.size(); ++i) {
        for (std::size_t j = i + 1; j < t_samples.size(); ++j) {
            const double dt = std::abs(t_samples[i] - t_samples[j]);
            if (dt == 0.0) continue;
            const double df = std::abs(phi.phi({y0, t_samples[i]}) - phi.phi({y0, t_samples[j]}));
            worst = std::max(worst, df / std::pow(dt, expo));
        }
    }
    return worst;
}

SlopeFit linear_approx_slope(const IntrinsicFunction& phi, const WPoint& w,
                             const std::vector<double>& scales) {
    if (scales.size() < 2) throw std::invalid_argument("need >= 2 scales");
    const Point p = graph_map(phi, w);
    const IntrinsicFunction shifted = translate_function(phi, inv(p));
    const double grad0 = intrinsic_gradient(phi, w);

    // fixed angular net, anisotropic (y ~ r, t ~ r^2), normalised to Koranyi
    // norm exactly r
    const int n_dir = 64;
    std::vector<std::pair<double, double>> dirs;
    dirs.reserve(n_dir);
    for (int k = 0; k < n_dir; ++k) {
        const double a = 2.0 * 3.14159265358979323846 * (k + 0.5) / n_dir;
        const double u = std::cos(a), v = std::sin(a);
        const double lam = std::sqrt(std::sqrt(u * u * u * u + 16.0 * v * v));
        dirs.emplace_back(u / lam, v / (lam * lam));
    }

    SlopeFit fit;
    fit.scales = scales;
    fit.sup_error.resize(scales.size(), 0.0);
    for (std::size_t s = 0; s < scales.size(); ++s) {
        const double r = scales[s];
        double worst = 0.0;
        for (const auto& [uy, ut] : dirs) {
            const WPoint q{r * uy, r * r * ut};
            worst = std::max(worst, std::abs(shifted.phi(q) - grad0 * q.w1));
        }
        // rounding floor: exactly-flat cases leave cancellation noise
        if (worst <= 1e-13 * (1.0 + std::abs(grad0)) * r) worst = 0.0;
        fit.sup_error[s] = worst;
    }

    std::vector<double> lx, ly;
    for (std::size_t s = 0; s < scales.size(); ++s) {
        if (fit.sup_error[s] > 0.0) {
            lx.push_back(std::log(scales[s]));
            ly.push_back(std::log(fit.sup_error[s]));
        }
    }
    if (lx.size() < 2) {
        fit.exact = true;
        fit.slope = std::numeric_limits<double>::infinity();
        return fit;
    }
    fit.slope = fit_slope(lx, ly);
    return fit;
}

double estimate_hoelder_H(const IntrinsicFunction& phi, double box_half_w1,
                          double box_half_w2, std::size_t n_base, std::size_t n_offsets,
                          std::uint64_t seed, double offset_lo, double offset_hi) {
    require_positive(box_half_w1, "box_half_w1");
    require_positive(box_half_w2, "box_half_w2");
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_base; ++i) {
        const WPoint w0{rng.uniform(-box_half_w1, box_half_w1),
                        rng.uniform(-box_half_w2, box_half_w2)};
        const double g0 = intrinsic_gradient(phi, w0);
        const double phi0 = phi.phi(w0);
        for (std::size_t k = 0; k < n_offsets; ++k) {
            const double r = rng.log_uniform(offset_lo, offset_hi);
            const double a = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            const double u = std::cos(a), v = std::sin(a);
            const double lam = std::sqrt(std::sqrt(u * u * u * u + 16.0 * v * v));
            const WPoint off{r * u / lam, r * r * v / (lam * lam)};
            const double nw = wnorm(off);
            if (nw == 0.0) continue;
            const WPoint q{w0.w1 + off.w1, w0.w2 + off.w2 + phi0 * off.w1};
            const double g = intrinsic_gradient(phi, q);
            worst = std::max(worst, std::abs(g - g0) / std::pow(nw, phi.alpha));
        }
    }
    return worst;
}

std::size_t cone_test(const IntrinsicFunction& phi, double L, std::size_t n_pairs,
                      double box_half_w1, double box_half_w2, std::uint64_t seed) {
    if (L < 0.0) throw std::invalid_argument("cone parameter L must be >= 0");
    Rng rng(seed);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const WPoint wa{rng.uniform(-box_half_w1, box_half_w1),
                        rng.uniform(-box_half_w2, box_half_w2)};
        const WPoint wb{rng.uniform(-box_half_w1, box_half_w1),
                        rng.uniform(-box_half_w2, box_half_w2)};
        const Point p = graph_map(phi, wa);
        const Point q = graph_map(phi, wb);
        const Point d = mul(inv(p), q);
        const double v_part = std::abs(proj_horizontal(d, phi.W));
        const double w_part = wnorm(proj_vertical(d, phi.W));
        if (v_part > L * w_part) ++violations;
    }
    return violations;
}

}  // namespace heis
