#include "heis/core.hpp"

#include <string>

namespace heis {

Point checked_point(double x, double y, double t) {
    require_finite(x, "point.x");
    require_finite(y, "point.y");
    require_finite(t, "point.t");
    return {x, y, t};
}

Point dilate(double r, const Point& p) {
    require_positive(r, "dilation factor");
    return {r * p.x, r * p.y, r * r * p.t};
}

VerticalSubgroup::VerticalSubgroup(double theta_in) {
    require_finite(theta_in, "theta");
    const double pi = 3.14159265358979323846;
    double th = std::fmod(theta_in, pi);
    if (th < 0.0) th += pi;
    // fmod can return pi itself after the wrap when theta_in is a tiny
    // negative multiple of pi; fold it back.
    if (th >= pi) th = 0.0;
    theta = th;
}

WPoint proj_vertical(const Point& p, const VerticalSubgroup& W) {
    const double c = std::cos(W.theta), s = std::sin(W.theta);
    const double v = p.x * c + p.y * s;
    const double w1 = -p.x * s + p.y * c;
    // p = embed_w(w1,w2) . embed_v(v) forces w2 = t + w1 v / 2.
    const double w2 = p.t + 0.5 * w1 * v;
    return {w1, w2};
}

double proj_horizontal(const Point& p, const VerticalSubgroup& W) {
    const double c = std::cos(W.theta), s = std::sin(W.theta);
    return p.x * c + p.y * s;
}

namespace {

double eval_checked(const ScalarField& u, const Point& p) {
    const double v = u(p);
    if (!std::isfinite(v)) {
        throw std::runtime_error("field evaluation returned non-finite value at (" +
                                 fmt_g17(p.x) + ", " + fmt_g17(p.y) + ", " +
                                 fmt_g17(p.t) + ")");
    }
    return v;
}

}  // namespace

HorizontalDerivatives horizontal_derivatives_fd(const ScalarField& u, const Point& p,
                                                double h_first, double h_second) {
    require_positive(h_first, "fd step (first order)");
    require_positive(h_second, "fd step (second order)");
    if (!p.finite()) throw std::invalid_argument("non-finite base point");

    const double u0 = eval_checked(u, p);

    const double uxp = eval_checked(u, mul(p, {h_first, 0.0, 0.0}));
    const double uxm = eval_checked(u, mul(p, {-h_first, 0.0, 0.0}));
    const double uyp = eval_checked(u, mul(p, {0.0, h_first, 0.0}));
    const double uym = eval_checked(u, mul(p, {0.0, -h_first, 0.0}));

    HorizontalDerivatives d;
    d.x_deriv = (uxp - uxm) / (2.0 * h_first);
    d.y_deriv = (uyp - uym) / (2.0 * h_first);

    const double vxp = eval_checked(u, mul(p, {h_second, 0.0, 0.0}));
    const double vxm = eval_checked(u, mul(p, {-h_second, 0.0, 0.0}));
    const double vyp = eval_checked(u, mul(p, {0.0, h_second, 0.0}));
    const double vym = eval_checked(u, mul(p, {0.0, -h_second, 0.0}));
    const double h2 = h_second * h_second;
    d.sublaplacian = (vxp - 2.0 * u0 + vxm) / h2 + (vyp - 2.0 * u0 + vym) / h2;
    return d;
}

HorizontalDerivatives horizontal_gradient_fd(const ScalarField& u, const Point& p,
                                             double h) {
    require_positive(h, "fd step");
    HorizontalDerivatives d;
    d.x_deriv = (eval_checked(u, mul(p, {h, 0.0, 0.0})) -
                 eval_checked(u, mul(p, {-h, 0.0, 0.0}))) /
                (2.0 * h);
    d.y_deriv = (eval_checked(u, mul(p, {0.0, h, 0.0})) -
                 eval_checked(u, mul(p, {0.0, -h, 0.0}))) /
                (2.0 * h);
    return d;
}

namespace {
int g_thread_count = 0;  // 0 = unset
}

int thread_count() {
    if (g_thread_count > 0) return g_thread_count;
    if (const char* env = std::getenv("HEIS_SIO_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_thread_count(int n) { g_thread_count = n > 0 ? n : 0; }

}  // namespace heis
