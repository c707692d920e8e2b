#pragma once

// Arithmetic of the first Heisenberg group: group law, Koranyi norm and
// metric, dilations, vertical/horizontal subgroup splitting, and finite
// differences along the left-invariant horizontal frame.
//
// All operations are pure functions on immutable values.

#include <functional>
#include <optional>

#include "heis/common.hpp"

namespace heis {

struct Point {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(t);
    }
};

inline bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y && a.t == b.t;
}

// Validating constructor for points coming from user input.
Point checked_point(double x, double y, double t);

// Group law: p . q = (x1+x2, y1+y2, t1+t2 + (x1 y2 - x2 y1)/2).
inline Point mul(const Point& p, const Point& q) {
    return {p.x + q.x, p.y + q.y, p.t + q.t + 0.5 * (p.x * q.y - q.x * p.y)};
}

inline Point operator*(const Point& p, const Point& q) { return mul(p, q); }

inline Point inv(const Point& p) { return {-p.x, -p.y, -p.t}; }

// ||(x,y,t)|| = ((x^2+y^2)^2 + 16 t^2)^{1/4}
inline double koranyi_norm(const Point& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return std::sqrt(std::sqrt(r2 * r2 + 16.0 * p.t * p.t));
}

// Fourth power of the norm; avoids the roots where only comparisons of
// distances against a fixed radius are needed.
inline double koranyi_norm4(const Point& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return r2 * r2 + 16.0 * p.t * p.t;
}

inline double dist(const Point& p, const Point& q) {
    return koranyi_norm(mul(inv(q), p));
}

// delta_r(x,y,t) = (rx, ry, r^2 t), r > 0
Point dilate(double r, const Point& p);

// Rotation about the t-axis by angle a; an isometry of the Koranyi metric.
inline Point rotate_z(double a, const Point& p) {
    const double c = std::cos(a), s = std::sin(a);
    return {c * p.x - s * p.y, s * p.x + c * p.y, p.t};
}

// ---------------------------------------------------------------------------
// Vertical subgroups W(theta) = {(-w1 sin t, w1 cos t, w2)} and their
// complementary horizontal subgroups V(theta) = {(v cos t, v sin t, 0)}.

struct VerticalSubgroup {
    VerticalSubgroup() = default;
    explicit VerticalSubgroup(double theta_in);
    double theta = 0.0;  // normalized to [0, pi)
};

struct WPoint {
    double w1 = 0.0;
    double w2 = 0.0;
};

inline bool operator==(const WPoint& a, const WPoint& b) {
    return a.w1 == b.w1 && a.w2 == b.w2;
}

// Koranyi norm of a subgroup point; independent of theta.
inline double wnorm(const WPoint& w) {
    return std::sqrt(std::sqrt(w.w1 * w.w1 * w.w1 * w.w1 + 16.0 * w.w2 * w.w2));
}

inline Point embed_w(const VerticalSubgroup& W, const WPoint& w) {
    const double c = std::cos(W.theta), s = std::sin(W.theta);
    return {-w.w1 * s, w.w1 * c, w.w2};
}

inline Point embed_v(const VerticalSubgroup& W, double v) {
    const double c = std::cos(W.theta), s = std::sin(W.theta);
    return {v * c, v * s, 0.0};
}

// Unique splitting p = embed_w(w) . embed_v(v).
WPoint proj_vertical(const Point& p, const VerticalSubgroup& W);
double proj_horizontal(const Point& p, const VerticalSubgroup& W);

// ---------------------------------------------------------------------------
// Finite differences along the group-exponential lines s -> p.(s,0,0) and
// s -> p.(0,s,0), i.e. the flows of the left-invariant fields X and Y.

struct HorizontalDerivatives {
    double x_deriv = 0.0;      // Xu(p)
    double y_deriv = 0.0;      // Yu(p)
    double sublaplacian = 0.0; // (X^2 + Y^2) u(p)
};

using ScalarField = std::function<double(const Point&)>;

inline constexpr double kDefaultFdStepFirst = 1e-4;
inline constexpr double kDefaultFdStepSecond = 1e-3;

HorizontalDerivatives horizontal_derivatives_fd(
    const ScalarField& u, const Point& p,
    double h_first = kDefaultFdStepFirst,
    double h_second = kDefaultFdStepSecond);

// Just the horizontal gradient part, with a single step.
HorizontalDerivatives horizontal_gradient_fd(const ScalarField& u, const Point& p,
                                             double h = kDefaultFdStepFirst);

}  // namespace heis
