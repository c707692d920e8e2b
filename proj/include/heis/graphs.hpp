#pragma once

// Intrinsic graphs over vertical subgroups: built-in function families,
// graph maps, left-translated parametrizations, the intrinsic gradient
// (Burgers form phi_y + phi phi_t), characteristic curves, and the
// regularity statistics used by the verification suites.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heis/core.hpp"

namespace heis {

using WField = std::function<double(const WPoint&)>;

class IntrinsicFunction {
public:
    std::string name;
    std::map<std::string, double> params;

    WField phi;
    WField dy;  // analytic partials; empty means FD fallback
    WField dt;

    double alpha = 1.0;                   // Hoelder exponent of the family
    double hoelder_H = 0.0;               // known intrinsic Hoelder constant; NaN if unknown
    double grad_bound = 0.0;              // sup |grad^phi phi|; NaN if unbounded/unknown
    std::optional<double> support_radius; // Koranyi ball radius in W, when compact
    VerticalSubgroup W;
    double fd_step = 1e-6;

    double operator()(const WPoint& w) const { return phi(w); }
    bool has_partials() const { return static_cast<bool>(dy) && static_cast<bool>(dt); }
};

// Families: zero; constant (c); linear (b); ex1 (alpha); bump (radius,
// height); polynomial (c0, cy, ct, cy2, cyt, ct2, cy3).
IntrinsicFunction builtin(const std::string& name,
                          const std::map<std::string, double>& params = {});

// Graph map Phi(w) = w . phi(w) as a point of H.
Point graph_map(const IntrinsicFunction& phi, const WPoint& w);

// Parametrization of the left-translated graph: Gamma(phi^{p0}) = p0 . Gamma(phi).
// In subgroup coordinates, with (v0, w0) the splitting of p0,
//   phi^{p0}(w) = phi(w1 - w01, w2 - w02 - (w1 - w01) v0) + v0.
IntrinsicFunction translate_function(const IntrinsicFunction& phi, const Point& p0);

// grad^phi phi(w) = phi_y(w) + phi(w) phi_t(w); analytic partials when
// available, otherwise central differences with phi.fd_step.
double intrinsic_gradient(const IntrinsicFunction& phi, const WPoint& w);

// ---------------------------------------------------------------------------
// Characteristic curves tau'(s) = phi(s, tau(s)).

struct Curve {
    double y0 = 0.0;
    double t0 = 0.0;
    double step = 0.0;
    std::vector<std::pair<double, double>> samples;  // (s, tau(s)), ascending in s
    bool truncated = false;  // blow-up guard hit before covering s_range
};

Curve characteristic_curve(const IntrinsicFunction& phi, double y0, double t0,
                           double s_min, double s_max, double step,
                           double blow_up_bound = 1e6);

// Max over samples of |phi(s,tau(s)) - phi(y0,t0) - int grad^phi phi along
// the curve|; the integral uses composite Simpson panels on the samples.
double check_integral_representation(const IntrinsicFunction& phi, const Curve& curve);

// ---------------------------------------------------------------------------
// Regularity statistics.

// sup over pairs of |phi(y0,t1) - phi(y0,t2)| / |t1 - t2|^{(1+alpha)/2}
double vertical_line_hoelder_stat(const IntrinsicFunction& phi, double y0,
                                  const std::vector<double>& t_samples);

struct SlopeFit {
    double slope = 0.0;
    bool exact = false;  // E(r) identically zero over the scales
    std::vector<double> scales;
    std::vector<double> sup_error;
};

// Decay of E(r) = sup_{||(y,t)|| <= r} |phi^{(p^-1)}(y,t) - grad^phi phi(w) y|
// against r, fitted log-log; p = Phi(w). The sup runs over a fixed
// 64-direction angular net of the Koranyi ball, scaled anisotropically.
SlopeFit linear_approx_slope(const IntrinsicFunction& phi, const WPoint& w,
                             const std::vector<double>& scales);

// Empirical sup of
//   |grad^phi phi(y+y0, t+t0+phi(y0,t0) y) - grad^phi phi(y0,t0)| / ||(y,t)||^alpha
// over sampled base points in [box] and Koranyi-log-uniform offsets.
double estimate_hoelder_H(const IntrinsicFunction& phi, double box_half_w1,
                          double box_half_w2, std::size_t n_base, std::size_t n_offsets,
                          std::uint64_t seed, double offset_lo = 1e-3,
                          double offset_hi = 1.0);

// Number of sampled graph pairs violating ||pi_V(p^-1 q)|| <= L ||pi_W(p^-1 q)||.
std::size_t cone_test(const IntrinsicFunction& phi, double L, std::size_t n_pairs,
                      double box_half_w1, double box_half_w2, std::uint64_t seed);

}  // namespace heis
