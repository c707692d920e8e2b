#pragma once

// Calderon-Zygmund kernels on the Heisenberg group: the Riesz and
// quasi-Riesz kernels in closed form, adjoints, Littlewood-Paley pieces,
// and sampling-based checks of the growth/Hoelder/symmetry estimates.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "heis/core.hpp"

namespace heis {

// ---------------------------------------------------------------------------
// Closed-form kernels.

struct RieszValue {
    double k1 = 0.0;
    double k2 = 0.0;
};

// K(z) = grad_H ||z||^{-2}, expanded:
//   ( (-2x|(x,y)|^2 + 8yt) / ||z||^6 , (-2y|(x,y)|^2 - 8xt) / ||z||^6 )
inline RieszValue riesz_kernel_unchecked(const Point& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    const double q = r2 * r2 + 16.0 * p.t * p.t;  // ||p||^4
    const double n6 = q * std::sqrt(q);           // ||p||^6
    return {(-2.0 * p.x * r2 + 8.0 * p.y * p.t) / n6,
            (-2.0 * p.y * r2 - 8.0 * p.x * p.t) / n6};
}

RieszValue riesz_kernel(const Point& p);  // rejects p = 0

struct QuasiRieszValue {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
};

// Omega(x,y,t) = ( x/||p||^4, y/||p||^4, t/||p||^5 )
inline QuasiRieszValue quasi_riesz_kernel_unchecked(const Point& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    const double q = r2 * r2 + 16.0 * p.t * p.t;       // ||p||^4
    const double n5 = q * std::sqrt(std::sqrt(q));     // ||p||^5
    return {p.x / q, p.y / q, p.t / n5};
}

QuasiRieszValue quasi_riesz_kernel(const Point& p);  // rejects p = 0

// ---------------------------------------------------------------------------
// Kernel objects.

enum class KernelSymmetry { HorizontallyAntisymmetric, Antisymmetric, None };

enum class KernelTag { Riesz, QuasiRiesz, RadialPower, Zero, Custom };

struct KernelValue {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    int dim = 1;
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
    double norm() const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        return std::sqrt(s);
    }
};

class CzKernel {
public:
    std::string name;
    int dim = 1;
    double beta = 1.0;           // Hoelder exponent in (0,1]
    double growth_const = 1.0;   // nominal constant in |K(z)| <= C ||z||^{-3}
    KernelSymmetry symmetry = KernelSymmetry::None;
    KernelTag tag = KernelTag::Custom;
    bool adjoint_flag = false;       // builtin tags: evaluate at p^{-1}
    double radial_exponent = 3.0;    // KernelTag::RadialPower
    std::function<KernelValue(const Point&)> fn;  // KernelTag::Custom

    // Evaluates the kernel; p = 0 is rejected.
    KernelValue operator()(const Point& p) const;
};

CzKernel make_riesz();
CzKernel make_quasi_riesz();
// ||p||^{-a}; no cancellation, used as a negative control.
CzKernel make_radial_power(double exponent);
CzKernel make_zero_kernel(int dim = 1);

// Kernel of the formal adjoint: p -> K(p^{-1}); Hoelder exponent beta/2.
CzKernel adjoint_kernel(const CzKernel& K);

// Scalar component slice.
CzKernel component(const CzKernel& K, int index);

// Lookup by config name: "riesz", "quasi-riesz", "zero", "radial"
// (radial takes params["exponent"]).
CzKernel kernel_by_name(const std::string& name,
                        const std::vector<std::pair<std::string, double>>& params = {});

// ---------------------------------------------------------------------------
// Radial bump profile for truncations: smooth even psi with
// chi_[-1/2,1/2] <= psi <= chi_[-2,2]; the default is identically 1 on
// [-1,1], 0 beyond |s| = 2, glued with exp(-1/s).

class BumpProfile {
public:
    BumpProfile();  // default transition profile
    explicit BumpProfile(std::function<double(double)> profile, double derivative_bound);

    double operator()(double s) const { return profile_(s); }
    double derivative_bound() const { return derivative_bound_; }

private:
    std::function<double(double)> profile_;
    double derivative_bound_ = 0.0;
};

// psi_j(p) = psi(2^j ||p||)
double psi_j(const BumpProfile& psi, int j, const Point& p);

// K_(j) = (psi_j - psi_{j+1}) K; vanishes exactly outside
// B(0, 2^{1-j}) \ B(0, 2^{-2-j}).
CzKernel lp_piece(const CzKernel& K, int j, const BumpProfile& psi);

// ---------------------------------------------------------------------------
// Sampling-based estimate checks. Reports carry sample counts and seeds.

struct GrowthReport {
    double max_value = 0.0;               // sup |K(z)| ||z||^3
    std::vector<double> decade_max;       // per-decade maxima of the same
    std::vector<double> decade_lo;        // decade lower edges
    std::size_t samples = 0;
    std::size_t skipped = 0;
    std::uint64_t seed = 0;
    bool finite() const { return std::isfinite(max_value); }
};

struct HoelderReport {
    double max_direct = 0.0;    // |K(z1)-K(z2)| ||z1||^{3+b} / ||z2^-1 z1||^b
    double max_inverse = 0.0;   // inverse-argument variant with exponent b/2
    std::size_t samples = 0;
    std::size_t skipped = 0;
    std::uint64_t seed = 0;
    bool finite() const { return std::isfinite(max_direct) && std::isfinite(max_inverse); }
};

GrowthReport check_growth(const CzKernel& K, std::size_t n, std::uint64_t seed,
                          double norm_lo = 1e-3, double norm_hi = 1e3);

HoelderReport check_hoelder(const CzKernel& K, std::size_t n, std::uint64_t seed,
                            double norm_lo = 1e-2, double norm_hi = 1e2);

// True iff the declared symmetry identity holds within 1e-12 relative on n
// random points.
bool check_symmetry(const CzKernel& K, std::size_t n, std::uint64_t seed);
bool check_symmetry_class(const CzKernel& K, KernelSymmetry declared, std::size_t n,
                          std::uint64_t seed);

}  // namespace heis
