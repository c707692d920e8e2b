#include "heis/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

namespace {

void require_nonzero(const Point& p) {
    if (p.x == 0.0 && p.y == 0.0 && p.t == 0.0) {
        throw std::domain_error("kernel evaluated at the group identity");
    }
    if (!p.finite()) throw std::invalid_argument("kernel evaluated at non-finite point");
}

}  // namespace

RieszValue riesz_kernel(const Point& p) {
    require_nonzero(p);
    return riesz_kernel_unchecked(p);
}

QuasiRieszValue quasi_riesz_kernel(const Point& p) {
    require_nonzero(p);
    return quasi_riesz_kernel_unchecked(p);
}

KernelValue CzKernel::operator()(const Point& p) const {
    require_nonzero(p);
    const Point q = adjoint_flag ? inv(p) : p;
    KernelValue out;
    out.dim = dim;
    switch (tag) {
        case KernelTag::Riesz: {
            const RieszValue k = riesz_kernel_unchecked(q);
            out.v = {k.k1, k.k2, 0.0};
            return out;
        }
        case KernelTag::QuasiRiesz: {
            const QuasiRieszValue k = quasi_riesz_kernel_unchecked(q);
            out.v = {k.k1, k.k2, k.k3};
            return out;
        }
        case KernelTag::RadialPower: {
            const double n4 = koranyi_norm4(q);
            out.v = {std::pow(n4, -radial_exponent / 4.0), 0.0, 0.0};
            return out;
        }
        case KernelTag::Zero:
            return out;
        case KernelTag::Custom:
            return fn(q);
    }
    throw std::logic_error("unreachable kernel tag");
}

CzKernel make_riesz() {
    CzKernel k;
    k.name = "riesz";
    k.dim = 2;
    k.beta = 1.0;
    k.growth_const = 3.0;
    k.symmetry = KernelSymmetry::HorizontallyAntisymmetric;
    k.tag = KernelTag::Riesz;
    return k;
}

CzKernel make_quasi_riesz() {
    CzKernel k;
    k.name = "quasi-riesz";
    k.dim = 3;
    k.beta = 1.0;
    k.growth_const = 1.5;
    k.symmetry = KernelSymmetry::Antisymmetric;
    k.tag = KernelTag::QuasiRiesz;
    return k;
}

CzKernel make_radial_power(double exponent) {
    require_finite(exponent, "radial exponent");
    CzKernel k;
    k.name = "radial";
    k.dim = 1;
    k.beta = 1.0;
    k.growth_const = 1.0;
    k.symmetry = KernelSymmetry::None;
    k.tag = KernelTag::RadialPower;
    k.radial_exponent = exponent;
    return k;
}

CzKernel make_zero_kernel(int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("kernel dim must be 1..3");
    CzKernel k;
    k.name = "zero";
    k.dim = dim;
    k.beta = 1.0;
    k.growth_const = 0.0;
    k.symmetry = KernelSymmetry::None;
    k.tag = KernelTag::Zero;
    return k;
}

CzKernel adjoint_kernel(const CzKernel& K) {
    CzKernel out = K;
    if (K.tag == KernelTag::Custom) {
        auto base = K.fn;
        out.fn = [base](const Point& p) { return base(inv(p)); };
    } else {
        out.adjoint_flag = !K.adjoint_flag;
    }
    // The adjoint of a CZ kernel keeps the growth bound; the Hoelder
    // continuity only transfers with exponent beta/2. Both antisymmetry
    // classes are preserved.
    out.beta = K.beta / 2.0;
    if (!out.name.empty() && out.name.back() == '*') {
        out.name.pop_back();
        out.beta = K.beta * 2.0;  // undoing a previous adjoint restores beta
    } else {
        out.name += '*';
    }
    return out;
}

CzKernel component(const CzKernel& K, int index) {
    if (index < 0 || index >= K.dim) throw std::invalid_argument("component index out of range");
    CzKernel out;
    out.name = K.name + "[" + std::to_string(index) + "]";
    out.dim = 1;
    out.beta = K.beta;
    out.growth_const = K.growth_const;
    out.symmetry = K.symmetry;
    out.tag = KernelTag::Custom;
    CzKernel base = K;
    out.fn = [base, index](const Point& p) {
        KernelValue full = base(p);
        KernelValue v;
        v.dim = 1;
        v.v[0] = full[index];
        return v;
    };
    return out;
}

CzKernel kernel_by_name(const std::string& name,
                        const std::vector<std::pair<std::string, double>>& params) {
    auto param = [&params](const std::string& key, double fallback) {
        for (const auto& kv : params)
            if (kv.first == key) return kv.second;
        return fallback;
    };
    if (name == "riesz") return make_riesz();
    if (name == "quasi-riesz") return make_quasi_riesz();
    if (name == "zero") return make_zero_kernel();
    if (name == "radial") return make_radial_power(param("exponent", 3.0));
    throw std::invalid_argument("unknown kernel name: " + name);
}

// ---------------------------------------------------------------------------

namespace {

// exp(-1/u) glue; C-infinity ramp S with S(0)=0, S(1)=1.
double glue(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

double ramp(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = glue(u);
    const double b = glue(1.0 - u);
    return a / (a + b);
}

double default_profile(double s) {
    const double a = std::abs(s);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return ramp(2.0 - a);
}

double measure_derivative_bound() {
    double best = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double s = 1.0 + static_cast<double>(i) / n;
        const double h = 1e-6;
        best = std::max(best, std::abs(default_profile(s + h) - default_profile(s - h)) / (2 * h));
    }
    return best;
}

}  // namespace

BumpProfile::BumpProfile() {
    static const double bound = measure_derivative_bound();
    profile_ = default_profile;
    derivative_bound_ = bound;
}

BumpProfile::BumpProfile(std::function<double(double)> profile, double derivative_bound)
    : profile_(std::move(profile)), derivative_bound_(derivative_bound) {}

double psi_j(const BumpProfile& psi, int j, const Point& p) {
    return psi(std::ldexp(koranyi_norm(p), j));
}

CzKernel lp_piece(const CzKernel& K, int j, const BumpProfile& psi) {
    CzKernel out;
    out.name = K.name + "_(" + std::to_string(j) + ")";
    out.dim = K.dim;
    out.beta = K.beta;
    out.growth_const = K.growth_const;
    out.symmetry = K.symmetry;  // the window is radial
    out.tag = KernelTag::Custom;
    CzKernel base = K;
    out.fn = [base, j, psi](const Point& p) {
        const double n = koranyi_norm(p);
        const double w = psi(std::ldexp(n, j)) - psi(std::ldexp(n, j + 1));
        KernelValue v;
        v.dim = base.dim;
        if (w == 0.0) return v;
        v = base(p);
        for (int i = 0; i < v.dim; ++i) v.v[static_cast<std::size_t>(i)] *= w;
        return v;
    };
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Uniform-ish direction on the Koranyi unit sphere: a random box point
// pushed to norm 1 by dilation.
Point random_direction(Rng& rng) {
    for (;;) {
        Point p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double n = koranyi_norm(p);
        if (n > 1e-3) return dilate(1.0 / n, p);
    }
}

}  // namespace

GrowthReport check_growth(const CzKernel& K, std::size_t n, std::uint64_t seed,
                          double norm_lo, double norm_hi) {
    require_positive(norm_lo, "norm_lo");
    if (norm_hi <= norm_lo) throw std::invalid_argument("norm range empty");
    Rng rng(seed);
    GrowthReport rep;
    rep.samples = n;
    rep.seed = seed;

    const int decades = std::max(1, static_cast<int>(std::ceil(std::log10(norm_hi / norm_lo))));
    rep.decade_max.assign(static_cast<std::size_t>(decades), 0.0);
    rep.decade_lo.resize(static_cast<std::size_t>(decades));
    for (int d = 0; d < decades; ++d)
        rep.decade_lo[static_cast<std::size_t>(d)] = norm_lo * std::pow(10.0, d);

    for (std::size_t i = 0; i < n; ++i) {
        const double r = rng.log_uniform(norm_lo, norm_hi);
        const Point z = dilate(r, random_direction(rng));
        const double nz = koranyi_norm(z);
        if (nz == 0.0) {
            ++rep.skipped;
            continue;
        }
        const double stat = K(z).norm() * nz * nz * nz;
        rep.max_value = std::max(rep.max_value, stat);
        int d = static_cast<int>(std::floor(std::log10(nz / norm_lo)));
        d = std::clamp(d, 0, decades - 1);
        auto& slot = rep.decade_max[static_cast<std::size_t>(d)];
        slot = std::max(slot, stat);
    }
    return rep;
}

HoelderReport check_hoelder(const CzKernel& K, std::size_t n, std::uint64_t seed,
                            double norm_lo, double norm_hi) {
    Rng rng(seed);
    HoelderReport rep;
    rep.samples = n;
    rep.seed = seed;
    const double beta = K.beta;

    for (std::size_t i = 0; i < n; ++i) {
        const double r = rng.log_uniform(norm_lo, norm_hi);
        const Point z1 = dilate(r, random_direction(rng));
        const double n1 = koranyi_norm(z1);
        if (n1 == 0.0) {
            ++rep.skipped;
            continue;
        }
        // admissible pair: d(z1,z2) <= ||z1||/2, realised exactly via
        // z2 = z1 . g^{-1} with ||g|| = s.
        const double s = n1 * rng.uniform(1e-4, 0.5);
        const Point g = dilate(s, random_direction(rng));
        const Point z2 = mul(z1, inv(g));
        const double sep = koranyi_norm(g);
        if (sep == 0.0) {
            ++rep.skipped;
            continue;
        }

        const KernelValue a = K(z1);
        const KernelValue b = K(z2);
        double diff2 = 0.0;
        for (int c = 0; c < a.dim; ++c) {
            const double d = a[c] - b[c];
            diff2 += d * d;
        }
        const double diff = std::sqrt(diff2);
        rep.max_direct =
            std::max(rep.max_direct, diff * std::pow(n1, 3.0 + beta) / std::pow(sep, beta));

        const KernelValue ai = K(inv(z1));
        const KernelValue bi = K(inv(z2));
        double diffi2 = 0.0;
        for (int c = 0; c < ai.dim; ++c) {
            const double d = ai[c] - bi[c];
            diffi2 += d * d;
        }
        rep.max_inverse = std::max(rep.max_inverse, std::sqrt(diffi2) *
                                                        std::pow(n1, 3.0 + beta / 2.0) /
                                                        std::pow(sep, beta / 2.0));
    }
    return rep;
}

bool check_symmetry_class(const CzKernel& K, KernelSymmetry declared, std::size_t n,
                          std::uint64_t seed) {
    if (declared == KernelSymmetry::None) return true;
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rng.log_uniform(1e-2, 1e2);
        const Point z = dilate(r, random_direction(rng));
        const Point flipped = declared == KernelSymmetry::HorizontallyAntisymmetric
                                  ? Point{-z.x, -z.y, z.t}
                                  : inv(z);
        const KernelValue a = K(z);
        const KernelValue b = K(flipped);
        for (int c = 0; c < a.dim; ++c) {
            const double scale = std::abs(a[c]) + std::abs(b[c]);
            if (std::abs(a[c] + b[c]) > 1e-12 * std::max(1e-300, scale)) return false;
        }
    }
    return true;
}

bool check_symmetry(const CzKernel& K, std::size_t n, std::uint64_t seed) {
    return check_symmetry_class(K, K.symmetry, n, seed);
}

}  // namespace heis
