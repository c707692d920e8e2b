#pragma once

// Truncated singular-integral operators on graph measures, Littlewood-Paley
// smoothing, the centred maximal function, the T1 testing harness, the AB
// cancellation integral, and the vertical-plane operator norm.

#include "heis/kernels.hpp"
#include "heis/quadrature.hpp"

namespace heis {

struct SioValue {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    int dim = 1;
    bool resolution_flagged = false;  // eps was below 2x grid resolution
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
    double norm() const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        return std::sqrt(s);
    }
};

// T_{mu,eps} f(p) = sum over ||q_i^-1 p|| > eps of K(q_i^-1 p) f_i w_i
SioValue truncated_sio(const CzKernel& K, const GraphMeasure& mu,
                       const std::vector<double>& f, const Point& p, double eps);

// S_N f(p) via the telescoped kernel K (1 - psi_{N+1}); equals the sum of
// the Littlewood-Paley pieces T_(j), j <= N.
SioValue smooth_sio(const CzKernel& K, const GraphMeasure& mu, const std::vector<double>& f,
                    const Point& p, const BumpProfile& psi, int N);

// centred Hardy-Littlewood maximal function over the given radii
double maximal_function(const GraphMeasure& mu, const std::vector<double>& f, const Point& p,
                        const std::vector<double>& radii);

std::vector<double> geometric_radii(double lo, double hi, double factor);

// ---------------------------------------------------------------------------
// T1 testing.

struct T1Row {
    int gen = 0;             // generation index, 0 = coarsest
    int j = 0;               // cube scale exponent
    std::uint32_t cube = 0;  // cube index within the generation
    double eps = 0.0;
    bool adjoint = false;
    double norm2 = 0.0;  // ||T_{mu,eps} chi_R||^2_{L^2(mu|_R)}
    double mass = 0.0;   // mu(R)
    double ratio = 0.0;
    bool eps_resolved = true;  // eps >= 4x grid resolution
};

struct T1Report {
    std::vector<T1Row> rows;
    std::vector<double> eps_grid;
    double resolution = 0.0;

    // max ratio over cubes for one (eps, adjoint) column; NaN if absent
    double max_ratio(double eps, bool adjoint) const;
    // stability factor max/min of per-eps maxima over resolved columns
    double sweep_factor(bool adjoint) const;
};

// Computes the testing quantities for K and its formal adjoint on every cube
// of the tree, for each eps in the grid. eps below 2x resolution is a
// precondition violation; eps in [2x, 4x) is computed but marked unresolved.
T1Report t1_test(const CzKernel& K, const GraphMeasure& mu, const ChristCubeTree& tree,
                 const std::vector<double>& eps_grid);

// ---------------------------------------------------------------------------
// AB cancellation integral over a vertical plane:
//   int_W [psi^R(w) - psi^r(w)] K(w) dL^2(w)
// on a symmetric midpoint grid, so that both antisymmetry classes cancel
// exactly pairwise; abs_sum is the sum of |terms| for relative comparison.

struct AbResult {
    double integral = 0.0;
    double abs_sum = 0.0;
};

AbResult ab_integral(const CzKernel& scalar_kernel, const VerticalSubgroup& W,
                     const BumpProfile& psi, double r, double R, std::size_t quad_n);

// ---------------------------------------------------------------------------
// Discrete truncated convolution operator on a W-rectangle; operator norm by
// power iteration on T*T.

struct PlaneGrid {
    double w1_lo, w1_hi, w2_lo, w2_hi;
    std::size_t n1, n2;
};

struct UbvpResult {
    double norm_estimate = 0.0;
    int iterations = 0;
    bool converged = false;
};

UbvpResult ubvp_plane_norm(const CzKernel& K, const VerticalSubgroup& W, const PlaneGrid& grid,
                           double eps, int max_iters = 30, double tol = 1e-6);

}  // namespace heis
