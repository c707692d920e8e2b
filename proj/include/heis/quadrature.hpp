#pragma once

// Discrete 3-ADR measures on intrinsic graphs via the area formula,
// Ahlfors-regularity diagnostics, Christ dyadic cubes with thin-boundary
// statistics, and the projected-ball Monte Carlo check.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "heis/graphs.hpp"

namespace heis {

// ---------------------------------------------------------------------------
// GraphMeasure: midpoint tensor grid on a W-rectangle, weighted by the area
// formula density sqrt(1 + (grad^phi phi)^2).

struct GraphMeasure {
    IntrinsicFunction phi;
    double y_min = 0.0, y_max = 0.0, t_min = 0.0, t_max = 0.0;
    std::size_t n_y = 0, n_t = 0;

    std::vector<WPoint> nodes;
    std::vector<Point> points;
    std::vector<double> weights;
    std::vector<double> grads;
    double total_mass = 0.0;
    double cell_dy = 0.0, cell_dt = 0.0;
    double resolution = 0.0;  // max Koranyi distance between grid-adjacent points
    double diameter = 0.0;    // two-sweep estimate of the point-cloud diameter

    // per-summation-block bounding boxes, for exact-equivalent ball queries
    struct BlockBox {
        double x_lo, x_hi, y_lo, y_hi, t_lo, t_hi;
    };
    std::vector<BlockBox> block_boxes;

    std::size_t size() const { return nodes.size(); }
};

GraphMeasure build_graph_measure(const IntrinsicFunction& phi, double y_min, double y_max,
                                 double t_min, double t_max, std::size_t n_y,
                                 std::size_t n_t);

// integral of h against the measure; aborts on non-finite h values.
double integrate(const std::function<double(const Point&)>& h, const GraphMeasure& mu);

// mu(B(center, r)); block-box prefilter, bit-identical to the full scan.
double ball_mass(const GraphMeasure& mu, const Point& center, double r);

// node indices inside B(center, r)
std::vector<std::uint32_t> ball_nodes(const GraphMeasure& mu, const Point& center, double r);

// ---------------------------------------------------------------------------
// ADR diagnostics: min and max of mu(B(p,r))/r^3 over sampled centers on the
// graph and log-uniform radii. Radii below 4 grid cells are rejected.

struct AdrReport {
    double c_min = std::numeric_limits<double>::infinity();
    double c_max = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

AdrReport adr_ratios(const GraphMeasure& mu, std::size_t n_balls, double r_lo, double r_hi,
                     std::uint64_t seed);

// ---------------------------------------------------------------------------
// Christ cubes. Generations run from the coarsest scale 2^{j_max} down to
// 2^{j_min}; within each generation the cubes partition the node set exactly
// and each cube's node set is contained in its parent's.

struct ChristCube {
    int j = 0;                      // side exponent, ell = 2^j
    std::uint32_t index = 0;        // position within its generation
    std::uint32_t parent = 0;       // index within the coarser generation
    std::uint32_t center_node = 0;  // the net point z_Q
    std::vector<std::uint32_t> node_ids;
    double mass = 0.0;
    double diam = 0.0;          // exact pairwise diameter of the point set
    double inner_radius = 0.0;  // min distance from z_Q to a node outside Q (inf if none)
};

struct ChristCubeTree {
    int j_min = 0, j_max = 0;
    std::vector<std::vector<ChristCube>> generations;  // [0] = coarsest (j_max)
    // per generation, cube index of each node
    std::vector<std::vector<std::uint32_t>> cube_of;

    // verification results, filled by build
    bool partition_ok = false;   // (C0): every node in exactly one cube per generation
    bool nesting_ok = false;     // (C1): child node sets contained in parents
    double diam_const = 0.0;     // (C2): max over cubes of diam/2^j
    double inner_const = 0.0;    // (C3): min over cubes of inner_radius/2^j
    double mass_lo = 0.0;        // min over cubes of mu(Q)/ell(Q)^3
    double mass_hi = 0.0;        // max over cubes of mu(Q)/ell(Q)^3

    std::size_t generation_count() const { return generations.size(); }
};

ChristCubeTree build_christ_cubes(const GraphMeasure& mu, int j_min, int j_max);

// mass of {q in Q : dist(q, nodes \ Q) <= rho * ell(Q)}; rho > 2 returns mu(Q)
double boundary_layer(const GraphMeasure& mu, const ChristCubeTree& tree, std::size_t gen,
                      std::size_t cube, double rho);

struct BoundaryFit {
    double exponent = 0.0;  // slope of log(mu(layer)/mu(Q)) vs log rho
    std::vector<double> rhos;
    std::vector<double> layer_fraction;
    std::size_t resolution_limited = 0;  // rho values below grid resolution
    bool fit_ok = false;
};

BoundaryFit thin_boundary_fit(const GraphMeasure& mu, const ChristCubeTree& tree,
                              std::size_t gen, std::size_t cube);

// ---------------------------------------------------------------------------
// Monte Carlo area of the vertical projection of a ball, pi_W(B(z,r));
// the estimate divided by r^3 is invariant in r and z up to MC error.

struct ProjectedBallArea {
    double area = 0.0;
    double std_error = 0.0;
    std::size_t hits = 0;
    std::size_t samples = 0;
};

ProjectedBallArea projected_ball_area(const VerticalSubgroup& W, const Point& z, double r,
                                      std::size_t n_mc, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Serialization: "HSM1" columnar binary (magic, u64 node count LE, then per
// node w1, w2, weight, px, py, pt as little-endian f64) and a CSV export.

void write_hsm1(const GraphMeasure& mu, const std::string& path);

struct MeasureRecord {
    std::vector<WPoint> nodes;
    std::vector<double> weights;
    std::vector<Point> points;
};

MeasureRecord read_hsm1(const std::string& path);

void write_measure_csv(const GraphMeasure& mu, const std::string& path);

}  // namespace heis
