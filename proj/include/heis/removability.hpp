#pragma once

// Constructions behind the removability argument: the fundamental solution
// of the sub-Laplacian, horizontal polygonal paths (quasiconvexity), graph
// potentials, and the harmonicity / Lipschitz / pairing diagnostics.

#include "heis/kernels.hpp"
#include "heis/quadrature.hpp"

namespace heis {

// Phi(p) = ||p||^{-2}; harmonic away from the pole.
double fundamental_solution(const Point& p);

// ---------------------------------------------------------------------------
// Horizontal polygonal paths. Each segment is traced by
// s -> start . (s cos a, s sin a, 0), which is a geodesic for the metric d.

struct PathSegment {
    Point start;
    double angle = 0.0;
    double length = 0.0;
    Point end() const {
        return mul(start, {length * std::cos(angle), length * std::sin(angle), 0.0});
    }
};

struct HorizontalPath {
    Point p_start, p_end;
    std::vector<PathSegment> segments;  // at most 5; zero-length segments dropped
    double total_length() const {
        double s = 0.0;
        for (const auto& seg : segments) s += seg.length;
        return s;
    }
    // composes the segment increments; equals p_end up to rounding
    Point endpoint_by_composition() const;
};

// Connects z1 to z2 by at most five horizontal segments of total length
// <= 3 d(z1,z2): one segment to kill the planar offset, then the lift of a
// square of side sqrt(|t'|) for the remaining vertical offset.
HorizontalPath horizontal_path(const Point& z1, const Point& z2);

// ---------------------------------------------------------------------------
// Potentials f(p) = sum Phi(q_i^{-1} p) h_i w_i of a density h on the
// measure; p must not collide with a node.

double potential(const GraphMeasure& mu, const std::vector<double>& h, const Point& p);

struct HarmonicityRow {
    Point p;
    double residual = 0.0;
    bool accepted = false;
};

// FD sub-Laplacian residuals of f at the points; points closer than
// 10 h_fd to the support are rejected per point.
std::vector<HarmonicityRow> check_harmonic_off_support(const ScalarField& f,
                                                       const std::vector<Point>& points,
                                                       double h_fd,
                                                       const std::vector<Point>& support);

struct LipschitzStat {
    double sup_quotient = 0.0;
    std::size_t pairs = 0;
    std::size_t skipped = 0;  // coincident pairs
};

LipschitzStat lipschitz_stat(const ScalarField& f,
                             const std::vector<std::pair<Point, Point>>& pairs);

// ---------------------------------------------------------------------------
// Pairing <f, Delta_H g> over a coordinate box; g is a Koranyi-radial plateau
// bump, identically 1 on B(center, plateau_radius) and 0 outside
// B(center, 2 plateau_radius).

struct PlateauBump {
    Point center;
    double plateau_radius = 1.0;
    BumpProfile profile;
    double operator()(const Point& p) const {
        return profile(dist(p, center) / plateau_radius);
    }
};

struct QuadBox {
    double x_lo, x_hi, y_lo, y_hi, t_lo, t_hi;
};

// Tensor midpoint quadrature of f(p) Delta_H g(p) over the box; the
// plateau must cover the support of h mu and the bump must vanish well
// inside the box (both verified, violations rejected).
double nonharmonicity_pairing(const GraphMeasure& mu, const std::vector<double>& h,
                              const PlateauBump& g, const QuadBox& box, std::size_t n,
                              double fd_step = 1e-3);

// Potential sampled on a coordinate lattice, written as "HPT1" binary
// (magic, u64 nx ny nt, box bounds as 6 f64, then values, t fastest).
void write_potential_lattice(const GraphMeasure& mu, const std::vector<double>& h,
                             const QuadBox& box, std::size_t nx, std::size_t ny,
                             std::size_t nt, const std::string& path);

}  // namespace heis
