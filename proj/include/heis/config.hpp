#pragma once

// Experiment configuration: a human-readable key/value document with
// sections. Serialization is lossless (17 significant digits) so that
// parse(serialize(c)) == c.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heis/removability.hpp"

namespace heis {

struct GraphSpec {
    std::string family = "zero";
    double theta = 0.0;
    double y_min = -0.5, y_max = 0.5, t_min = -0.0625, t_max = 0.0625;
    std::size_t ny = 64, nt = 512;
    std::map<std::string, double> params;
    bool operator==(const GraphSpec&) const = default;
};

struct ExperimentConfig {
    std::uint64_t seed = 0;
    bool has_seed = false;
    int threads = 0;  // 0 = library default
    std::string out_dir = "out";

    GraphSpec graph;

    std::string kernel_name = "riesz";
    std::map<std::string, double> kernel_params;

    int j_min = -4, j_max = -2;

    std::vector<double> t1_eps;  // empty = default sweep, clamped at 4x resolution

    std::vector<double> ab_thetas{0.0};
    std::vector<double> ab_r{0.5};
    std::vector<double> ab_R{2.0};
    std::size_t ab_quadn = 512;

    double curve_y0 = 0.0, curve_t0 = 0.0;
    double curve_s_min = -1.0, curve_s_max = 1.0, curve_step = 1e-3;

    std::size_t pot_n = 16;
    double pot_box_x_lo = -2.0, pot_box_x_hi = 2.0;
    double pot_box_y_lo = -2.0, pot_box_y_hi = 2.0;
    double pot_box_t_lo = -1.0, pot_box_t_hi = 1.0;

    std::map<std::string, double> tolerances;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& c);

// Collects every violated guard; empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& c);

// Builds the graph measure described by the config.
GraphMeasure measure_from_config(const ExperimentConfig& c);

// The default eps sweep {2^-2, ..., 2^-6} bottoming out at 4x resolution.
std::vector<double> default_eps_grid(double resolution);

}  // namespace heis
