#include "heis/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "heis/graphs.hpp"

namespace heis {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::istringstream ss(value);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number '" + tok + "' for key " + key);
        }
    }
    return out;
}

double parse_one(const std::string& value, const std::string& key) {
    const auto list = parse_list(value, key);
    if (list.size() != 1) throw std::invalid_argument("key " + key + " expects one number");
    return list[0];
}

std::string list_to_string(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += fmt_g17(v[i]);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    c.graph.params.clear();
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (section.empty()) {
            if (key == "seed") {
                c.seed = static_cast<std::uint64_t>(std::stoull(value));
                c.has_seed = true;
            } else if (key == "threads") {
                c.threads = static_cast<int>(parse_one(value, key));
            } else if (key == "out") {
                c.out_dir = value;
            } else {
                throw std::invalid_argument("unknown top-level key: " + key);
            }
        } else if (section == "graph") {
            if (key == "family") {
                c.graph.family = value;
            } else if (key == "theta") {
                c.graph.theta = parse_one(value, key);
            } else if (key == "domain") {
                const auto v = parse_list(value, key);
                if (v.size() != 4) throw std::invalid_argument("graph.domain expects 4 numbers");
                c.graph.y_min = v[0];
                c.graph.y_max = v[1];
                c.graph.t_min = v[2];
                c.graph.t_max = v[3];
            } else if (key == "ny") {
                c.graph.ny = static_cast<std::size_t>(parse_one(value, key));
            } else if (key == "nt") {
                c.graph.nt = static_cast<std::size_t>(parse_one(value, key));
            } else if (key.rfind("param.", 0) == 0) {
                c.graph.params[key.substr(6)] = parse_one(value, key);
            } else {
                throw std::invalid_argument("unknown graph key: " + key);
            }
        } else if (section == "kernel") {
            if (key == "name") {
                c.kernel_name = value;
            } else if (key.rfind("param.", 0) == 0) {
                c.kernel_params[key.substr(6)] = parse_one(value, key);
            } else {
                throw std::invalid_argument("unknown kernel key: " + key);
            }
        } else if (section == "cubes") {
            if (key == "jmin") {
                c.j_min = static_cast<int>(parse_one(value, key));
            } else if (key == "jmax") {
                c.j_max = static_cast<int>(parse_one(value, key));
            } else {
                throw std::invalid_argument("unknown cubes key: " + key);
            }
        } else if (section == "t1") {
            if (key == "eps") {
                c.t1_eps = parse_list(value, key);
            } else {
                throw std::invalid_argument("unknown t1 key: " + key);
            }
        } else if (section == "ab") {
            if (key == "theta") {
                c.ab_thetas = parse_list(value, key);
            } else if (key == "r") {
                c.ab_r = parse_list(value, key);
            } else if (key == "R") {
                c.ab_R = parse_list(value, key);
            } else if (key == "quadn") {
                c.ab_quadn = static_cast<std::size_t>(parse_one(value, key));
            } else {
                throw std::invalid_argument("unknown ab key: " + key);
            }
        } else if (section == "curves") {
            if (key == "y0") c.curve_y0 = parse_one(value, key);
            else if (key == "t0") c.curve_t0 = parse_one(value, key);
            else if (key == "smin") c.curve_s_min = parse_one(value, key);
            else if (key == "smax") c.curve_s_max = parse_one(value, key);
            else if (key == "step") c.curve_step = parse_one(value, key);
            else throw std::invalid_argument("unknown curves key: " + key);
        } else if (section == "potential") {
            if (key == "n") {
                c.pot_n = static_cast<std::size_t>(parse_one(value, key));
            } else if (key == "box") {
                const auto v = parse_list(value, key);
                if (v.size() != 6) throw std::invalid_argument("potential.box expects 6 numbers");
                c.pot_box_x_lo = v[0];
                c.pot_box_x_hi = v[1];
                c.pot_box_y_lo = v[2];
                c.pot_box_y_hi = v[3];
                c.pot_box_t_lo = v[4];
                c.pot_box_t_hi = v[5];
            } else {
                throw std::invalid_argument("unknown potential key: " + key);
            }
        } else if (section == "tolerances") {
            c.tolerances[key] = parse_one(value, key);
        } else {
            throw std::invalid_argument("unknown section: [" + section + "]");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "seed = " << c.seed << "\n";
    os << "threads = " << c.threads << "\n";
    os << "out = " << c.out_dir << "\n";
    os << "\n[graph]\n";
    os << "family = " << c.graph.family << "\n";
    os << "theta = " << fmt_g17(c.graph.theta) << "\n";
    os << "domain = " << fmt_g17(c.graph.y_min) << ' ' << fmt_g17(c.graph.y_max) << ' '
       << fmt_g17(c.graph.t_min) << ' ' << fmt_g17(c.graph.t_max) << "\n";
    os << "ny = " << c.graph.ny << "\n";
    os << "nt = " << c.graph.nt << "\n";
    for (const auto& [k, v] : c.graph.params) os << "param." << k << " = " << fmt_g17(v) << "\n";
    os << "\n[kernel]\n";
    os << "name = " << c.kernel_name << "\n";
    for (const auto& [k, v] : c.kernel_params) os << "param." << k << " = " << fmt_g17(v) << "\n";
    os << "\n[cubes]\n";
    os << "jmin = " << c.j_min << "\n";
    os << "jmax = " << c.j_max << "\n";
    if (!c.t1_eps.empty()) {
        os << "\n[t1]\n";
        os << "eps = " << list_to_string(c.t1_eps) << "\n";
    }
    os << "\n[ab]\n";
    os << "theta = " << list_to_string(c.ab_thetas) << "\n";
    os << "r = " << list_to_string(c.ab_r) << "\n";
    os << "R = " << list_to_string(c.ab_R) << "\n";
    os << "quadn = " << c.ab_quadn << "\n";
    os << "\n[curves]\n";
    os << "y0 = " << fmt_g17(c.curve_y0) << "\n";
    os << "t0 = " << fmt_g17(c.curve_t0) << "\n";
    os << "smin = " << fmt_g17(c.curve_s_min) << "\n";
    os << "smax = " << fmt_g17(c.curve_s_max) << "\n";
    os << "step = " << fmt_g17(c.curve_step) << "\n";
    os << "\n[potential]\n";
    os << "n = " << c.pot_n << "\n";
    os << "box = " << fmt_g17(c.pot_box_x_lo) << ' ' << fmt_g17(c.pot_box_x_hi) << ' '
       << fmt_g17(c.pot_box_y_lo) << ' ' << fmt_g17(c.pot_box_y_hi) << ' '
       << fmt_g17(c.pot_box_t_lo) << ' ' << fmt_g17(c.pot_box_t_hi) << "\n";
    if (!c.tolerances.empty()) {
        os << "\n[tolerances]\n";
        for (const auto& [k, v] : c.tolerances) os << k << " = " << fmt_g17(v) << "\n";
    }
    return os.str();
}

std::vector<double> default_eps_grid(double resolution) {
    std::vector<double> eps;
    for (int k = 2; k <= 6; ++k) {
        const double e = std::ldexp(1.0, -k);
        if (e >= 4.0 * resolution) eps.push_back(e);
    }
    return eps;
}

// Estimated grid resolution of the configured measure without building it:
// the Koranyi step is ~dy along rows and ~2 sqrt(dt) along columns.
static double estimated_resolution(const GraphSpec& g) {
    const double dy = (g.y_max - g.y_min) / static_cast<double>(g.ny);
    const double dt = (g.t_max - g.t_min) / static_cast<double>(g.nt);
    return std::max(dy, 2.0 * std::sqrt(std::max(0.0, dt)));
}

std::vector<std::string> validate_config(const ExperimentConfig& c) {
    std::vector<std::string> bad;
    if (!c.has_seed) bad.push_back("seed: missing (seeds are mandatory)");
    if (c.graph.ny < 2 || c.graph.nt < 2) bad.push_back("graph grid: need ny, nt >= 2");
    if (c.graph.y_max <= c.graph.y_min || c.graph.t_max <= c.graph.t_min) {
        bad.push_back("graph domain: empty rectangle");
    }
    try {
        builtin(c.graph.family, c.graph.params);
    } catch (const std::exception& e) {
        bad.push_back(std::string("graph family: ") + e.what());
    }
    try {
        std::vector<std::pair<std::string, double>> kp(c.kernel_params.begin(),
                                                       c.kernel_params.end());
        kernel_by_name(c.kernel_name, kp);
    } catch (const std::exception& e) {
        bad.push_back(std::string("kernel: ") + e.what());
    }
    const double res = estimated_resolution(c.graph);
    if (c.j_min > c.j_max) bad.push_back("cubes: jmin > jmax");
    if (std::ldexp(1.0, c.j_min) < 4.0 * res) {
        bad.push_back("cubes: 2^jmin below the 4x grid-resolution guard (resolution ~" +
                      fmt_g17(res) + ")");
    }
    for (double e : c.t1_eps) {
        if (e < 2.0 * res) {
            bad.push_back("t1 eps: " + fmt_g17(e) +
                          " below the 2x grid-resolution guard (resolution ~" + fmt_g17(res) +
                          ")");
        }
    }
    if (c.ab_r.size() != c.ab_R.size()) bad.push_back("ab: r and R lists differ in length");
    for (std::size_t i = 0; i < std::min(c.ab_r.size(), c.ab_R.size()); ++i) {
        if (!(c.ab_r[i] > 0.0 && c.ab_r[i] < c.ab_R[i])) {
            bad.push_back("ab: need 0 < r < R, got r=" + fmt_g17(c.ab_r[i]) +
                          " R=" + fmt_g17(c.ab_R[i]));
        }
    }
    if (c.ab_quadn < 4) bad.push_back("ab: quadn too small");
    if (c.curve_step <= 0.0) bad.push_back("curves: step must be positive");
    if (c.curve_s_min > c.curve_y0 || c.curve_s_max < c.curve_y0) {
        bad.push_back("curves: s range must contain y0");
    }
    if (c.pot_n < 4) bad.push_back("potential: n too small");
    if (c.pot_box_x_hi <= c.pot_box_x_lo || c.pot_box_y_hi <= c.pot_box_y_lo ||
        c.pot_box_t_hi <= c.pot_box_t_lo) {
        bad.push_back("potential: empty box");
    }
    return bad;
}

GraphMeasure measure_from_config(const ExperimentConfig& c) {
    auto params = c.graph.params;
    params["theta"] = c.graph.theta;
    const IntrinsicFunction phi = builtin(c.graph.family, params);
    return build_graph_measure(phi, c.graph.y_min, c.graph.y_max, c.graph.t_min, c.graph.t_max,
                               c.graph.ny, c.graph.nt);
}

}  // namespace heis
