#include "heis/runners.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "heis/sio.hpp"

namespace heis {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string out_path(const ExperimentConfig& c, const std::string& name) {
    fs::create_directories(c.out_dir);
    return (fs::path(c.out_dir) / name).string();
}

void apply_threads(const ExperimentConfig& c) { set_thread_count(c.threads); }

CzKernel config_kernel(const ExperimentConfig& c) {
    std::vector<std::pair<std::string, double>> kp(c.kernel_params.begin(),
                                                   c.kernel_params.end());
    return kernel_by_name(c.kernel_name, kp);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << text;
}

}  // namespace

void require_valid(const ExperimentConfig& c) {
    const auto bad = validate_config(c);
    if (!bad.empty()) {
        std::string msg = "invalid config:";
        for (const auto& b : bad) msg += "\n  - " + b;
        throw std::invalid_argument(msg);
    }
}

RunOutcome cmd_t1(const ExperimentConfig& c) {
    require_valid(c);
    apply_threads(c);
    const GraphMeasure mu = measure_from_config(c);
    const ChristCubeTree tree = build_christ_cubes(mu, c.j_min, c.j_max);
    const CzKernel K = config_kernel(c);

    std::vector<double> eps = c.t1_eps;
    bool clamped = false;
    if (eps.empty()) {
        eps = default_eps_grid(mu.resolution);
        clamped = eps.size() < 5;
        if (eps.empty()) {
            throw std::invalid_argument("default eps sweep empty: grid resolution " +
                                        fmt_g17(mu.resolution) + " too coarse");
        }
    }
    const T1Report rep = t1_test(K, mu, tree, eps);

    std::string csv = "gen,j,cube,eps,kernel,norm2,mass,ratio,resolved\n";
    for (const auto& r : rep.rows) {
        csv += std::to_string(r.gen) + ',' + std::to_string(r.j) + ',' + std::to_string(r.cube) +
               ',' + fmt_g17(r.eps) + ',' + (r.adjoint ? "K*" : "K") + ',' + fmt_g17(r.norm2) +
               ',' + fmt_g17(r.mass) + ',' + fmt_g17(r.ratio) + ',' +
               (r.eps_resolved ? "1" : "0") + '\n';
    }
    const std::string csv_path = out_path(c, "t1_report.csv");
    write_text(csv_path, csv);

    json summary;
    summary["kernel"] = K.name;
    summary["resolution"] = mu.resolution;
    summary["eps"] = rep.eps_grid;
    summary["eps_clamped_to_resolution"] = clamped;
    json per_eps = json::array();
    for (double e : rep.eps_grid) {
        json row;
        row["eps"] = e;
        row["max_ratio"] = rep.max_ratio(e, false);
        row["max_ratio_adjoint"] = rep.max_ratio(e, true);
        row["resolved"] = e >= 4.0 * mu.resolution;
        per_eps.push_back(row);
    }
    summary["per_eps"] = per_eps;
    const double sweep = rep.sweep_factor(false);
    const double sweep_adj = rep.sweep_factor(true);
    summary["sweep_factor"] = sweep;
    summary["sweep_factor_adjoint"] = sweep_adj;
    summary["stable"] = std::isfinite(sweep) && sweep < 4.0 && std::isfinite(sweep_adj) &&
                        sweep_adj < 4.0;
    summary["seed"] = c.seed;
    const std::string json_path = out_path(c, "t1_summary.json");
    write_text(json_path, summary.dump(2) + "\n");

    RunOutcome out;
    out.files = {csv_path, json_path};
    out.summary = "t1: sweep factor " + fmt_g17(sweep) + " (adjoint " + fmt_g17(sweep_adj) +
                  "), stable=" + (summary["stable"].get<bool>() ? std::string("true")
                                                                : std::string("false"));
    return out;
}

RunOutcome cmd_ab(const ExperimentConfig& c) {
    require_valid(c);
    apply_threads(c);
    const CzKernel K = config_kernel(c);
    const BumpProfile psi;

    std::string csv = "theta,r,R,component,integral,abs_sum\n";
    double worst_rel = 0.0;
    for (double theta : c.ab_thetas) {
        const VerticalSubgroup W(theta);
        for (std::size_t i = 0; i < c.ab_r.size(); ++i) {
            for (int comp = 0; comp < K.dim; ++comp) {
                const CzKernel kc = K.dim == 1 ? K : component(K, comp);
                const AbResult res = ab_integral(kc, W, psi, c.ab_r[i], c.ab_R[i], c.ab_quadn);
                csv += fmt_g17(theta) + ',' + fmt_g17(c.ab_r[i]) + ',' + fmt_g17(c.ab_R[i]) +
                       ',' + std::to_string(comp) + ',' + fmt_g17(res.integral) + ',' +
                       fmt_g17(res.abs_sum) + '\n';
                if (res.abs_sum > 0.0) {
                    worst_rel = std::max(worst_rel, std::abs(res.integral) / res.abs_sum);
                }
            }
        }
    }
    const std::string csv_path = out_path(c, "ab_sweep.csv");
    write_text(csv_path, csv);

    json summary;
    summary["kernel"] = K.name;
    summary["worst_relative_integral"] = worst_rel;
    summary["quadn"] = c.ab_quadn;
    summary["seed"] = c.seed;
    const std::string json_path = out_path(c, "ab_summary.json");
    write_text(json_path, summary.dump(2) + "\n");

    RunOutcome out;
    out.files = {csv_path, json_path};
    out.summary = "ab: worst relative integral " + fmt_g17(worst_rel);
    return out;
}

RunOutcome cmd_curves(const ExperimentConfig& c) {
    require_valid(c);
    apply_threads(c);
    auto params = c.graph.params;
    params["theta"] = c.graph.theta;
    const IntrinsicFunction phi = builtin(c.graph.family, params);

    const Curve curve = characteristic_curve(phi, c.curve_y0, c.curve_t0, c.curve_s_min,
                                             c.curve_s_max, c.curve_step);
    const double residual = check_integral_representation(phi, curve);

    std::string csv = "s,tau,phi,grad\n";
    for (const auto& [s, tau] : curve.samples) {
        csv += fmt_g17(s) + ',' + fmt_g17(tau) + ',' + fmt_g17(phi.phi({s, tau})) + ',' +
               fmt_g17(intrinsic_gradient(phi, {s, tau})) + '\n';
    }
    const std::string csv_path = out_path(c, "curve.csv");
    write_text(csv_path, csv);

    json summary;
    summary["family"] = c.graph.family;
    summary["y0"] = c.curve_y0;
    summary["t0"] = c.curve_t0;
    summary["step"] = c.curve_step;
    summary["samples"] = curve.samples.size();
    summary["truncated"] = curve.truncated;
    summary["integral_representation_residual"] = residual;
    summary["seed"] = c.seed;
    const std::string json_path = out_path(c, "curve_summary.json");
    write_text(json_path, summary.dump(2) + "\n");

    RunOutcome out;
    out.files = {csv_path, json_path};
    out.summary = "curves: residual " + fmt_g17(residual);
    return out;
}

RunOutcome cmd_potential(const ExperimentConfig& c) {
    require_valid(c);
    apply_threads(c);
    const GraphMeasure mu = measure_from_config(c);
    std::vector<double> h(mu.size(), 1.0);

    const QuadBox box{c.pot_box_x_lo, c.pot_box_x_hi, c.pot_box_y_lo,
                      c.pot_box_y_hi, c.pot_box_t_lo, c.pot_box_t_hi};

    // residuals on a ring of probe points around the support
    Rng rng(c.seed);
    std::vector<Point> probes;
    const Point center{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < 24; ++i) {
        const double a = 2.0 * 3.14159265358979323846 *
                         (static_cast<double>(i) + 0.5) / 24.0;
        probes.push_back(mul(center, {1.5 * std::cos(a), 1.5 * std::sin(a),
                                      0.2 * std::sin(3.0 * a)}));
    }
    const ScalarField f = [&](const Point& p) { return potential(mu, h, p); };
    const auto rows = check_harmonic_off_support(f, probes, 1e-3, mu.points);

    std::string csv = "x,y,t,residual,accepted\n";
    double worst = 0.0;
    for (const auto& r : rows) {
        csv += fmt_g17(r.p.x) + ',' + fmt_g17(r.p.y) + ',' + fmt_g17(r.p.t) + ',' +
               fmt_g17(r.residual) + ',' + (r.accepted ? "1" : "0") + '\n';
        if (r.accepted) worst = std::max(worst, r.residual);
    }
    const std::string csv_path = out_path(c, "potential_residuals.csv");
    write_text(csv_path, csv);

    const std::string lattice_path = out_path(c, "potential.hpt1");
    write_potential_lattice(mu, h, box, c.pot_n, c.pot_n, c.pot_n, lattice_path);

    json summary;
    summary["family"] = c.graph.family;
    summary["nodes"] = mu.size();
    summary["max_residual"] = worst;
    summary["lattice_n"] = c.pot_n;
    summary["seed"] = c.seed;
    const std::string json_path = out_path(c, "potential_summary.json");
    write_text(json_path, summary.dump(2) + "\n");

    RunOutcome out;
    out.files = {csv_path, lattice_path, json_path};
    out.summary = "potential: max residual " + fmt_g17(worst);
    return out;
}

RunOutcome cmd_cubes(const ExperimentConfig& c) {
    require_valid(c);
    apply_threads(c);
    const GraphMeasure mu = measure_from_config(c);
    const ChristCubeTree tree = build_christ_cubes(mu, c.j_min, c.j_max);

    std::string csv = "gen,j,cube,nodes,mass,diam,inner_radius,parent\n";
    for (std::size_t g = 0; g < tree.generation_count(); ++g) {
        for (const auto& q : tree.generations[g]) {
            csv += std::to_string(g) + ',' + std::to_string(q.j) + ',' +
                   std::to_string(q.index) + ',' + std::to_string(q.node_ids.size()) + ',' +
                   fmt_g17(q.mass) + ',' + fmt_g17(q.diam) + ',' + fmt_g17(q.inner_radius) +
                   ',' + std::to_string(q.parent) + '\n';
        }
    }
    const std::string csv_path = out_path(c, "cubes.csv");
    write_text(csv_path, csv);

    json summary;
    summary["nodes"] = mu.size();
    summary["partition_C0"] = tree.partition_ok;
    summary["nesting_C1"] = tree.nesting_ok;
    summary["diam_const_C2"] = tree.diam_const;
    summary["inner_const_C3"] = tree.inner_const;
    summary["mass_lo"] = tree.mass_lo;
    summary["mass_hi"] = tree.mass_hi;
    summary["jmin"] = c.j_min;
    summary["jmax"] = c.j_max;
    summary["seed"] = c.seed;
    const std::string json_path = out_path(c, "cubes_summary.json");
    write_text(json_path, summary.dump(2) + "\n");

    RunOutcome out;
    out.files = {csv_path, json_path};
    out.summary = "cubes: A0 = " + fmt_g17(tree.diam_const) +
                  ", c0 = " + fmt_g17(tree.inner_const);
    return out;
}

}  // namespace heis
