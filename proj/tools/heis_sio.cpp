// heis-sio: batch driver for singular-integral experiments on intrinsic
// graphs in the Heisenberg group.

#include <cstdio>
#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "heis/runners.hpp"
#include "heis/verify.hpp"

namespace {

int run_verify(const std::string& suite, std::uint64_t seed) {
    if (!heis::known_suite(suite)) {
        std::cerr << "unknown suite '" << suite
                  << "' (expected core|kernels|graphs|cubes|sio|removability|all)\n";
        return 2;
    }
    const auto results = heis::verify_suite(suite, seed);
    std::size_t failed = 0;
    std::size_t width = 4;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        if (!r.pass) ++failed;
        std::printf("%s  %-*s  %s\n", r.pass ? "PASS" : "FAIL", static_cast<int>(width),
                    r.name.c_str(), r.detail.c_str());
    }
    std::printf("%zu/%zu checks passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"singular-integral experiments on intrinsic graphs in the Heisenberg group"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool seed_given = false;
    int threads_override = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file")->required();
        sub->add_option("--out", out_override, "output directory override");
        sub->add_option("--seed", seed_override, "seed override")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--threads", threads_override, "worker thread count");
    };

    std::string verify_suite_name = "all";
    CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("suite", verify_suite_name, "core|kernels|graphs|cubes|sio|removability|all");
    std::uint64_t verify_seed = 1;
    verify->add_option("--seed", verify_seed, "rng seed");
    int verify_threads = 0;
    verify->add_option("--threads", verify_threads, "worker thread count");

    CLI::App* t1 = app.add_subcommand("t1", "T1 testing sweep");
    CLI::App* ab = app.add_subcommand("ab", "annular cancellation sweep");
    CLI::App* curves = app.add_subcommand("curves", "characteristic curve run");
    CLI::App* potential = app.add_subcommand("potential", "graph potential diagnostics");
    CLI::App* cubes = app.add_subcommand("cubes", "Christ cube construction");
    for (CLI::App* sub : {t1, ab, curves, potential, cubes}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            heis::set_thread_count(verify_threads);
            return run_verify(verify_suite_name, verify_seed);
        }

        heis::ExperimentConfig cfg = heis::load_config(config_path);
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (seed_given) {
            cfg.seed = seed_override;
            cfg.has_seed = true;
        }
        if (threads_override > 0) cfg.threads = threads_override;

        heis::RunOutcome outcome;
        if (t1->parsed()) outcome = heis::cmd_t1(cfg);
        else if (ab->parsed()) outcome = heis::cmd_ab(cfg);
        else if (curves->parsed()) outcome = heis::cmd_curves(cfg);
        else if (potential->parsed()) outcome = heis::cmd_potential(cfg);
        else if (cubes->parsed()) outcome = heis::cmd_cubes(cfg);

        std::cout << outcome.summary << "\n";
        for (const auto& f : outcome.files) std::cout << "wrote " << f << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
