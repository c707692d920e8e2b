#pragma once

// Named invariant suites behind `heis-sio verify`. Each check is seeded and
// deterministic; details carry the measured statistic.

#include <cstdint>
#include <string>
#include <vector>

namespace heis {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> verify_core(std::uint64_t seed);
std::vector<CheckResult> verify_kernels(std::uint64_t seed);
std::vector<CheckResult> verify_graphs(std::uint64_t seed);
std::vector<CheckResult> verify_cubes(std::uint64_t seed);
std::vector<CheckResult> verify_sio(std::uint64_t seed);
std::vector<CheckResult> verify_removability(std::uint64_t seed);

// suite may be one of the module names or "all"
std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed);
bool known_suite(const std::string& suite);

}  // namespace heis
