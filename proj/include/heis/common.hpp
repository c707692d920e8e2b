#pragma once

// Shared utilities: validation, RNG, deterministic parallel reduction,
// float formatting for reproducible text output.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace heis {

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("non-finite value for ") + what);
    }
}

inline void require_positive(double v, const char* what) {
    require_finite(v, what);
    if (v <= 0.0) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

// ---------------------------------------------------------------------------
// Thread-count configuration. Resolution order: explicit set_thread_count,
// HEIS_SIO_THREADS, hardware concurrency.

int thread_count();
void set_thread_count(int n);   // n <= 0 restores the default

// ---------------------------------------------------------------------------
// RNG. splitmix64-seeded xoshiro256++ with a hand-rolled uniform so that
// streams are identical across platforms and standard libraries.

class Rng {
public:
    explicit Rng(std::uint64_t seed) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // log-uniform in [lo,hi], lo > 0
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::uint64_t state_[4]{};
};

// ---------------------------------------------------------------------------
// Deterministic reduction: the index space is cut into fixed-size blocks,
// each block is summed sequentially (Neumaier), and block sums are combined
// in block order. The result is bit-identical for any thread count.

inline constexpr std::size_t kSumBlock = 4096;

struct NeumaierAcc {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

// fn(i) -> double contribution of element i.
template <class Fn>
double parallel_sum(std::size_t n, Fn&& fn) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
    std::vector<double> block_sums(nblocks, 0.0);

    auto run_block = [&](std::size_t b) {
        const std::size_t lo = b * kSumBlock;
        const std::size_t hi = std::min(n, lo + kSumBlock);
        NeumaierAcc acc;
        for (std::size_t i = lo; i < hi; ++i) acc.add(fn(i));
        block_sums[b] = acc.value();
    };

    const int nt = thread_count();
    if (nt <= 1 || nblocks == 1) {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        const int workers = static_cast<int>(std::min<std::size_t>(nt, nblocks));
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t b = static_cast<std::size_t>(w); b < nblocks;
                     b += static_cast<std::size_t>(workers)) {
                    run_block(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    NeumaierAcc total;
    for (double s : block_sums) total.add(s);
    return total.value();
}

// Parallel loop over [0,n) in fixed blocks; fn(i) has no return value and
// must only write to per-index slots.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    const int nt = thread_count();
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<std::size_t>(nt, nblocks));
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t b = static_cast<std::size_t>(w); b < nblocks;
                 b += static_cast<std::size_t>(workers)) {
                const std::size_t lo = b * kSumBlock;
                const std::size_t hi = std::min(n, lo + kSumBlock);
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

// 17-significant-digit formatting; round-trips doubles exactly.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_slope needs >= 2 matched samples");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace heis
