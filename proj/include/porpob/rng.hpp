#pragma once

// Reproducible random streams.
//
// Every stream is a std::mt19937_64 whose seed is derived from a master seed
// and a stream index by SplitMix64 mixing, so replicate r of a run seeded with
// s draws from derive_seed(s, r) no matter which thread evaluates it.
// Continuous variates are built from raw 64-bit output here rather than through
// <random> distributions, whose algorithms differ between standard libraries.

#include <cstdint>
#include <random>

namespace porpob {

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on the open interval (0, 1).
    double uniform01();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Standard normal via the Box-Muller transform.
    double standard_normal();
    /// Uniform integer in [0, bound), bound > 0, without modulo bias.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

} // namespace porpob
