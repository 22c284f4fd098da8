#include "porpob/rng.hpp"

#include <cmath>
#include <numbers>

namespace porpob {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

double Rng::uniform01() {
    // 53 random mantissa bits, shifted by half an ulp so 0 is never produced.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double theta = 2.0 * std::numbers::pi * uniform01();
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    const std::uint64_t limit = -bound % bound; // 2^64 mod bound
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= limit) return x % bound;
    }
}

} // namespace porpob
