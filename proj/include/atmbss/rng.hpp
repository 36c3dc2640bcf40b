#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace atmbss {

// Seeded draws must be bit-stable across platforms: mt19937_64 has a
// standardized output sequence, and the u64 -> double mappings below are
// explicit instead of going through std::uniform_real_distribution (whose
// algorithm is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform on [0,1), top 53 bits of the engine output
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform on (0,1], safe under log()
    double next_unit_pos() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Box-Muller, one variate per call (two engine draws)
    double normal() {
        const double u1 = next_unit_pos();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

private:
    static constexpr double two_pi = 6.283185307179586476925286766559;
    std::mt19937_64 engine_;
};

}  // namespace atmbss
