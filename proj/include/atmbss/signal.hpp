#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "atmbss/errors.hpp"

namespace atmbss {

// Two-channel sample batch. `positive` records that strict positivity has
// been verified; the fractional powers of the mixture need it when k != 1.
struct SignalBatch {
    std::vector<double> ch1;
    std::vector<double> ch2;
    bool positive = false;

    std::size_t size() const { return ch1.size(); }
};

// Builds a batch, enforcing equal channel lengths >= 1.
SignalBatch make_batch(std::vector<double> ch1, std::vector<double> ch2);

// x1 = s1 + a12*s2^k,  x2 = s2 + a21*s1^(1/k)
struct MixingParams {
    double a12 = 0.0;
    double a21 = 0.0;
    double k = 1.0;
};

// Returns the batch with positivity asserted (strict, both channels) when
// k != 1; the linear case needs no domain restriction.
SignalBatch validate_domain(SignalBatch batch, double k);

SignalBatch mix(const SignalBatch& sources, const MixingParams& params);

struct SourceSpec {
    enum class Dist { uniform, lognormal };
    Dist dist = Dist::uniform;
    double p1 = 0.1;  // uniform: lo, lognormal: mu
    double p2 = 1.0;  // uniform: hi, lognormal: sigma

    static SourceSpec uniform(double lo, double hi) {
        return {Dist::uniform, lo, hi};
    }
    static SourceSpec lognormal(double mu, double sigma) {
        return {Dist::lognormal, mu, sigma};
    }
};

// Two i.i.d. channels, statistically independent, reproducible under seed.
SignalBatch generate_sources(std::size_t n, const SourceSpec& spec, std::uint64_t seed);

}  // namespace atmbss
