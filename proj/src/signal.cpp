#include "atmbss/signal.hpp"

#include <cmath>
#include <string>

#include "atmbss/rng.hpp"

namespace atmbss {

namespace {

void check_exponent(double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw InvalidConfig("exponent k must be finite and > 0, got " + std::to_string(k));
}

}  // namespace

SignalBatch make_batch(std::vector<double> ch1, std::vector<double> ch2) {
    if (ch1.size() != ch2.size())
        throw LengthMismatch("channel lengths differ: " + std::to_string(ch1.size()) +
                             " vs " + std::to_string(ch2.size()));
    if (ch1.empty()) throw LengthMismatch("batch must hold at least one sample");
    return SignalBatch{std::move(ch1), std::move(ch2), false};
}

SignalBatch validate_domain(SignalBatch batch, double k) {
    check_exponent(k);
    if (batch.ch1.size() != batch.ch2.size())
        throw LengthMismatch("channel lengths differ");
    if (k == 1.0) return batch;  // linear case is power-free
    const std::vector<double>* chs[2] = {&batch.ch1, &batch.ch2};
    for (int c = 0; c < 2; ++c) {
        const auto& ch = *chs[c];
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (!(ch[i] > 0.0))
                throw NonPositiveSample("ch" + std::to_string(c + 1) + "[" + std::to_string(i) +
                                        "] = " + std::to_string(ch[i]) +
                                        " (strict positivity required for k != 1)");
        }
    }
    batch.positive = true;
    return batch;
}

SignalBatch mix(const SignalBatch& sources, const MixingParams& params) {
    check_exponent(params.k);
    if (!std::isfinite(params.a12) || !std::isfinite(params.a21))
        throw InvalidConfig("mixing couplings must be finite");
    SignalBatch s = sources;
    if (params.k != 1.0 && !s.positive) s = validate_domain(std::move(s), params.k);

    const std::size_t n = s.size();
    SignalBatch x;
    x.ch1.resize(n);
    x.ch2.resize(n);
    x.positive = false;
    const double inv_k = 1.0 / params.k;
    for (std::size_t i = 0; i < n; ++i) {
        if (params.k == 1.0) {
            x.ch1[i] = s.ch1[i] + params.a12 * s.ch2[i];
            x.ch2[i] = s.ch2[i] + params.a21 * s.ch1[i];
        } else {
            x.ch1[i] = s.ch1[i] + params.a12 * std::pow(s.ch2[i], params.k);
            x.ch2[i] = s.ch2[i] + params.a21 * std::pow(s.ch1[i], inv_k);
        }
    }
    return x;
}

SignalBatch generate_sources(std::size_t n, const SourceSpec& spec, std::uint64_t seed) {
    if (n < 1) throw InvalidConfig("sample count must be >= 1");
    if (spec.dist == SourceSpec::Dist::uniform) {
        if (!(spec.p1 > 0.0) || !(spec.p2 > spec.p1))
            throw InvalidDistribution("uniform needs 0 < lo < hi, got lo=" +
                                      std::to_string(spec.p1) + " hi=" + std::to_string(spec.p2));
    } else {
        if (!std::isfinite(spec.p1) || !(spec.p2 > 0.0))
            throw InvalidDistribution("lognormal needs finite mu and sigma > 0");
    }

    Rng rng(seed);
    SignalBatch out;
    out.ch1.resize(n);
    out.ch2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.dist == SourceSpec::Dist::uniform) {
            out.ch1[i] = rng.uniform(spec.p1, spec.p2);
            out.ch2[i] = rng.uniform(spec.p1, spec.p2);
        } else {
            out.ch1[i] = rng.lognormal(spec.p1, spec.p2);
            out.ch2[i] = rng.lognormal(spec.p1, spec.p2);
        }
    }
    out.positive = true;  // both supported distributions are strictly positive
    return out;
}

}  // namespace atmbss
