#include "atmbss/score.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace atmbss {

namespace {

constexpr double inv_sqrt_2pi = 0.39894228040143267794;

double sample_sd(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1.0));
}

const ChannelDensity& channel_of(const ScoreModel& model, int channel) {
    if (channel != 0 && channel != 1)
        throw InvalidConfig("channel index must be 0 or 1, got " + std::to_string(channel));
    return model.ch[static_cast<std::size_t>(channel)];
}

}  // namespace

double silverman_bandwidth(const std::vector<double>& samples) {
    if (samples.size() < 2)
        throw TooFewSamples("bandwidth needs >= 2 samples, got " + std::to_string(samples.size()));
    const double sd = sample_sd(samples);
    if (sd == 0.0) throw ZeroVariance("degenerate channel: all samples equal");
    return 1.06 * sd * std::pow(static_cast<double>(samples.size()), -0.2);
}

ScoreModel fit_score_model(const SignalBatch& outputs) {
    if (outputs.ch1.size() != outputs.ch2.size()) throw LengthMismatch("channel lengths differ");
    if (outputs.size() < 30)
        throw TooFewSamples("score model needs >= 30 samples, got " + std::to_string(outputs.size()));
    ScoreModel model;
    model.ch[0] = ChannelDensity{outputs.ch1, silverman_bandwidth(outputs.ch1), 1e-12};
    model.ch[1] = ChannelDensity{outputs.ch2, silverman_bandwidth(outputs.ch2), 1e-12};
    return model;
}

double density(const ScoreModel& model, int channel, double u) {
    const ChannelDensity& c = channel_of(model, channel);
    const double n = static_cast<double>(c.samples.size());
    double f = 0.0;
    for (double x : c.samples) {
        const double t = (u - x) / c.h;
        f += std::exp(-0.5 * t * t);
    }
    return f * inv_sqrt_2pi / (n * c.h);
}

double score(const ScoreModel& model, int channel, double u) {
    const ChannelDensity& c = channel_of(model, channel);
    const double n = static_cast<double>(c.samples.size());
    double f = 0.0;   // kernel density
    double fp = 0.0;  // its derivative
    for (double x : c.samples) {
        const double t = (u - x) / c.h;
        const double k = std::exp(-0.5 * t * t);
        f += k;
        fp += -t * k;  // d/du exp(-t^2/2) = -t/h * exp(..), the 1/h factored out
    }
    f *= inv_sqrt_2pi / (n * c.h);
    fp *= inv_sqrt_2pi / (n * c.h * c.h);
    return -fp / std::max(f, c.eps);
}

double entropy(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < 30) throw TooFewSamples("entropy needs >= 30 samples, got " + std::to_string(n));
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const long m = std::lround(std::sqrt(static_cast<double>(n)));
    const double scale = static_cast<double>(n) / (2.0 * static_cast<double>(m));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t hi = std::min(i + static_cast<std::size_t>(m), n - 1);
        const std::size_t lo = static_cast<std::size_t>(
            std::max<long>(0, static_cast<long>(i) - m));
        acc += std::log(scale * (sorted[hi] - sorted[lo]));
    }
    return acc / static_cast<double>(n);
}

}  // namespace atmbss
