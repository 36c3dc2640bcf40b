#pragma once

#include <array>
#include <vector>

#include "atmbss/signal.hpp"

namespace atmbss {

// Per-channel Gaussian kernel density estimate with Silverman bandwidth.
// The score is psi(u) = -d ln f(u)/du evaluated on the estimated density.
struct ChannelDensity {
    std::vector<double> samples;
    double h = 0.0;        // kernel bandwidth
    double eps = 1e-12;    // density floor before logs/ratios
};

struct ScoreModel {
    std::array<ChannelDensity, 2> ch;
};

double silverman_bandwidth(const std::vector<double>& samples);

ScoreModel fit_score_model(const SignalBatch& outputs);

double density(const ScoreModel& model, int channel, double u);

double score(const ScoreModel& model, int channel, double u);

// Vasicek m-spacing estimator, m = round(sqrt(n)), in nats. Used for
// monitoring the criterion value, never inside the gradient.
double entropy(const std::vector<double>& samples);

}  // namespace atmbss
