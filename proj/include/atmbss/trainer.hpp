#pragma once

#include <array>
#include <string>
#include <vector>

#include "atmbss/criterion.hpp"

namespace atmbss {

enum class GradientVariant { corrected, naive };

struct TrainConfig {
    double step_size = 0.05;
    int max_epochs = 500;
    double grad_tol = 0.02;
    double init_w12 = 0.0;
    double init_w21 = 0.0;
    GradientVariant variant = GradientVariant::corrected;
    double k = 1.0;  // exponent shared with the mixing side
    FixedPointConfig solver;
};

enum class StopReason { converged, max_epochs, domain_error };

const char* to_string(StopReason reason);

struct EpochRecord {
    int epoch = 0;
    double w12 = 0.0;
    double w21 = 0.0;
    double criterion = 0.0;            // C at (w12, w21)
    double grad_norm_corrected = 0.0;  // max-norm
    double grad_norm_naive = 0.0;
    int solver_iterations = 0;         // worst sample in this epoch's solve
};

struct TrainTrajectory {
    std::vector<EpochRecord> records;
    StopReason stop = StopReason::max_epochs;
    std::string stop_detail;

    double final_w12() const { return records.back().w12; }
    double final_w21() const { return records.back().w21; }
};

// Plain fixed-step gradient descent on the selected gradient variant,
// starting from init_w; stops on gradient max-norm <= grad_tol. A solver
// failure at a proposed step halves the step (up to 5 times) before the
// trajectory is truncated with stop = domain_error.
TrainTrajectory train(const SignalBatch& x, const TrainConfig& cfg);

struct SeparationMetrics {
    std::array<double, 2> sir_db;              // per channel, capped at +120
    std::array<std::array<double, 2>, 2> corr; // corr[i][j] = corr(y_i, s_j)
};

// SIR_i = 10*log10( sum s_i^2 / sum (c_i*y_i - s_i)^2 ), c_i least-squares.
SeparationMetrics evaluate_separation(const SignalBatch& y, const SignalBatch& s);

}  // namespace atmbss
