#pragma once

#include <string>

#include "atmbss/signal.hpp"
#include "atmbss/trainer.hpp"

namespace atmbss::io {

// 17 significant digits: doubles round-trip losslessly through the text form.
std::string format_double(double v);

// Signal CSV: header `ch1,ch2`, one pair per row, '.' decimal separator.
void write_signal_csv(const std::string& path, const SignalBatch& batch);
SignalBatch read_signal_csv(const std::string& path);

// Trajectory CSV: header
// `epoch,w12,w21,C,grad_norm_corrected,grad_norm_naive,stop_reason`;
// stop_reason is empty on all rows except the final one.
void write_trajectory_csv(const std::string& path, const TrainTrajectory& traj);

}  // namespace atmbss::io
