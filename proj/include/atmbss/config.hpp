#pragma once

#include <cstdint>
#include <string>

#include "atmbss/signal.hpp"
#include "atmbss/separator.hpp"
#include "atmbss/trainer.hpp"

namespace atmbss {

// Flat dotted-key experiment configuration. Text form: one `key=value` per
// line, `#` comments and blank lines allowed, unknown keys rejected.
struct ExperimentConfig {
    // source.*
    SourceSpec source = SourceSpec::lognormal(-0.5, 0.15);
    std::size_t n = 2000;
    std::uint64_t seed = 7;

    // mixing.*
    MixingParams mixing{0.1, 0.2, 2.0};

    // solver.*
    FixedPointConfig solver{};

    // score.*
    std::string bandwidth_rule = "silverman";
    double score_epsilon = 1e-12;

    // train.*
    double train_step = 0.05;
    int train_epochs = 500;
    double train_grad_tol = 0.02;
    double train_init_w12 = 0.0;
    double train_init_w21 = 0.0;
    GradientVariant train_variant = GradientVariant::corrected;

    // gradcheck.* (PASS thresholds and probe step of the grad-check command)
    double gradcheck_fd_step = 1e-6;
    double gradcheck_jacobian_rel_tol = 1e-4;
    double gradcheck_entropy_abs_tol = 0.1;
    double gradcheck_entropy_rel_tol = 0.1;

    // output.*
    std::string output_dir = ".";
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace atmbss
