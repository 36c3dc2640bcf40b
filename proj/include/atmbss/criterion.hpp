#pragma once

#include <string>

#include "atmbss/score.hpp"
#include "atmbss/separator.hpp"

namespace atmbss {

enum class Coeff { w12, w21 };

// Per-coefficient pieces of dC/dw. The corrected form uses the total
// derivative dJ/dw (output dependence included); the naive form keeps only
// the partial ∂J/∂w.
struct GradientTerms {
    double entropy_term = 0.0;         // sum_i mean{ psi_i(y_i) * dy_i/dw }
    double jacobian_term = 0.0;        // mean{ (1/J) * dJ/dw }, total form
    double corrected_gradient = 0.0;   // entropy_term - jacobian_term
    double naive_jacobian_term = 0.0;  // mean{ (1/J) * ∂J/∂w }
    double naive_gradient = 0.0;       // entropy_term - naive_jacobian_term
};

struct GradientReport {
    GradientTerms w12;
    GradientTerms w21;
    // diagnostics
    double mean_ln_abs_jacobian = 0.0;
    double entropy_ch1 = 0.0;
    double entropy_ch2 = 0.0;
    bool jacobian_sign_flip = false;  // J changed sign across the batch
    SolveStats solver;

    // Flat `name=value` lines, one per field.
    std::string to_text() const;
};

// C(Y) = sum_i H(Y_i) - E{ln|J|}, up to a constant in w; monitoring only.
// `outputs` must already be the converged outputs for w.
double criterion_value(const SignalBatch& outputs, const SeparatorCoeffs& w);

GradientReport gradient(const SignalBatch& x, const SeparatorCoeffs& w,
                        const FixedPointConfig& cfg = {});

// Central difference of mean ln|J(y(w), w)| in the chosen coefficient,
// re-solving the fixed points at w +- step.
double fd_oracle_jacobian_term(const SignalBatch& x, const SeparatorCoeffs& w, Coeff which,
                               double step = 1e-6, const FixedPointConfig& cfg = {});

// Central difference of sum_i H_vasicek(y_i(w)) in the chosen coefficient.
double fd_oracle_entropy_term(const SignalBatch& x, const SeparatorCoeffs& w, Coeff which,
                              double step = 1e-6, const FixedPointConfig& cfg = {});

}  // namespace atmbss
