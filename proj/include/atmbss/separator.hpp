#pragma once

#include <utility>

#include "atmbss/errors.hpp"
#include "atmbss/signal.hpp"

namespace atmbss {

// Recurrent separating structure
//   y1 = x1 - w12*y2^k,  y2 = x2 - w21*y1^(1/k)
// solved per sample by synchronous fixed-point iteration.
struct SeparatorCoeffs {
    double w12 = 0.0;
    double w21 = 0.0;
    double k = 1.0;
};

struct FixedPointConfig {
    double tol = 1e-12;  // max-norm residual of the converged-state equations
    int max_iter = 500;
};

struct JacobianPartials {
    double dw12;  // dJ/dw12 at fixed y
    double dw21;  // dJ/dw21 at fixed y
    double dy1;   // dJ/dy1
    double dy2;   // dJ/dy2
};

// Total derivatives dy_i/dw_kl of the converged output w.r.t. the coefficients.
struct SensitivityBundle {
    double dy1_dw12;
    double dy2_dw12;
    double dy1_dw21;
    double dy2_dw21;
};

// Diagnostics of a batched solve.
struct SolveStats {
    int max_iterations = 0;      // worst sample
    double max_residual = 0.0;   // worst final residual
};

// One synchronous update of both outputs.
std::pair<double, double> recurrence_step(double y1, double y2, double x1, double x2,
                                          const SeparatorCoeffs& w);

std::pair<double, double> fixed_point_solve(double x1, double x2, const SeparatorCoeffs& w,
                                            const FixedPointConfig& cfg = {},
                                            int* iterations = nullptr);

SignalBatch fixed_point_solve(const SignalBatch& x, const SeparatorCoeffs& w,
                              const FixedPointConfig& cfg = {}, SolveStats* stats = nullptr);

// g = w12*w21*y1^(1/k-1)*y2^(k-1); |g| < 1 is the working contraction criterion.
double loop_gain(double y1, double y2, const SeparatorCoeffs& w);

// J = 1/(1 - g), sign preserved (callers take |J| where needed).
double jacobian(double y1, double y2, const SeparatorCoeffs& w);

JacobianPartials jacobian_partials(double y1, double y2, const SeparatorCoeffs& w);

SensitivityBundle output_sensitivities(double y1, double y2, const SeparatorCoeffs& w);

// dJ/dw = ∂J/∂w + (∂J/∂y1)(dy1/dw) + (∂J/∂y2)(dy2/dw), for w12 and w21.
std::pair<double, double> jacobian_total_derivatives(double y1, double y2,
                                                     const SeparatorCoeffs& w);

}  // namespace atmbss
