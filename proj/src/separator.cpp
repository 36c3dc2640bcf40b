#include "atmbss/separator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace atmbss {

namespace {

void check_coeffs(const SeparatorCoeffs& w) {
    if (!(w.k > 0.0) || !std::isfinite(w.k))
        throw InvalidConfig("exponent k must be finite and > 0, got " + std::to_string(w.k));
}

void check_iterate_domain(double y1, double y2, const SeparatorCoeffs& w) {
    if (w.k == 1.0) return;
    if (!(y1 > 0.0) || !(y2 > 0.0))
        throw NonPositiveIterate("iterate (" + std::to_string(y1) + ", " + std::to_string(y2) +
                                 ") left the domain of the fractional powers (k=" +
                                 std::to_string(w.k) + ")");
}

// denominator of J and of every derivative formula; singular when g -> 1
double denom(double y1, double y2, const SeparatorCoeffs& w) {
    const double g = loop_gain(y1, y2, w);
    const double d = 1.0 - g;
    if (std::abs(d) < 1e-12)
        throw SingularJacobian("loop gain " + std::to_string(g) + " within 1e-12 of 1");
    return d;
}

}  // namespace

std::pair<double, double> recurrence_step(double y1, double y2, double x1, double x2,
                                          const SeparatorCoeffs& w) {
    check_coeffs(w);
    check_iterate_domain(y1, y2, w);
    if (w.k == 1.0) return {x1 - w.w12 * y2, x2 - w.w21 * y1};
    return {x1 - w.w12 * std::pow(y2, w.k), x2 - w.w21 * std::pow(y1, 1.0 / w.k)};
}

std::pair<double, double> fixed_point_solve(double x1, double x2, const SeparatorCoeffs& w,
                                            const FixedPointConfig& cfg, int* iterations) {
    check_coeffs(w);
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
        throw InvalidConfig("fixed-point config needs tol > 0 and max_iter >= 1");

    // start from the zero-coupling solution y = x
    double y1 = x1, y2 = x2;
    double best_y1 = y1, best_y2 = y2;
    double best_res = std::numeric_limits<double>::infinity();
    int used = 0;

    for (int it = 0; it < cfg.max_iter; ++it) {
        const auto [t1, t2] = recurrence_step(y1, y2, x1, x2, w);
        const double res = std::max(std::abs(y1 - t1), std::abs(y2 - t2));
        used = it;
        if (res < best_res) {
            best_res = res;
            best_y1 = y1;
            best_y2 = y2;
        } else if (best_res <= cfg.tol) {
            // converged and no longer improving: the best iterate is as good
            // as this sequence gets in double precision
            break;
        }
        if (res > 10.0 * best_res && res > cfg.tol)
            throw DivergenceDetected("residual " + std::to_string(res) + " exceeds 10x its minimum " +
                                     std::to_string(best_res) + " after " + std::to_string(it) +
                                     " iterations");
        y1 = t1;
        y2 = t2;
    }
    if (iterations) *iterations = used;
    if (best_res > cfg.tol)
        throw NoConvergence("residual " + std::to_string(best_res) + " after " +
                            std::to_string(cfg.max_iter) + " iterations, last iterate (" +
                            std::to_string(best_y1) + ", " + std::to_string(best_y2) + ")");
    return {best_y1, best_y2};
}

SignalBatch fixed_point_solve(const SignalBatch& x, const SeparatorCoeffs& w,
                              const FixedPointConfig& cfg, SolveStats* stats) {
    if (x.ch1.size() != x.ch2.size()) throw LengthMismatch("channel lengths differ");
    const std::size_t n = x.size();
    SignalBatch y;
    y.ch1.resize(n);
    y.ch2.resize(n);
    SolveStats st;
    for (std::size_t i = 0; i < n; ++i) {
        int iters = 0;
        try {
            const auto [y1, y2] = fixed_point_solve(x.ch1[i], x.ch2[i], w, cfg, &iters);
            y.ch1[i] = y1;
            y.ch2[i] = y2;
        } catch (const NoConvergence& e) {
            throw NoConvergence("sample " + std::to_string(i) + ": " + detail_of(e));
        } catch (const DivergenceDetected& e) {
            throw DivergenceDetected("sample " + std::to_string(i) + ": " + detail_of(e));
        } catch (const NonPositiveIterate& e) {
            throw NonPositiveIterate("sample " + std::to_string(i) + ": " + detail_of(e));
        }
        const auto [t1, t2] = recurrence_step(y.ch1[i], y.ch2[i], x.ch1[i], x.ch2[i], w);
        const double res = std::max(std::abs(y.ch1[i] - t1), std::abs(y.ch2[i] - t2));
        st.max_iterations = std::max(st.max_iterations, iters);
        st.max_residual = std::max(st.max_residual, res);
    }
    y.positive = (w.k != 1.0);  // solve would have thrown on a nonpositive iterate
    if (stats) *stats = st;
    return y;
}

double loop_gain(double y1, double y2, const SeparatorCoeffs& w) {
    check_coeffs(w);
    if (w.k == 1.0) return w.w12 * w.w21;  // exponents vanish, y drops out
    check_iterate_domain(y1, y2, w);
    return w.w12 * w.w21 * std::pow(y1, 1.0 / w.k - 1.0) * std::pow(y2, w.k - 1.0);
}

double jacobian(double y1, double y2, const SeparatorCoeffs& w) {
    return 1.0 / denom(y1, y2, w);
}

JacobianPartials jacobian_partials(double y1, double y2, const SeparatorCoeffs& w) {
    const double d = denom(y1, y2, w);
    const double d2 = d * d;
    JacobianPartials p{};
    if (w.k == 1.0) {
        // common factor y1^(1/k-1)*y2^(k-1) is exactly 1 and the y-dependence
        // of the loop gain vanishes
        p.dw12 = w.w21 / d2;
        p.dw21 = w.w12 / d2;
        p.dy1 = 0.0;
        p.dy2 = 0.0;
        return p;
    }
    const double inv_k = 1.0 / w.k;
    const double common = std::pow(y1, inv_k - 1.0) * std::pow(y2, w.k - 1.0);
    p.dw12 = w.w21 * common / d2;
    p.dw21 = w.w12 * common / d2;
    p.dy1 = w.w12 * w.w21 * (inv_k - 1.0) * std::pow(y1, inv_k - 2.0) * std::pow(y2, w.k - 1.0) / d2;
    p.dy2 = w.w12 * w.w21 * std::pow(y1, inv_k - 1.0) * (w.k - 1.0) * std::pow(y2, w.k - 2.0) / d2;
    return p;
}

SensitivityBundle output_sensitivities(double y1, double y2, const SeparatorCoeffs& w) {
    const double d = denom(y1, y2, w);
    SensitivityBundle s{};
    if (w.k == 1.0) {
        s.dy1_dw12 = -y2 / d;
        s.dy2_dw12 = w.w21 * y2 / d;
        s.dy1_dw21 = w.w12 * y1 / d;
        s.dy2_dw21 = -y1 / d;
        return s;
    }
    const double inv_k = 1.0 / w.k;
    s.dy1_dw12 = -std::pow(y2, w.k) / d;
    s.dy2_dw12 = w.w21 * inv_k * std::pow(y1, inv_k - 1.0) * std::pow(y2, w.k) / d;
    s.dy1_dw21 = w.w12 * w.k * std::pow(y1, inv_k) * std::pow(y2, w.k - 1.0) / d;
    s.dy2_dw21 = -std::pow(y1, inv_k) / d;
    return s;
}

std::pair<double, double> jacobian_total_derivatives(double y1, double y2,
                                                     const SeparatorCoeffs& w) {
    const JacobianPartials p = jacobian_partials(y1, y2, w);
    const SensitivityBundle s = output_sensitivities(y1, y2, w);
    const double d12 = p.dw12 + p.dy1 * s.dy1_dw12 + p.dy2 * s.dy2_dw12;
    const double d21 = p.dw21 + p.dy1 * s.dy1_dw21 + p.dy2 * s.dy2_dw21;
    return {d12, d21};
}

}  // namespace atmbss
