#include "atmbss/criterion.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace atmbss {

namespace {

constexpr std::size_t min_samples = 30;

void check_batch_size(const SignalBatch& x) {
    if (x.ch1.size() != x.ch2.size()) throw LengthMismatch("channel lengths differ");
    if (x.size() < min_samples)
        throw TooFewSamples("criterion needs >= " + std::to_string(min_samples) +
                            " samples, got " + std::to_string(x.size()));
}

SeparatorCoeffs shifted(const SeparatorCoeffs& w, Coeff which, double delta) {
    SeparatorCoeffs out = w;
    (which == Coeff::w12 ? out.w12 : out.w21) += delta;
    return out;
}

double mean_ln_abs_jacobian(const SignalBatch& y, const SeparatorCoeffs& w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        acc += std::log(std::abs(jacobian(y.ch1[i], y.ch2[i], w)));
    return acc / static_cast<double>(y.size());
}

std::string kv(const char* name, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s=%.17g\n", name, v);
    return buf;
}

}  // namespace

std::string GradientReport::to_text() const {
    std::string out;
    const GradientTerms* terms[2] = {&w12, &w21};
    const char* tag[2] = {"w12", "w21"};
    for (int i = 0; i < 2; ++i) {
        const std::string p(tag[i]);
        out += kv((p + ".entropy_term").c_str(), terms[i]->entropy_term);
        out += kv((p + ".jacobian_term").c_str(), terms[i]->jacobian_term);
        out += kv((p + ".corrected_gradient").c_str(), terms[i]->corrected_gradient);
        out += kv((p + ".naive_jacobian_term").c_str(), terms[i]->naive_jacobian_term);
        out += kv((p + ".naive_gradient").c_str(), terms[i]->naive_gradient);
    }
    out += kv("mean_ln_abs_jacobian", mean_ln_abs_jacobian);
    out += kv("entropy_ch1", entropy_ch1);
    out += kv("entropy_ch2", entropy_ch2);
    out += std::string("jacobian_sign_flip=") + (jacobian_sign_flip ? "true" : "false") + "\n";
    return out;
}

double criterion_value(const SignalBatch& outputs, const SeparatorCoeffs& w) {
    check_batch_size(outputs);
    return entropy(outputs.ch1) + entropy(outputs.ch2) - mean_ln_abs_jacobian(outputs, w);
}

GradientReport gradient(const SignalBatch& x, const SeparatorCoeffs& w,
                        const FixedPointConfig& cfg) {
    check_batch_size(x);
    SolveStats stats;
    const SignalBatch y = fixed_point_solve(x, w, cfg, &stats);
    const ScoreModel model = fit_score_model(y);
    const std::size_t n = y.size();

    double ent12 = 0.0, ent21 = 0.0;
    double jac12 = 0.0, jac21 = 0.0;
    double naive12 = 0.0, naive21 = 0.0;
    double ln_j = 0.0;
    bool sign_flip = false;
    int first_sign = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const double y1 = y.ch1[i], y2 = y.ch2[i];
        const double psi1 = score(model, 0, y1);
        const double psi2 = score(model, 1, y2);
        const SensitivityBundle s = output_sensitivities(y1, y2, w);
        const JacobianPartials p = jacobian_partials(y1, y2, w);
        const auto [tot12, tot21] = jacobian_total_derivatives(y1, y2, w);
        const double j = jacobian(y1, y2, w);

        ent12 += psi1 * s.dy1_dw12 + psi2 * s.dy2_dw12;
        ent21 += psi1 * s.dy1_dw21 + psi2 * s.dy2_dw21;
        jac12 += tot12 / j;
        jac21 += tot21 / j;
        naive12 += p.dw12 / j;
        naive21 += p.dw21 / j;
        ln_j += std::log(std::abs(j));

        const int sign = (j > 0.0) ? 1 : -1;
        if (first_sign == 0)
            first_sign = sign;
        else if (sign != first_sign)
            sign_flip = true;  // domain likely left; diagnostic only
    }

    const double dn = static_cast<double>(n);
    GradientReport r;
    r.w12.entropy_term = ent12 / dn;
    r.w12.jacobian_term = jac12 / dn;
    r.w12.naive_jacobian_term = naive12 / dn;
    r.w21.entropy_term = ent21 / dn;
    r.w21.jacobian_term = jac21 / dn;
    r.w21.naive_jacobian_term = naive21 / dn;
    for (GradientTerms* t : {&r.w12, &r.w21}) {
        t->corrected_gradient = t->entropy_term - t->jacobian_term;
        t->naive_gradient = t->entropy_term - t->naive_jacobian_term;
    }
    r.mean_ln_abs_jacobian = ln_j / dn;
    r.entropy_ch1 = entropy(y.ch1);
    r.entropy_ch2 = entropy(y.ch2);
    r.jacobian_sign_flip = sign_flip;
    r.solver = stats;
    return r;
}

double fd_oracle_jacobian_term(const SignalBatch& x, const SeparatorCoeffs& w, Coeff which,
                               double step, const FixedPointConfig& cfg) {
    if (!(step > 0.0)) throw InvalidConfig("finite-difference step must be > 0");
    check_batch_size(x);
    const SeparatorCoeffs wp = shifted(w, which, step);
    const SeparatorCoeffs wm = shifted(w, which, -step);
    const double fp = mean_ln_abs_jacobian(fixed_point_solve(x, wp, cfg), wp);
    const double fm = mean_ln_abs_jacobian(fixed_point_solve(x, wm, cfg), wm);
    return (fp - fm) / (2.0 * step);
}

double fd_oracle_entropy_term(const SignalBatch& x, const SeparatorCoeffs& w, Coeff which,
                              double step, const FixedPointConfig& cfg) {
    if (!(step > 0.0)) throw InvalidConfig("finite-difference step must be > 0");
    check_batch_size(x);
    const SignalBatch yp = fixed_point_solve(x, shifted(w, which, step), cfg);
    const SignalBatch ym = fixed_point_solve(x, shifted(w, which, -step), cfg);
    const double hp = entropy(yp.ch1) + entropy(yp.ch2);
    const double hm = entropy(ym.ch1) + entropy(ym.ch2);
    return (hp - hm) / (2.0 * step);
}

}  // namespace atmbss
