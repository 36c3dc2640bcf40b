#include "atmbss/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace atmbss {

namespace {

double max_norm(double a, double b) { return std::max(std::abs(a), std::abs(b)); }

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw ZeroVariance("constant channel has no correlation");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::converged: return "converged";
        case StopReason::max_epochs: return "max_epochs";
        case StopReason::domain_error: return "domain_error";
    }
    return "unknown";
}

TrainTrajectory train(const SignalBatch& x, const TrainConfig& cfg) {
    if (!(cfg.step_size > 0.0)) throw InvalidConfig("step_size must be > 0");
    if (cfg.max_epochs < 1) throw InvalidConfig("max_epochs must be >= 1");
    if (!(cfg.grad_tol > 0.0)) throw InvalidConfig("grad_tol must be > 0");

    double w12 = cfg.init_w12, w21 = cfg.init_w21;
    try {
        fixed_point_solve(x, SeparatorCoeffs{w12, w21, cfg.k}, cfg.solver);
    } catch (const Error& e) {
        throw InvalidConfig(std::string("init_w is outside the contraction region: ") + e.what());
    }

    TrainTrajectory traj;
    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        const GradientReport rep =
            gradient(x, SeparatorCoeffs{w12, w21, cfg.k}, cfg.solver);

        EpochRecord rec;
        rec.epoch = epoch;
        rec.w12 = w12;
        rec.w21 = w21;
        rec.criterion = rep.entropy_ch1 + rep.entropy_ch2 - rep.mean_ln_abs_jacobian;
        rec.grad_norm_corrected = max_norm(rep.w12.corrected_gradient, rep.w21.corrected_gradient);
        rec.grad_norm_naive = max_norm(rep.w12.naive_gradient, rep.w21.naive_gradient);
        rec.solver_iterations = rep.solver.max_iterations;
        traj.records.push_back(rec);

        const bool corrected = cfg.variant == GradientVariant::corrected;
        const double g12 = corrected ? rep.w12.corrected_gradient : rep.w12.naive_gradient;
        const double g21 = corrected ? rep.w21.corrected_gradient : rep.w21.naive_gradient;
        if (max_norm(g12, g21) <= cfg.grad_tol) {
            traj.stop = StopReason::converged;
            traj.stop_detail = "gradient max-norm <= " + std::to_string(cfg.grad_tol);
            return traj;
        }

        // propose the step, halving away from solver failures (the step may
        // push w outside the contraction region of the data)
        double step = cfg.step_size;
        bool stepped = false;
        std::string failure;
        for (int attempt = 0; attempt <= 5; ++attempt) {
            const double n12 = w12 - step * g12;
            const double n21 = w21 - step * g21;
            try {
                fixed_point_solve(x, SeparatorCoeffs{n12, n21, cfg.k}, cfg.solver);
            } catch (const Error& e) {
                failure = e.what();
                step *= 0.5;
                continue;
            }
            w12 = n12;
            w21 = n21;
            stepped = true;
            break;
        }
        if (!stepped) {
            traj.stop = StopReason::domain_error;
            traj.stop_detail = "solver failed after 5 step halvings: " + failure;
            return traj;
        }
    }
    traj.stop = StopReason::max_epochs;
    traj.stop_detail = "epoch limit reached";
    return traj;
}

SeparationMetrics evaluate_separation(const SignalBatch& y, const SignalBatch& s) {
    if (y.ch1.size() != y.ch2.size() || s.ch1.size() != s.ch2.size() ||
        y.ch1.size() != s.ch1.size())
        throw LengthMismatch("outputs and sources must have equal lengths");
    if (y.ch1.empty()) throw LengthMismatch("empty batch");

    SeparationMetrics m{};
    const std::vector<double>* ys[2] = {&y.ch1, &y.ch2};
    const std::vector<double>* ss[2] = {&s.ch1, &s.ch2};
    for (int i = 0; i < 2; ++i) {
        const auto& yi = *ys[i];
        const auto& si = *ss[i];
        double syy = 0.0, sss = 0.0, sys = 0.0;
        for (std::size_t t = 0; t < yi.size(); ++t) {
            syy += yi[t] * yi[t];
            sss += si[t] * si[t];
            sys += yi[t] * si[t];
        }
        if (sss == 0.0) throw ZeroPower("source channel " + std::to_string(i + 1) + " has zero power");
        if (syy == 0.0) throw ZeroPower("output channel " + std::to_string(i + 1) + " has zero power");
        const double c = sys / syy;  // least-squares scale
        double err = 0.0;
        for (std::size_t t = 0; t < yi.size(); ++t) {
            const double e = c * yi[t] - si[t];
            err += e * e;
        }
        // +120 dB report ceiling for (near-)exact recovery
        m.sir_db[static_cast<std::size_t>(i)] =
            (err <= sss * 1e-12) ? 120.0
                                 : std::min(10.0 * std::log10(sss / err), 120.0);
        for (int j = 0; j < 2; ++j)
            m.corr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                pearson(*ys[i], *ss[j]);
    }
    return m;
}

}  // namespace atmbss
