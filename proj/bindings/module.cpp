// Python bindings for the core operations: source generation, mixing, the
// recurrent separator, score/entropy estimation, gradient evaluation,
// training, and separation metrics. Vectors cross the boundary by copy;
// validation errors map to ValueError, numerical failures to RuntimeError.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "atmbss/config.hpp"
#include "atmbss/criterion.hpp"
#include "atmbss/errors.hpp"
#include "atmbss/score.hpp"
#include "atmbss/separator.hpp"
#include "atmbss/signal.hpp"
#include "atmbss/trainer.hpp"

namespace py = pybind11;
using namespace atmbss;

namespace {

using Pair = std::pair<std::vector<double>, std::vector<double>>;

SignalBatch to_batch(std::vector<double> ch1, std::vector<double> ch2) {
    return make_batch(std::move(ch1), std::move(ch2));
}

Pair from_batch(SignalBatch b) { return {std::move(b.ch1), std::move(b.ch2)}; }

Coeff parse_coeff(const std::string& which) {
    if (which == "w12") return Coeff::w12;
    if (which == "w21") return Coeff::w21;
    throw InvalidConfig("coefficient must be 'w12' or 'w21', got '" + which + "'");
}

GradientVariant parse_variant(const std::string& v) {
    if (v == "corrected") return GradientVariant::corrected;
    if (v == "naive") return GradientVariant::naive;
    throw InvalidConfig("variant must be 'corrected' or 'naive', got '" + v + "'");
}

py::dict terms_dict(const GradientTerms& t) {
    py::dict d;
    d["entropy_term"] = t.entropy_term;
    d["jacobian_term"] = t.jacobian_term;
    d["corrected_gradient"] = t.corrected_gradient;
    d["naive_jacobian_term"] = t.naive_jacobian_term;
    d["naive_gradient"] = t.naive_gradient;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Blind separation of an additive-target nonlinear mixture of two "
              "positive sources: mixing model, recurrent separator, "
              "mutual-information gradient, and training loop.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::validation)
                PyErr_SetString(PyExc_ValueError, e.what());
            else
                PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    m.def(
        "generate_sources",
        [](std::size_t n, const std::string& distribution, double param1, double param2,
           std::uint64_t seed) {
            SourceSpec spec;
            if (distribution == "uniform") spec = SourceSpec::uniform(param1, param2);
            else if (distribution == "lognormal") spec = SourceSpec::lognormal(param1, param2);
            else throw InvalidDistribution("unknown distribution '" + distribution + "'");
            return from_batch(generate_sources(n, spec, seed));
        },
        py::arg("n"), py::arg("distribution"), py::arg("param1"), py::arg("param2"),
        py::arg("seed"),
        "Draw two i.i.d. positive source channels; distribution is 'uniform' "
        "(param1=lo, param2=hi) or 'lognormal' (param1=mu, param2=sigma).");

    m.def(
        "mix",
        [](std::vector<double> s1, std::vector<double> s2, double a12, double a21, double k) {
            return from_batch(mix(to_batch(std::move(s1), std::move(s2)), MixingParams{a12, a21, k}));
        },
        py::arg("s1"), py::arg("s2"), py::arg("a12"), py::arg("a21"), py::arg("k"),
        "x1 = s1 + a12*s2^k, x2 = s2 + a21*s1^(1/k).");

    m.def(
        "separate",
        [](std::vector<double> x1, std::vector<double> x2, double w12, double w21, double k,
           double tol, int max_iter) {
            FixedPointConfig cfg{tol, max_iter};
            SolveStats stats;
            Pair y = from_batch(fixed_point_solve(to_batch(std::move(x1), std::move(x2)),
                                                  SeparatorCoeffs{w12, w21, k}, cfg, &stats));
            return py::make_tuple(y.first, y.second,
                                  py::dict(py::arg("max_iterations") = stats.max_iterations,
                                           py::arg("max_residual") = stats.max_residual));
        },
        py::arg("x1"), py::arg("x2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        py::arg("tol") = 1e-12, py::arg("max_iter") = 500,
        "Solve y1 = x1 - w12*y2^k, y2 = x2 - w21*y1^(1/k) per sample; returns "
        "(y1, y2, stats).");

    m.def(
        "loop_gain",
        [](double y1, double y2, double w12, double w21, double k) {
            return loop_gain(y1, y2, SeparatorCoeffs{w12, w21, k});
        },
        py::arg("y1"), py::arg("y2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        "g = w12*w21*y1^(1/k-1)*y2^(k-1).");

    m.def(
        "jacobian",
        [](double y1, double y2, double w12, double w21, double k) {
            return jacobian(y1, y2, SeparatorCoeffs{w12, w21, k});
        },
        py::arg("y1"), py::arg("y2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        "J = 1/(1 - g) with g the loop gain.");

    m.def(
        "jacobian_partials",
        [](double y1, double y2, double w12, double w21, double k) {
            JacobianPartials p = jacobian_partials(y1, y2, SeparatorCoeffs{w12, w21, k});
            return py::dict(py::arg("dw12") = p.dw12, py::arg("dw21") = p.dw21,
                            py::arg("dy1") = p.dy1, py::arg("dy2") = p.dy2);
        },
        py::arg("y1"), py::arg("y2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        "Partial derivatives of J in the coefficients and the outputs.");

    m.def(
        "output_sensitivities",
        [](double y1, double y2, double w12, double w21, double k) {
            SensitivityBundle s = output_sensitivities(y1, y2, SeparatorCoeffs{w12, w21, k});
            return py::dict(py::arg("dy1_dw12") = s.dy1_dw12, py::arg("dy2_dw12") = s.dy2_dw12,
                            py::arg("dy1_dw21") = s.dy1_dw21, py::arg("dy2_dw21") = s.dy2_dw21);
        },
        py::arg("y1"), py::arg("y2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        "Total derivatives of the converged outputs in the coefficients.");

    m.def(
        "jacobian_total_derivatives",
        [](double y1, double y2, double w12, double w21, double k) {
            auto [d12, d21] = jacobian_total_derivatives(y1, y2, SeparatorCoeffs{w12, w21, k});
            return py::make_tuple(d12, d21);
        },
        py::arg("y1"), py::arg("y2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        "dJ/dw including the output dependence, per coefficient.");

    m.def("silverman_bandwidth", &silverman_bandwidth, py::arg("samples"),
          "h = 1.06 * sd * n^(-1/5).");

    m.def(
        "kde_density",
        [](const std::vector<double>& samples, double u, double eps) {
            ScoreModel model;
            model.ch[0] = ChannelDensity{samples, silverman_bandwidth(samples), eps};
            return density(model, 0, u);
        },
        py::arg("samples"), py::arg("u"), py::arg("eps") = 1e-12,
        "Gaussian kernel density estimate at u (all samples kept, Silverman bandwidth).");

    m.def(
        "kde_score",
        [](const std::vector<double>& samples, double u, double eps) {
            ScoreModel model;
            model.ch[0] = ChannelDensity{samples, silverman_bandwidth(samples), eps};
            return score(model, 0, u);
        },
        py::arg("samples"), py::arg("u"), py::arg("eps") = 1e-12,
        "psi(u) = -f'(u)/f(u) from the kernel density estimate.");

    m.def("vasicek_entropy", &entropy, py::arg("samples"),
          "m-spacing entropy estimate, m = round(sqrt(n)), n >= 30.");

    m.def(
        "criterion_value",
        [](std::vector<double> y1, std::vector<double> y2, double w12, double w21, double k) {
            return criterion_value(to_batch(std::move(y1), std::move(y2)),
                                   SeparatorCoeffs{w12, w21, k});
        },
        py::arg("y1"), py::arg("y2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        "C = H(Y1) + H(Y2) - mean ln|J| on already-converged outputs.");

    m.def(
        "gradient",
        [](std::vector<double> x1, std::vector<double> x2, double w12, double w21, double k,
           double tol, int max_iter) {
            GradientReport r = gradient(to_batch(std::move(x1), std::move(x2)),
                                        SeparatorCoeffs{w12, w21, k},
                                        FixedPointConfig{tol, max_iter});
            py::dict d;
            d["w12"] = terms_dict(r.w12);
            d["w21"] = terms_dict(r.w21);
            d["mean_ln_abs_jacobian"] = r.mean_ln_abs_jacobian;
            d["entropy_ch1"] = r.entropy_ch1;
            d["entropy_ch2"] = r.entropy_ch2;
            d["jacobian_sign_flip"] = r.jacobian_sign_flip;
            d["text"] = r.to_text();
            return d;
        },
        py::arg("x1"), py::arg("x2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        py::arg("tol") = 1e-12, py::arg("max_iter") = 500,
        "Corrected and naive gradient terms of the separation criterion.");

    m.def(
        "fd_jacobian_term",
        [](std::vector<double> x1, std::vector<double> x2, double w12, double w21, double k,
           const std::string& which, double step) {
            return fd_oracle_jacobian_term(to_batch(std::move(x1), std::move(x2)),
                                           SeparatorCoeffs{w12, w21, k}, parse_coeff(which), step);
        },
        py::arg("x1"), py::arg("x2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        py::arg("which"), py::arg("step") = 1e-6,
        "Central difference of mean ln|J| in the chosen coefficient.");

    m.def(
        "fd_entropy_term",
        [](std::vector<double> x1, std::vector<double> x2, double w12, double w21, double k,
           const std::string& which, double step) {
            return fd_oracle_entropy_term(to_batch(std::move(x1), std::move(x2)),
                                          SeparatorCoeffs{w12, w21, k}, parse_coeff(which), step);
        },
        py::arg("x1"), py::arg("x2"), py::arg("w12"), py::arg("w21"), py::arg("k"),
        py::arg("which"), py::arg("step") = 1e-6,
        "Central difference of the summed output entropies in the chosen coefficient.");

    m.def(
        "train",
        [](std::vector<double> x1, std::vector<double> x2, double k, double step_size,
           int max_epochs, double grad_tol, double init_w12, double init_w21,
           const std::string& variant) {
            TrainConfig cfg;
            cfg.step_size = step_size;
            cfg.max_epochs = max_epochs;
            cfg.grad_tol = grad_tol;
            cfg.init_w12 = init_w12;
            cfg.init_w21 = init_w21;
            cfg.variant = parse_variant(variant);
            cfg.k = k;
            TrainTrajectory t = train(to_batch(std::move(x1), std::move(x2)), cfg);
            py::list records;
            for (const EpochRecord& r : t.records) {
                records.append(py::dict(
                    py::arg("epoch") = r.epoch, py::arg("w12") = r.w12, py::arg("w21") = r.w21,
                    py::arg("criterion") = r.criterion,
                    py::arg("grad_norm_corrected") = r.grad_norm_corrected,
                    py::arg("grad_norm_naive") = r.grad_norm_naive));
            }
            return py::dict(py::arg("records") = records,
                            py::arg("stop_reason") = std::string(to_string(t.stop)),
                            py::arg("stop_detail") = t.stop_detail,
                            py::arg("w12") = t.final_w12(), py::arg("w21") = t.final_w21());
        },
        py::arg("x1"), py::arg("x2"), py::arg("k"), py::arg("step_size") = 0.05,
        py::arg("max_epochs") = 500, py::arg("grad_tol") = 0.02, py::arg("init_w12") = 0.0,
        py::arg("init_w21") = 0.0, py::arg("variant") = "corrected",
        "Fixed-step gradient descent on the separation criterion.");

    m.def(
        "evaluate_separation",
        [](std::vector<double> y1, std::vector<double> y2, std::vector<double> s1,
           std::vector<double> s2) {
            SeparationMetrics sm = evaluate_separation(to_batch(std::move(y1), std::move(y2)),
                                                       to_batch(std::move(s1), std::move(s2)));
            return py::dict(
                py::arg("sir_db") = std::vector<double>{sm.sir_db[0], sm.sir_db[1]},
                py::arg("corr") = std::vector<std::vector<double>>{
                    {sm.corr[0][0], sm.corr[0][1]}, {sm.corr[1][0], sm.corr[1][1]}});
        },
        py::arg("y1"), py::arg("y2"), py::arg("s1"), py::arg("s2"),
        "Per-channel SIR (dB, least-squares scale, capped at 120) and the 2x2 "
        "output/source correlation matrix.");
}
