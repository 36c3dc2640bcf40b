// Command-line harness: dataset generation, mixing, separation, gradient
// checking, training, and separation quality evaluation. Subcommands write
// CSV files into the output directory and print a short report to stdout.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "atmbss/config.hpp"
#include "atmbss/criterion.hpp"
#include "atmbss/csv.hpp"
#include "atmbss/errors.hpp"
#include "atmbss/separator.hpp"
#include "atmbss/signal.hpp"
#include "atmbss/trainer.hpp"

namespace fs = std::filesystem;

namespace {

std::string num(double v) { return atmbss::io::format_double(v); }

std::string out_path(const std::string& dir, const std::string& name) {
    fs::path p(dir);
    if (!p.empty() && !fs::exists(p)) fs::create_directories(p);
    return (p / name).string();
}

atmbss::TrainConfig train_config(const atmbss::ExperimentConfig& cfg) {
    atmbss::TrainConfig tc;
    tc.step_size = cfg.train_step;
    tc.max_epochs = cfg.train_epochs;
    tc.grad_tol = cfg.train_grad_tol;
    tc.init_w12 = cfg.train_init_w12;
    tc.init_w21 = cfg.train_init_w21;
    tc.variant = cfg.train_variant;
    tc.k = cfg.mixing.k;
    tc.solver = cfg.solver;
    return tc;
}

void print_sir_block(const char* label, const atmbss::SeparationMetrics& m) {
    std::cout << label << ".sir_db.ch1=" << num(m.sir_db[0]) << "\n"
              << label << ".sir_db.ch2=" << num(m.sir_db[1]) << "\n";
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            std::cout << label << ".corr.y" << (i + 1) << ".s" << (j + 1) << "="
                      << num(m.corr[i][j]) << "\n";
}

int cmd_generate(const atmbss::ExperimentConfig& cfg, const std::string& dir) {
    atmbss::SignalBatch s = atmbss::generate_sources(cfg.n, cfg.source, cfg.seed);
    const std::string path = out_path(dir, "sources.csv");
    atmbss::io::write_signal_csv(path, s);
    std::cout << "wrote " << path << " (n=" << s.size() << ")\n";
    return 0;
}

int cmd_mix(const atmbss::ExperimentConfig& cfg, const std::string& dir,
            const std::string& sources_file) {
    atmbss::SignalBatch s = atmbss::io::read_signal_csv(sources_file);
    atmbss::SignalBatch x = atmbss::mix(s, cfg.mixing);
    const std::string path = out_path(dir, "observations.csv");
    atmbss::io::write_signal_csv(path, x);
    std::cout << "wrote " << path << " (n=" << x.size() << ", a12=" << num(cfg.mixing.a12)
              << ", a21=" << num(cfg.mixing.a21) << ", k=" << num(cfg.mixing.k) << ")\n";
    return 0;
}

int cmd_separate(const atmbss::ExperimentConfig& cfg, const std::string& dir,
                 const std::string& obs_file, double w12, double w21) {
    atmbss::SignalBatch x = atmbss::io::read_signal_csv(obs_file);
    atmbss::SeparatorCoeffs w{w12, w21, cfg.mixing.k};
    atmbss::SolveStats stats;
    atmbss::SignalBatch y = atmbss::fixed_point_solve(x, w, cfg.solver, &stats);
    const std::string path = out_path(dir, "outputs.csv");
    atmbss::io::write_signal_csv(path, y);
    std::cout << "wrote " << path << " (n=" << y.size() << ")\n"
              << "solver.max_iterations=" << stats.max_iterations << "\n"
              << "solver.max_residual=" << num(stats.max_residual) << "\n";
    return 0;
}

int cmd_grad_check(const atmbss::ExperimentConfig& cfg, const std::string& obs_file,
                   double w12, double w21) {
    atmbss::SignalBatch x = atmbss::io::read_signal_csv(obs_file);
    atmbss::SeparatorCoeffs w{w12, w21, cfg.mixing.k};
    atmbss::GradientReport r = atmbss::gradient(x, w, cfg.solver);
    std::cout << r.to_text();

    bool ok = true;
    const atmbss::GradientTerms* terms[2] = {&r.w12, &r.w21};
    const atmbss::Coeff which[2] = {atmbss::Coeff::w12, atmbss::Coeff::w21};
    const char* names[2] = {"w12", "w21"};
    for (int i = 0; i < 2; ++i) {
        const double fd_jac = atmbss::fd_oracle_jacobian_term(x, w, which[i],
                                                              cfg.gradcheck_fd_step, cfg.solver);
        const double rel = std::abs(terms[i]->jacobian_term - fd_jac) /
                           std::max(std::abs(fd_jac), 1e-300);
        const bool pass_jac = rel <= cfg.gradcheck_jacobian_rel_tol;
        ok = ok && pass_jac;
        std::cout << "check." << names[i] << ".jacobian_term: analytic="
                  << num(terms[i]->jacobian_term) << " fd=" << num(fd_jac)
                  << " rel_err=" << num(rel) << " " << (pass_jac ? "PASS" : "FAIL") << "\n";

        const double fd_ent = atmbss::fd_oracle_entropy_term(x, w, which[i],
                                                             cfg.gradcheck_fd_step, cfg.solver);
        const double diff = std::abs(terms[i]->entropy_term - fd_ent);
        const double tol = std::max(cfg.gradcheck_entropy_abs_tol,
                                    cfg.gradcheck_entropy_rel_tol * std::abs(fd_ent));
        const bool pass_ent = diff <= tol;
        ok = ok && pass_ent;
        std::cout << "check." << names[i] << ".entropy_term: analytic="
                  << num(terms[i]->entropy_term) << " fd=" << num(fd_ent)
                  << " abs_err=" << num(diff) << " tol=" << num(tol) << " "
                  << (pass_ent ? "PASS" : "FAIL") << "\n";
    }
    const double naive_gap = std::max(
        std::abs(r.w12.naive_jacobian_term - r.w12.jacobian_term),
        std::abs(r.w21.naive_jacobian_term - r.w21.jacobian_term));
    std::cout << "check.naive_vs_total.max_abs_gap=" << num(naive_gap) << "\n";
    std::cout << "grad-check: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 2;
}

int cmd_train(const atmbss::ExperimentConfig& cfg, const std::string& dir,
              const std::string& obs_file, const std::string& sources_file) {
    atmbss::SignalBatch x = atmbss::io::read_signal_csv(obs_file);
    atmbss::TrainConfig tc = train_config(cfg);
    atmbss::TrainTrajectory traj = atmbss::train(x, tc);

    const std::string traj_path = out_path(dir, "trajectory.csv");
    atmbss::io::write_trajectory_csv(traj_path, traj);
    const atmbss::EpochRecord& last = traj.records.back();
    std::cout << "wrote " << traj_path << "\n"
              << "train.epochs=" << last.epoch << "\n"
              << "train.stop_reason=" << atmbss::to_string(traj.stop) << "\n"
              << "train.final.w12=" << num(traj.final_w12()) << "\n"
              << "train.final.w21=" << num(traj.final_w21()) << "\n"
              << "train.final.criterion=" << num(last.criterion) << "\n"
              << "train.final.grad_norm_corrected=" << num(last.grad_norm_corrected) << "\n"
              << "train.final.grad_norm_naive=" << num(last.grad_norm_naive) << "\n";
    if (!traj.stop_detail.empty())
        std::cout << "train.stop_detail=" << traj.stop_detail << "\n";

    atmbss::SeparatorCoeffs w_final{traj.final_w12(), traj.final_w21(), tc.k};
    if (!sources_file.empty()) {
        atmbss::SignalBatch s = atmbss::io::read_signal_csv(sources_file);
        atmbss::SeparationMetrics before = atmbss::evaluate_separation(x, s);
        atmbss::SignalBatch y = atmbss::fixed_point_solve(x, w_final, cfg.solver);
        atmbss::SeparationMetrics after = atmbss::evaluate_separation(y, s);
        print_sir_block("before", before);
        print_sir_block("after", after);
        std::cout << "improvement.sir_db.ch1=" << num(after.sir_db[0] - before.sir_db[0]) << "\n"
                  << "improvement.sir_db.ch2=" << num(after.sir_db[1] - before.sir_db[1]) << "\n";
    }

    if (tc.variant == atmbss::GradientVariant::naive) {
        // Paired run with the corrected gradient for side-by-side comparison.
        atmbss::TrainConfig tc2 = tc;
        tc2.variant = atmbss::GradientVariant::corrected;
        atmbss::TrainTrajectory traj2 = atmbss::train(x, tc2);
        const std::string path2 = out_path(dir, "trajectory_corrected.csv");
        atmbss::io::write_trajectory_csv(path2, traj2);
        const atmbss::EpochRecord& l2 = traj2.records.back();
        std::cout << "wrote " << path2 << "\n"
                  << "comparison.naive.w12=" << num(traj.final_w12()) << "\n"
                  << "comparison.naive.w21=" << num(traj.final_w21()) << "\n"
                  << "comparison.naive.criterion=" << num(last.criterion) << "\n"
                  << "comparison.naive.epochs=" << last.epoch << "\n"
                  << "comparison.corrected.w12=" << num(traj2.final_w12()) << "\n"
                  << "comparison.corrected.w21=" << num(traj2.final_w21()) << "\n"
                  << "comparison.corrected.criterion=" << num(l2.criterion) << "\n"
                  << "comparison.corrected.epochs=" << l2.epoch << "\n";
    }
    return 0;
}

int cmd_evaluate(const std::string& outputs_file, const std::string& sources_file) {
    atmbss::SignalBatch y = atmbss::io::read_signal_csv(outputs_file);
    atmbss::SignalBatch s = atmbss::io::read_signal_csv(sources_file);
    atmbss::SeparationMetrics m = atmbss::evaluate_separation(y, s);
    print_sir_block("evaluate", m);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind separation of an additive-target nonlinear mixture: "
                 "data generation, recurrent separation, gradient checking, training."};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    app.add_option("--config", config_path, "Configuration file (flat key=value lines)");
    app.add_option("--out", out_dir, "Output directory (default: output.dir from config)");

    CLI::App* c_gen = app.add_subcommand("generate", "Draw source signals, write sources.csv");

    std::string mix_sources;
    CLI::App* c_mix = app.add_subcommand("mix", "Mix sources, write observations.csv");
    c_mix->add_option("sources", mix_sources, "Sources CSV")->required();

    std::string sep_obs;
    double sep_w12 = 0.0, sep_w21 = 0.0;
    CLI::App* c_sep = app.add_subcommand("separate", "Solve the separating recurrence, write outputs.csv");
    c_sep->add_option("observations", sep_obs, "Observations CSV")->required();
    c_sep->add_option("--w12", sep_w12, "Separator coefficient w12")->required();
    c_sep->add_option("--w21", sep_w21, "Separator coefficient w21")->required();

    std::string gc_obs;
    double gc_w12 = 0.0, gc_w21 = 0.0;
    CLI::App* c_gc = app.add_subcommand("grad-check",
        "Compare analytic gradient terms against finite-difference oracles");
    c_gc->add_option("observations", gc_obs, "Observations CSV")->required();
    c_gc->add_option("--w12", gc_w12, "Separator coefficient w12")->required();
    c_gc->add_option("--w21", gc_w21, "Separator coefficient w21")->required();

    std::string tr_obs, tr_sources;
    CLI::App* c_tr = app.add_subcommand("train", "Gradient-descent training, write trajectory.csv");
    c_tr->add_option("observations", tr_obs, "Observations CSV")->required();
    c_tr->add_option("--sources", tr_sources, "Sources CSV (enables SIR metrics)");

    std::string ev_outputs, ev_sources;
    CLI::App* c_ev = app.add_subcommand("evaluate", "SIR and correlations of outputs vs sources");
    c_ev->add_option("outputs", ev_outputs, "Outputs CSV")->required();
    c_ev->add_option("sources", ev_sources, "Sources CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        atmbss::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = atmbss::load_config_file(config_path);
        const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;

        if (c_gen->parsed()) return cmd_generate(cfg, dir);
        if (c_mix->parsed()) return cmd_mix(cfg, dir, mix_sources);
        if (c_sep->parsed()) return cmd_separate(cfg, dir, sep_obs, sep_w12, sep_w21);
        if (c_gc->parsed()) return cmd_grad_check(cfg, gc_obs, gc_w12, gc_w21);
        if (c_tr->parsed()) return cmd_train(cfg, dir, tr_obs, tr_sources);
        if (c_ev->parsed()) return cmd_evaluate(ev_outputs, ev_sources);
        return 1;
    } catch (const atmbss::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
