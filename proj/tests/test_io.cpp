// CSV serialization and the flat key=value configuration format.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "atmbss/config.hpp"
#include "atmbss/csv.hpp"
#include "atmbss/errors.hpp"
#include "atmbss/signal.hpp"
#include "atmbss/trainer.hpp"

using namespace atmbss;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("atmbss_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
    void write(const std::string& text) const {
        std::ofstream out(path);
        out << text;
    }
    std::string read() const {
        std::ifstream in(path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

}  // namespace

TEST_CASE("signal CSV round-trips doubles bit-exactly") {
    TempFile f("roundtrip.csv");
    SignalBatch b = make_batch(
        {0.1, 1.0 / 3.0, 1e-300, 1e300, 0.1 + 0.2, 5e-324},
        {-0.1, -1.0 / 3.0, 123456.789012345678, 1.0000000000000002, 0.0, -5e-324});
    io::write_signal_csv(f.path, b);
    SignalBatch r = io::read_signal_csv(f.path);
    REQUIRE(r.size() == b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(r.ch1[i] == b.ch1[i]);
        CHECK(r.ch2[i] == b.ch2[i]);
    }
}

TEST_CASE("signal CSV uses the documented header") {
    TempFile f("header.csv");
    io::write_signal_csv(f.path, make_batch({1.0}, {2.0}));
    const std::string text = f.read();
    CHECK(text.substr(0, 8) == "ch1,ch2\n");
}

TEST_CASE("reading rejects a missing header") {
    TempFile f("noheader.csv");
    f.write("1.0,2.0\n");
    CHECK_THROWS_AS(io::read_signal_csv(f.path), FileError);
}

TEST_CASE("reading rejects non-numeric fields and reports the line") {
    TempFile f("badnum.csv");
    f.write("ch1,ch2\n1.0,2.0\nfoo,3.0\n");
    try {
        io::read_signal_csv(f.path);
        FAIL("expected FileError");
    } catch (const FileError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(":3") != std::string::npos);
        CHECK(msg.find("foo") != std::string::npos);
    }
}

TEST_CASE("reading a missing file fails cleanly") {
    CHECK_THROWS_AS(io::read_signal_csv("definitely_not_here.csv"), FileError);
}

TEST_CASE("reading rejects an empty data section") {
    TempFile f("empty.csv");
    f.write("ch1,ch2\n");
    CHECK_THROWS_AS(io::read_signal_csv(f.path), FileError);
}

TEST_CASE("trajectory CSV golden format: stop reason only on the last row") {
    TempFile f("traj.csv");
    TrainTrajectory t;
    t.stop = StopReason::converged;
    t.records.push_back(EpochRecord{0, 0.0, 0.0, 1.5, 0.25, 0.25, 3});
    t.records.push_back(EpochRecord{1, 0.0125, 0.5, -0.75, 0.015, 0.017, 4});
    io::write_trajectory_csv(f.path, t);
    CHECK(f.read() ==
          "epoch,w12,w21,C,grad_norm_corrected,grad_norm_naive,stop_reason\n"
          "0,0,0,1.5,0.25,0.25,\n"
          "1,0.012500000000000001,0.5,-0.75,0.014999999999999999,0.017000000000000001,converged\n");
}

TEST_CASE("full-precision decimal serialization survives a parse cycle") {
    for (double v : {0.1, 2.0 / 3.0, 3.141592653589793, 1e-17, 123456789.12345679}) {
        const std::string s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("configuration file: every documented key is applied") {
    TempFile f("full.cfg");
    f.write(
        "# experiment configuration\n"
        "source.distribution=uniform\n"
        "source.param1=0.5\n"
        "source.param2=1.5\n"
        "source.n=333\n"
        "source.seed=99\n"
        "\n"
        "mixing.a12=0.11\n"
        "mixing.a21=0.22\n"
        "mixing.k=0.5\n"
        "solver.tol=1e-10\n"
        "solver.max_iter=77\n"
        "score.bandwidth_rule=silverman\n"
        "score.epsilon=1e-9\n"
        "train.step=0.01\n"
        "train.epochs=42\n"
        "train.grad_tol=0.005\n"
        "train.init_w12=0.02\n"
        "train.init_w21=0.03\n"
        "train.variant=naive\n"
        "gradcheck.fd_step=1e-5\n"
        "gradcheck.jacobian_rel_tol=1e-3\n"
        "gradcheck.entropy_abs_tol=0.2\n"
        "gradcheck.entropy_rel_tol=0.15\n"
        "output.dir=/tmp/somewhere\n");
    const ExperimentConfig c = load_config_file(f.path);
    CHECK(c.source.dist == SourceSpec::Dist::uniform);
    CHECK(c.source.p1 == 0.5);
    CHECK(c.source.p2 == 1.5);
    CHECK(c.n == 333);
    CHECK(c.seed == 99);
    CHECK(c.mixing.a12 == 0.11);
    CHECK(c.mixing.a21 == 0.22);
    CHECK(c.mixing.k == 0.5);
    CHECK(c.solver.tol == 1e-10);
    CHECK(c.solver.max_iter == 77);
    CHECK(c.bandwidth_rule == "silverman");
    CHECK(c.score_epsilon == 1e-9);
    CHECK(c.train_step == 0.01);
    CHECK(c.train_epochs == 42);
    CHECK(c.train_grad_tol == 0.005);
    CHECK(c.train_init_w12 == 0.02);
    CHECK(c.train_init_w21 == 0.03);
    CHECK(c.train_variant == GradientVariant::naive);
    CHECK(c.gradcheck_fd_step == 1e-5);
    CHECK(c.gradcheck_jacobian_rel_tol == 1e-3);
    CHECK(c.gradcheck_entropy_abs_tol == 0.2);
    CHECK(c.gradcheck_entropy_rel_tol == 0.15);
    CHECK(c.output_dir == "/tmp/somewhere");
}

TEST_CASE("unknown configuration keys are rejected by name") {
    try {
        parse_config_text("mixing.a13=0.5\n");
        FAIL("expected InvalidConfig");
    } catch (const InvalidConfig& e) {
        CHECK(std::string(e.what()).find("mixing.a13") != std::string::npos);
    }
}

TEST_CASE("malformed configuration values are rejected") {
    CHECK_THROWS_AS(parse_config_text("mixing.a12=abc\n"), InvalidConfig);
    CHECK_THROWS_AS(parse_config_text("source.n=-5\n"), InvalidConfig);
    CHECK_THROWS_AS(parse_config_text("train.variant=bogus\n"), InvalidConfig);
    CHECK_THROWS_AS(parse_config_text("score.bandwidth_rule=plugin\n"), InvalidConfig);
    CHECK_THROWS_AS(parse_config_text("no equals sign\n"), InvalidConfig);
    CHECK_THROWS_AS(parse_config_text("source.distribution=cauchy\n"), InvalidConfig);
}

TEST_CASE("comments and blank lines are ignored") {
    const ExperimentConfig c = parse_config_text("\n# just a comment\n\nmixing.a12=0.3\n");
    CHECK(c.mixing.a12 == 0.3);
}

TEST_CASE("defaults are sane when no file is given") {
    const ExperimentConfig c;
    CHECK(c.mixing.k == 2.0);
    CHECK(c.solver.tol == 1e-12);
    CHECK(c.solver.max_iter == 500);
    CHECK(c.train_variant == GradientVariant::corrected);
    CHECK(c.score_epsilon == 1e-12);
}
