#include "atmbss/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace atmbss {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw InvalidConfig(key + ": not a number: '" + value + "'");
    return v;
}

long long to_int(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw InvalidConfig(key + ": not an integer: '" + value + "'");
    return v;
}

long long to_positive_int(const std::string& key, const std::string& value) {
    const long long v = to_int(key, value);
    if (v < 1) throw InvalidConfig(key + ": must be >= 1, got " + value);
    return v;
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "source.distribution") {
        if (value == "uniform")
            cfg.source.dist = SourceSpec::Dist::uniform;
        else if (value == "lognormal")
            cfg.source.dist = SourceSpec::Dist::lognormal;
        else
            throw InvalidConfig("source.distribution must be uniform or lognormal, got '" +
                                value + "'");
    } else if (key == "source.param1") {
        cfg.source.p1 = to_double(key, value);
    } else if (key == "source.param2") {
        cfg.source.p2 = to_double(key, value);
    } else if (key == "source.n") {
        cfg.n = static_cast<std::size_t>(to_positive_int(key, value));
    } else if (key == "source.seed") {
        cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "mixing.a12") {
        cfg.mixing.a12 = to_double(key, value);
    } else if (key == "mixing.a21") {
        cfg.mixing.a21 = to_double(key, value);
    } else if (key == "mixing.k") {
        cfg.mixing.k = to_double(key, value);
        if (!(cfg.mixing.k > 0.0)) throw InvalidConfig("mixing.k must be > 0");
    } else if (key == "solver.tol") {
        cfg.solver.tol = to_double(key, value);
        if (!(cfg.solver.tol > 0.0)) throw InvalidConfig("solver.tol must be > 0");
    } else if (key == "solver.max_iter") {
        cfg.solver.max_iter = static_cast<int>(to_positive_int(key, value));
    } else if (key == "score.bandwidth_rule") {
        if (value != "silverman")
            throw InvalidConfig("score.bandwidth_rule: only 'silverman' is supported");
        cfg.bandwidth_rule = value;
    } else if (key == "score.epsilon") {
        cfg.score_epsilon = to_double(key, value);
        if (!(cfg.score_epsilon > 0.0)) throw InvalidConfig("score.epsilon must be > 0");
    } else if (key == "train.step") {
        cfg.train_step = to_double(key, value);
        if (!(cfg.train_step > 0.0)) throw InvalidConfig("train.step must be > 0");
    } else if (key == "train.epochs") {
        cfg.train_epochs = static_cast<int>(to_positive_int(key, value));
    } else if (key == "train.grad_tol") {
        cfg.train_grad_tol = to_double(key, value);
        if (!(cfg.train_grad_tol > 0.0)) throw InvalidConfig("train.grad_tol must be > 0");
    } else if (key == "train.init_w12") {
        cfg.train_init_w12 = to_double(key, value);
    } else if (key == "train.init_w21") {
        cfg.train_init_w21 = to_double(key, value);
    } else if (key == "train.variant") {
        if (value == "corrected")
            cfg.train_variant = GradientVariant::corrected;
        else if (value == "naive")
            cfg.train_variant = GradientVariant::naive;
        else
            throw InvalidConfig("train.variant must be corrected or naive, got '" + value + "'");
    } else if (key == "gradcheck.fd_step") {
        cfg.gradcheck_fd_step = to_double(key, value);
        if (!(cfg.gradcheck_fd_step > 0.0)) throw InvalidConfig("gradcheck.fd_step must be > 0");
    } else if (key == "gradcheck.jacobian_rel_tol") {
        cfg.gradcheck_jacobian_rel_tol = to_double(key, value);
        if (!(cfg.gradcheck_jacobian_rel_tol > 0.0))
            throw InvalidConfig("gradcheck.jacobian_rel_tol must be > 0");
    } else if (key == "gradcheck.entropy_abs_tol") {
        cfg.gradcheck_entropy_abs_tol = to_double(key, value);
        if (!(cfg.gradcheck_entropy_abs_tol > 0.0))
            throw InvalidConfig("gradcheck.entropy_abs_tol must be > 0");
    } else if (key == "gradcheck.entropy_rel_tol") {
        cfg.gradcheck_entropy_rel_tol = to_double(key, value);
        if (!(cfg.gradcheck_entropy_rel_tol > 0.0))
            throw InvalidConfig("gradcheck.entropy_rel_tol must be > 0");
    } else if (key == "output.dir") {
        if (value.empty()) throw InvalidConfig("output.dir must not be empty");
        cfg.output_dir = value;
    } else {
        throw InvalidConfig("unknown key: '" + key + "'");
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig("line " + std::to_string(lineno) + ": expected key=value, got '" +
                                stripped + "'");
        apply(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace atmbss
