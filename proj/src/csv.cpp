#include "atmbss/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace atmbss::io {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_field(const std::string& field, const std::string& path, std::size_t lineno) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw FileError(path + ":" + std::to_string(lineno) + ": not a number: '" + field + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_signal_csv(const std::string& path, const SignalBatch& batch) {
    if (batch.ch1.size() != batch.ch2.size()) throw LengthMismatch("channel lengths differ");
    std::ofstream out(path);
    if (!out) throw FileError("cannot open for writing: " + path);
    out << "ch1,ch2\n";
    for (std::size_t i = 0; i < batch.size(); ++i)
        out << format_double(batch.ch1[i]) << ',' << format_double(batch.ch2[i]) << '\n';
    if (!out) throw FileError("write failed: " + path);
}

SignalBatch read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "ch1,ch2")
        throw FileError(path + ": expected header 'ch1,ch2'");
    std::vector<double> ch1, ch2;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw FileError(path + ":" + std::to_string(lineno) + ": expected two fields");
        ch1.push_back(parse_field(line.substr(0, comma), path, lineno));
        ch2.push_back(parse_field(line.substr(comma + 1), path, lineno));
    }
    if (ch1.empty()) throw FileError(path + ": no data rows");
    return make_batch(std::move(ch1), std::move(ch2));
}

void write_trajectory_csv(const std::string& path, const TrainTrajectory& traj) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot open for writing: " + path);
    out << "epoch,w12,w21,C,grad_norm_corrected,grad_norm_naive,stop_reason\n";
    for (std::size_t i = 0; i < traj.records.size(); ++i) {
        const EpochRecord& r = traj.records[i];
        const bool last = (i + 1 == traj.records.size());
        out << r.epoch << ',' << format_double(r.w12) << ',' << format_double(r.w21) << ','
            << format_double(r.criterion) << ',' << format_double(r.grad_norm_corrected) << ','
            << format_double(r.grad_norm_naive) << ',' << (last ? to_string(traj.stop) : "")
            << '\n';
    }
    if (!out) throw FileError("write failed: " + path);
}

}  // namespace atmbss::io
