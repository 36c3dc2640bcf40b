#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace atmbss {

// Two failure categories drive the process exit code: validation errors are
// caller mistakes (bad data, bad config), numerical errors are runtime
// failures of the algorithms themselves.
enum class ErrorKind { validation = 1, numerical = 2 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), kind_(kind), name_(std::move(name)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
    std::string name_;
};

#define ATMBSS_DEFINE_ERROR(NAME, KIND)                                 \
    struct NAME : Error {                                               \
        explicit NAME(const std::string& detail)                        \
            : Error(ErrorKind::KIND, #NAME, detail) {}                  \
    }

ATMBSS_DEFINE_ERROR(NonPositiveSample, validation);
ATMBSS_DEFINE_ERROR(InvalidDistribution, validation);
ATMBSS_DEFINE_ERROR(TooFewSamples, validation);
ATMBSS_DEFINE_ERROR(ZeroVariance, validation);
ATMBSS_DEFINE_ERROR(LengthMismatch, validation);
ATMBSS_DEFINE_ERROR(ZeroPower, validation);
ATMBSS_DEFINE_ERROR(InvalidConfig, validation);
ATMBSS_DEFINE_ERROR(FileError, validation);

ATMBSS_DEFINE_ERROR(NonPositiveIterate, numerical);
ATMBSS_DEFINE_ERROR(NoConvergence, numerical);
ATMBSS_DEFINE_ERROR(DivergenceDetected, numerical);
ATMBSS_DEFINE_ERROR(SingularJacobian, numerical);
ATMBSS_DEFINE_ERROR(DomainError, numerical);

#undef ATMBSS_DEFINE_ERROR

// Message without the leading "Name: " tag, for rewrapping with added context.
inline std::string detail_of(const Error& e) {
    return std::string(e.what()).substr(e.name().size() + 2);
}

}  // namespace atmbss
