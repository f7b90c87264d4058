#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hypmax {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// A numerical procedure failed to reach its tolerance. Carries the last
// estimate so callers can decide whether it is still usable.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& msg, std::complex<double> estimate)
        : std::runtime_error(msg), last_estimate_(estimate) {}
    std::complex<double> last_estimate() const { return last_estimate_; }

private:
    std::complex<double> last_estimate_;
};

// Invalid run/experiment configuration (bad constants, broken containment).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hypmax
