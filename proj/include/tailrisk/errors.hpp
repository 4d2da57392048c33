#pragma once

#include <stdexcept>
#include <string>

namespace tailrisk {

/// Malformed input file or row.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is well-formed but violates a domain invariant (non-positive price,
/// duplicate date, degenerate sample, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The bias-corrected tail estimate came out non-positive. Carries the
/// uncorrected estimate so callers can report it without silently
/// substituting it.
class NonPositiveEstimate : public DomainError {
public:
    NonPositiveEstimate(const std::string& what, double corrected_gamma, double uncorrected_gamma)
        : DomainError(what), corrected_gamma_(corrected_gamma), uncorrected_gamma_(uncorrected_gamma) {}

    [[nodiscard]] double corrected_gamma() const noexcept { return corrected_gamma_; }
    [[nodiscard]] double uncorrected_gamma() const noexcept { return uncorrected_gamma_; }

private:
    double corrected_gamma_;
    double uncorrected_gamma_;
};

/// Numerical optimizer gave up before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tailrisk
