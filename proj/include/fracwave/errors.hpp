#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

// Argument outside the mathematical domain of an operation (singular point,
// invalid Hurst index, regime mismatch, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Fewer data points than a fit or estimator needs, or nonpositive values
// where a log scale is required.
class DegenerateInput : public std::invalid_argument {
public:
    explicit DegenerateInput(const std::string& what) : std::invalid_argument(what) {}
};

// An adaptive integrator exhausted its evaluation budget before reaching the
// requested tolerance. Carries the best estimate obtained so far.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double best, double err, long evals)
        : std::runtime_error(what), best_estimate(best), error_estimate(err), evaluations(evals) {}
    double best_estimate;
    double error_estimate;
    long evaluations;
};

// A field-simulation operation was given a draw that does not belong to the
// grid it targets.
class GridMismatch : public std::logic_error {
public:
    explicit GridMismatch(const std::string& what) : std::logic_error(what) {}
};

// CLI configuration failed validation; `field` names the offending entry.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field_, const std::string& what)
        : std::invalid_argument(what), field(field_) {}
    std::string field;
};

} // namespace fracwave
