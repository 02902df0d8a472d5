#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace gammaconv {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series hit its term budget before meeting the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& series, std::size_t terms_used, double last_magnitude)
        : std::runtime_error(series + ": no convergence after " + std::to_string(terms_used) +
                             " terms (last relative magnitude " + format_magnitude(last_magnitude) + ")"),
          series_(series),
          terms_used_(terms_used),
          last_magnitude_(last_magnitude) {}

    const std::string& series() const noexcept { return series_; }
    std::size_t terms_used() const noexcept { return terms_used_; }
    double last_magnitude() const noexcept { return last_magnitude_; }

private:
    static std::string format_magnitude(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        return buf;
    }

    std::string series_;
    std::size_t terms_used_;
    double last_magnitude_;
};

/// The generalized negative binomial moment system has no admissible solution.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gammaconv
