#pragma once

// Special functions evaluated in log or scaled space.

#include <cstddef>
#include <limits>
#include <span>

namespace gammaconv {

/// Truncation policy shared by every series in the library.
struct SeriesControl {
    double rel_tol = 1e-15;
    std::size_t max_terms = 10000;

    /// Throws DomainError unless 0 < rel_tol < 1 and max_terms >= 1.
    void validate() const;
};

/// Overflow-safe real: sign * exp(log_magnitude).
struct ScaledValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static ScaledValue zero() { return {}; }
    static ScaledValue one() { return {0.0, 1}; }
    static ScaledValue from_log(double log_magnitude) { return {log_magnitude, 1}; }
    static ScaledValue from_real(double v);

    bool is_zero() const { return sign == 0; }

    /// Plain real conversion. Throws std::overflow_error if the magnitude does not fit a double.
    double to_real() const;

    ScaledValue operator*(const ScaledValue& o) const;
};

double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), without cancellation.
double reg_upper_gamma(double a, double x);

/// log of x^a e^{-x} / Gamma(a + 1) for a >= 0, x > 0, stable for large a.
double ln_poisson_kernel(double a, double x);

/// log of the gamma(shape, scale) density at x > 0.
double ln_gamma_pdf(double x, double shape, double scale);

/// Rising factorial (x)_m.
ScaledValue pochhammer_log(double x, std::size_t m);

/// log C(n, k) for real n >= k >= 0, via log-gamma.
double ln_binomial(double n, double k);

/// log of n! / (k_1! ... k_S!) with n = sum of parts.
double ln_multinomial(std::span<const unsigned> parts);

struct SeriesSum {
    ScaledValue value;
    std::size_t terms = 0;
};

/// Kummer's confluent hypergeometric function 1F1(a; b; z) for a >= 0, b > 0.
/// Negative z is mapped through 1F1(a;b;z) = e^z 1F1(b-a;b;-z) so that only
/// non-negative terms are summed; this requires b >= a when z < 0.
SeriesSum kummer_1f1_series(double a, double b, double z, const SeriesControl& ctrl = {});

inline ScaledValue kummer_1f1(double a, double b, double z, const SeriesControl& ctrl = {}) {
    return kummer_1f1_series(a, b, z, ctrl).value;
}

}  // namespace gammaconv
