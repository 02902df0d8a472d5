#include "gammaconv/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gammaconv/errors.hpp"

namespace gammaconv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRescaleAbove = 1e280;
constexpr std::size_t kIncompleteGammaMaxIter = 200000;

// Tail of Stirling's series for log Gamma(a), accurate to ~1e-17 for a >= 10.
double stirling_correction(double a) {
    static constexpr std::array<double, 8> coef = {
        1.0 / 12.0,   -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0,
    };
    const double inv = 1.0 / a;
    const double inv2 = inv * inv;
    double sum = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) sum = sum * inv2 + *it;
    return sum * inv;
}

double lower_series(double a, double x) {
    double sum = 1.0;
    double term = 1.0;
    for (std::size_t n = 1; n < kIncompleteGammaMaxIter; ++n) {
        term *= x / (a + static_cast<double>(n));
        sum += term;
        if (term < sum * kEps) return std::exp(ln_poisson_kernel(a, x)) * sum;
    }
    throw ConvergenceError("reg_lower_gamma series", kIncompleteGammaMaxIter, term / sum);
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double upper_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (std::size_t i = 1; i < kIncompleteGammaMaxIter; ++i) {
        const double di = static_cast<double>(i);
        const double an = -di * (di - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return std::exp(ln_poisson_kernel(a, x) + std::log(a)) * h;
        }
    }
    throw ConvergenceError("reg_upper_gamma continued fraction", kIncompleteGammaMaxIter, 0.0);
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || std::isinf(a)) throw DomainError("incomplete gamma: shape must be positive and finite");
    if (!(x >= 0.0)) throw DomainError("incomplete gamma: argument must be non-negative");
}

// Non-negative series for 1F1(a;b;z), a >= 0, b > 0, z >= 0.
SeriesSum positive_kummer(double a, double b, double z, const SeriesControl& ctrl) {
    double sum = 1.0;
    double term = 1.0;
    double log_scale = 0.0;
    int small_run = 0;
    for (std::size_t k = 0; k < ctrl.max_terms; ++k) {
        const double dk = static_cast<double>(k);
        term *= (a + dk) * z / ((b + dk) * (dk + 1.0));
        sum += term;
        if (sum > kRescaleAbove) {
            sum /= kRescaleAbove;
            term /= kRescaleAbove;
            log_scale += std::log(kRescaleAbove);
        }
        small_run = (term < ctrl.rel_tol * sum) ? small_run + 1 : 0;
        if (small_run == 2) return {ScaledValue::from_log(std::log(sum) + log_scale), k + 1};
    }
    throw ConvergenceError("kummer_1f1", ctrl.max_terms, term / sum);
}

}  // namespace

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("SeriesControl: rel_tol must lie in (0, 1)");
    if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be at least 1");
}

ScaledValue ScaledValue::from_real(double v) {
    if (v == 0.0) return zero();
    return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
}

double ScaledValue::to_real() const {
    if (sign == 0) return 0.0;
    if (log_magnitude > std::log(std::numeric_limits<double>::max())) {
        throw std::overflow_error("ScaledValue: magnitude exceeds double range");
    }
    return sign * std::exp(log_magnitude);
}

ScaledValue ScaledValue::operator*(const ScaledValue& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return {log_magnitude + o.log_magnitude, sign * o.sign};
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double ln_poisson_kernel(double a, double x) {
    if (x == 0.0) return a == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (a < 10.0) return a * std::log(x) - x - ln_gamma(a + 1.0);
    const double mu = (x - a) / a;
    return a * (std::log1p(mu) - mu) - 0.5 * std::log(2.0 * std::numbers::pi * a) -
           stirling_correction(a);
}

double ln_gamma_pdf(double x, double shape, double scale) {
    const double u = x / scale;
    if (shape >= 1.0) return ln_poisson_kernel(shape - 1.0, u) - std::log(scale);
    return (shape - 1.0) * std::log(u) - u - ln_gamma(shape) - std::log(scale);
}

double reg_lower_gamma(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return lower_series(a, x);
    return 1.0 - upper_fraction(a, x);
}

double reg_upper_gamma(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_fraction(a, x);
}

ScaledValue pochhammer_log(double x, std::size_t m) {
    if (!(x > 0.0)) throw DomainError("pochhammer_log: x must be positive");
    double mantissa = 1.0;
    double log_scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mantissa *= x + static_cast<double>(i);
        if (mantissa > kRescaleAbove) {
            int exponent = 0;
            mantissa = std::frexp(mantissa, &exponent);
            log_scale += exponent * std::numbers::ln2;
        }
    }
    return ScaledValue::from_log(std::log(mantissa) + log_scale);
}

double ln_binomial(double n, double k) {
    if (!(k >= 0.0) || !(n >= k)) throw DomainError("ln_binomial: requires n >= k >= 0");
    return ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0);
}

double ln_multinomial(std::span<const unsigned> parts) {
    double total = 0.0;
    double result = 0.0;
    for (unsigned k : parts) {
        total += k;
        result -= ln_gamma(k + 1.0);
    }
    return result + ln_gamma(total + 1.0);
}

SeriesSum kummer_1f1_series(double a, double b, double z, const SeriesControl& ctrl) {
    ctrl.validate();
    if (!(a >= 0.0) || std::isinf(a)) throw DomainError("kummer_1f1: a must be non-negative and finite");
    if (!(b > 0.0) || std::isinf(b)) throw DomainError("kummer_1f1: b must be positive and finite");
    if (std::isnan(z) || std::isinf(z)) throw DomainError("kummer_1f1: z must be finite");
    if (z == 0.0 || a == 0.0) return {ScaledValue::one(), 1};
    if (z > 0.0) return positive_kummer(a, b, z, ctrl);
    if (b < a) throw DomainError("kummer_1f1: negative argument requires b >= a");
    SeriesSum mirrored = (a == b) ? SeriesSum{ScaledValue::one(), 1} : positive_kummer(b - a, b, -z, ctrl);
    mirrored.value.log_magnitude += z;
    return mirrored;
}

}  // namespace gammaconv
