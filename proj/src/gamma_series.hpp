#pragma once

// Shared summation of gamma-mixture series
//   f(x) = sum_k w_k g(x; rho + k, beta1),   F(y) = sum_k w_k G(y / beta1; rho + k)
// where {w_k} is a probability mass function on k >= 0 supplied in order.
// Truncation uses the unconsumed weight mass times the largest remaining kernel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "gammaconv/errors.hpp"
#include "gammaconv/model.hpp"
#include "gammaconv/specfun.hpp"

namespace gammaconv::detail {

// Rounding allowance added to 1 - sum(w) so the mass bound never reaches zero early.
inline constexpr double kMassFloor = 16.0 * std::numeric_limits<double>::epsilon();

// Neumaier summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) comp_ += (sum_ - t) + v;
        else comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// log(sum exp(l_i)) accumulated without overflow.
class LogAccumulator {
public:
    void add(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (acc_ == 0.0) {
            ref_ = log_term;
            acc_ = 1.0;
        } else if (log_term > ref_ + 300.0) {
            acc_ = acc_ * std::exp(ref_ - log_term) + 1.0;
            ref_ = log_term;
        } else {
            acc_ += std::exp(log_term - ref_);
        }
    }
    bool empty() const { return acc_ == 0.0; }
    double log_value() const {
        return acc_ == 0.0 ? -std::numeric_limits<double>::infinity() : ref_ + std::log(acc_);
    }

private:
    double ref_ = 0.0;
    double acc_ = 0.0;
};

inline double remaining_mass(const CompensatedSum& mass) {
    return std::max(1.0 - mass.value(), 0.0) + kMassFloor;
}

inline bool tail_negligible(double tail, double total, double rel_tol) {
    return tail <= rel_tol * total || tail < std::numeric_limits<double>::min();
}

// Negative binomial masses C(size + k - 1, k) q^size (1 - q)^k, generated in order.
// Starts in log space while the masses are below the double range.
class NegativeBinomialWeights {
public:
    NegativeBinomialWeights(double size, double q)
        : size_(size), log1mq_(std::log1p(-q)), log_w_(size * std::log(q)) {
        if (log_w_ > kLinearFrom) w_ = std::exp(log_w_);
    }

    double next() {
        const double out = (w_ > 0.0) ? w_ : std::exp(log_w_);
        const double k = static_cast<double>(k_);
        if (w_ > 0.0) {
            w_ *= (size_ + k) / (k + 1.0) * std::exp(log1mq_);
        } else {
            log_w_ += std::log((size_ + k) / (k + 1.0)) + log1mq_;
            if (log_w_ > kLinearFrom) w_ = std::exp(log_w_);
        }
        ++k_;
        return out;
    }

private:
    static constexpr double kLinearFrom = -690.0;
    double size_;
    double log1mq_;
    double log_w_;
    double w_ = 0.0;
    std::size_t k_ = 0;
};

template <class WeightFn>
EvalResult sum_density_series(double rho, double beta1, double x, const SeriesControl& ctrl,
                              WeightFn&& weight_at, const char* series_name) {
    const double u = x / beta1;
    // g(x; rho + k) increases in k while rho + k < u and decreases afterwards.
    const std::size_t k_peak =
        u > rho ? static_cast<std::size_t>(std::ceil(std::min(u - rho, 1e15))) : std::size_t{0};
    double log_kernel_peak = std::numeric_limits<double>::quiet_NaN();

    CompensatedSum mass;
    CompensatedSum total;
    double log_kernel = ln_gamma_pdf(x, rho, beta1);
    for (std::size_t k = 0; k < ctrl.max_terms; ++k) {
        const double w = weight_at(k);
        mass.add(w);
        if (w > 0.0) total.add(std::exp(std::log(w) + log_kernel));

        const double log_kernel_next = ln_gamma_pdf(x, rho + static_cast<double>(k + 1), beta1);
        double log_kernel_max = log_kernel_next;
        if (k + 1 < k_peak) {
            if (std::isnan(log_kernel_peak)) {
                log_kernel_peak = ln_gamma_pdf(x, rho + static_cast<double>(k_peak), beta1);
            }
            log_kernel_max = log_kernel_peak;
        }
        const double tail = remaining_mass(mass) * std::exp(log_kernel_max);
        if (tail_negligible(tail, total.value(), ctrl.rel_tol)) return {total.value(), k + 1, tail};
        log_kernel = log_kernel_next;
    }
    throw ConvergenceError(series_name, ctrl.max_terms, remaining_mass(mass));
}

template <class WeightFn>
EvalResult sum_cdf_series(double rho, double beta1, double y, const SeriesControl& ctrl, WeightFn&& weight_at,
                          const char* series_name) {
    const double u = y / beta1;
    CompensatedSum mass;
    CompensatedSum total;
    double lower = reg_lower_gamma(rho, u);
    for (std::size_t k = 0; k < ctrl.max_terms; ++k) {
        const double w = weight_at(k);
        mass.add(w);
        total.add(w * lower);
        const double lower_next = reg_lower_gamma(rho + static_cast<double>(k + 1), u);
        const double tail = remaining_mass(mass) * lower_next;
        if (tail_negligible(tail, total.value(), ctrl.rel_tol)) {
            return {std::min(total.value(), 1.0), k + 1, tail};
        }
        lower = lower_next;
    }
    throw ConvergenceError(series_name, ctrl.max_terms, remaining_mass(mass));
}

// Values at the origin shared by every method; see density_at_origin in mathai.
double density_at_origin(const ConvolutionSpec& canonical);

// Validates x and returns true when x is exactly zero.
bool check_point(double x, const char* op);

}  // namespace gammaconv::detail
