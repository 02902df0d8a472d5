#pragma once

// Single gamma series with recursively generated coefficients:
//   f(x) = C sum_k delta_k g(x; rho + k, beta1),  C = prod (beta1 / beta_i)^{alpha_i}.
// The masses C * delta_k form a probability law on the non-negative integers.

#include <cstddef>
#include <span>
#include <vector>

#include "gammaconv/model.hpp"
#include "gammaconv/specfun.hpp"

namespace gammaconv::moschopoulos {

class WeightDistribution {
public:
    /// Canonicalizes the spec; holds delta_0 = 1 on construction.
    explicit WeightDistribution(const ConvolutionSpec& spec);

    /// Grows the coefficient tables through index upto. Existing entries never change.
    void extend(std::size_t upto);

    std::size_t size() const { return deltas_.size(); }
    double c() const { return c_; }
    double log_c() const { return log_c_; }
    double rho() const { return rho_; }
    double beta1() const { return beta1_; }
    std::span<const double> deltas() const { return deltas_; }
    /// gamma_k for k >= 1; entry 0 is unused and zero.
    std::span<const double> gammas() const { return gammas_; }

    /// C * delta_k; k must be below size().
    double pmf(std::size_t k) const;

private:
    std::vector<double> shapes_;
    std::vector<double> log1m_ratio_;  // log(1 - beta1 / beta_i), i >= 2
    std::vector<double> power_sums_;   // k * gamma_k
    std::vector<double> gammas_;
    std::vector<double> deltas_;
    double c_ = 1.0;
    double log_c_ = 0.0;
    double rho_ = 0.0;
    double beta1_ = 1.0;
};

WeightDistribution build_weights(const ConvolutionSpec& spec, std::size_t upto);

EvalResult density(const ConvolutionSpec& spec, double x, const SeriesControl& ctrl = {});
EvalResult cdf(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl = {});

/// C * delta_k.
double weight_pmf(const ConvolutionSpec& spec, std::size_t k);

}  // namespace gammaconv::moschopoulos
