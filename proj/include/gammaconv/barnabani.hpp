#pragma once

// Approximate convolution density/CDF: the exact series weights C * delta_k
// are replaced by a generalized negative binomial law (Jain-Consul)
//   P(K = k) = m / (m + b k) * C(m + b k, k) theta^k (1 - theta)^{m + b k - k}
// whose first three cumulants match those of the exact weight law.

#include <cstddef>
#include <vector>

#include "gammaconv/model.hpp"
#include "gammaconv/specfun.hpp"

namespace gammaconv::barnabani {

/// Cumulants of the weight law K.
struct WeightMoments {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
};

struct GnbdParams {
    double m = 1.0;
    double beta_g = 1.0;
    double theta = 0.5;
};

/// K is a sum of independent negative binomials with size alpha_i and success
/// probability beta1 / beta_i; their cumulants add.
WeightMoments weight_cumulants(const ConvolutionSpec& spec);

/// Closed-form cumulants of a GNBD.
WeightMoments gnbd_cumulants(const GnbdParams& p);

/// Matches the first three cumulants. Throws FitError when no admissible
/// (m > 0, beta_g >= 1, 0 < theta < 1, theta * beta_g < 1) solution exists.
GnbdParams fit_gnbd(const WeightMoments& mom);

double gnbd_log_pmf(const GnbdParams& p, std::size_t k);

/// A fitted approximation, reusable across evaluation points.
class Approximation {
public:
    explicit Approximation(const ConvolutionSpec& spec, const SeriesControl& ctrl = {});

    EvalResult density(double x, const SeriesControl& ctrl = {}) const;
    EvalResult cdf(double y, const SeriesControl& ctrl = {}) const;

    bool exact() const { return components_ == 1; }
    const GnbdParams& params() const { return params_; }
    const WeightMoments& moments() const { return moments_; }
    const ConvolutionSpec& spec() const { return spec_; }
    const std::vector<double>& pmf_table() const { return pmf_; }

private:
    ConvolutionSpec spec_;
    std::size_t components_ = 0;
    WeightMoments moments_;
    GnbdParams params_;
    std::vector<double> pmf_;
};

EvalResult density_approx(const ConvolutionSpec& spec, double x, const SeriesControl& ctrl = {});
EvalResult cdf_approx(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl = {});

}  // namespace gammaconv::barnabani
