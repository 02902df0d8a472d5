#pragma once

// Method-independent reference computations: sampling, quadrature, closed
// forms and finite differences. Nothing here calls into the series methods.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gammaconv/model.hpp"

namespace gammaconv::oracle {

/// xoshiro256** seeded through splitmix64; identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform on the open interval (0, 1).
    double uniform();
    double normal();
    /// Exponential with the given mean.
    double exponential(double mean);
    /// Gamma(shape, scale); Marsaglia-Tsang squeeze, boosted for shape < 1.
    double gamma(double shape, double scale);

private:
    std::uint64_t s_[4];
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Seed for the stream-th independent stream derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

std::vector<double> sample_convolution(const ConvolutionSpec& spec, std::size_t count, std::uint64_t seed);

std::vector<unsigned> sample_renewal_count(const MixtureExpSpec& mix, double t, std::size_t count,
                                           std::uint64_t seed);

/// Sample quantile with linear interpolation between order statistics (sorted input).
double quantile(std::span<const double> sorted, double prob);

/// Fraction of the sorted sample at or below x.
double empirical_cdf(std::span<const double> sorted, double x);

/// Two-sided Kolmogorov-Smirnov critical distance at level alpha for n draws (asymptotic).
double ks_critical(std::size_t n, double alpha);

/// points equally spaced between the lo and hi sample quantiles.
std::vector<double> bulk_grid(std::span<const double> sorted, std::size_t points = 100, double lo = 0.001,
                              double hi = 0.999);

/// Convenience: simulate, sort and build the grid.
std::vector<double> bulk_grid(const ConvolutionSpec& spec, std::size_t samples, std::uint64_t seed,
                              std::size_t points = 100);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

/// Convolution density by iterated tanh-sinh quadrature of the component
/// gamma densities (up to three components). Throws ConvergenceError when the
/// estimated error exceeds tol.
QuadratureResult quad_density(const ConvolutionSpec& spec, double x, double tol = 1e-10);

/// Integral of f over (lo, hi) by tanh-sinh; tolerates integrable endpoint singularities.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

/// Hypoexponential density for distinct rates (all shapes one).
double hypoexp_closed_form(std::span<const double> rates, double x);
double hypoexp_cdf_closed_form(std::span<const double> rates, double x);

/// Gamma(shape, scale) density, written directly from its definition.
double gamma_density(double x, double shape, double scale);

/// Central difference (F(y + h) - F(y - h)) / 2h.
double fd_derivative(const std::function<double(double)>& cdf_fn, double y, double h);

}  // namespace gammaconv::oracle
