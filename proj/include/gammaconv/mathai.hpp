#pragma once

// Confluent-hypergeometric representation of the convolution density.
// With beta1 the smallest scale and z_j = (1/beta1 - 1/beta_j) x >= 0,
//   f(x) = x^{gamma-1} e^{-x/beta1} / (prod beta_j^{alpha_j} Gamma(gamma))
//          * sum_{r_2..r_n} prod_j (alpha_j)_{r_j} z_j^{r_j} / r_j!  / (gamma)_r
// which for two components is a single 1F1.

#include <cstddef>
#include <vector>

#include "gammaconv/model.hpp"
#include "gammaconv/specfun.hpp"

namespace gammaconv::mathai {

/// Tolerance used for the nested series when n >= 3.
inline SeriesControl default_nested_control() { return {1e-13, 10000}; }

/// Progress of the shell-by-shell summation after one shell of total degree r.
struct NestedSeriesState {
    std::size_t shell_index = 0;
    double accumulated_mass = 0.0;
    ScaledValue partial_sum;
};

/// Two components, density through 1F1.
EvalResult density2(const ConvolutionSpec& spec, double x, const SeriesControl& ctrl = {});
/// Two components, distribution function as a negative-binomial mixture of incomplete gammas.
EvalResult cdf2(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl = {});

/// Any number of components; nested series summed by shells of constant total degree.
EvalResult density_n(const ConvolutionSpec& spec, double x, const SeriesControl& ctrl = default_nested_control());
EvalResult cdf_n(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl = default_nested_control());

/// cdf_n with the state recorded after every shell.
std::vector<NestedSeriesState> cdf_n_trace(const ConvolutionSpec& spec, double y,
                                           const SeriesControl& ctrl = default_nested_control());

/// Visits every composition of total into parts non-negative integers in
/// colexicographic order, starting from (total, 0, ..., 0).
template <class Fn>
void for_each_composition(unsigned total, std::size_t parts, Fn&& fn) {
    if (parts == 0) return;
    std::vector<unsigned> k(parts, 0);
    k[0] = total;
    while (true) {
        fn(static_cast<const std::vector<unsigned>&>(k));
        std::size_t i = 0;
        while (i < parts && k[i] == 0) ++i;
        if (i + 1 >= parts) return;
        const unsigned v = k[i];
        k[i] = 0;
        ++k[i + 1];
        k[0] = v - 1;
    }
}

}  // namespace gammaconv::mathai
