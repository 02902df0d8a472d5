#pragma once

// Randomized property suites shared by the doctest suites and the acceptance
// runner. Each suite draws its cases from a fixed seed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gammaconv/model.hpp"

namespace gammaconv::checks {

struct SuiteResult {
    bool pass = true;
    std::size_t cases = 0;
    double worst = 0.0;  // worst observed statistic, meaning depends on the suite
    std::string detail;  // first failing case, if any
};

inline constexpr std::size_t kPropertyCases = 1000;

SuiteResult kummer_transformation(std::uint64_t seed, std::size_t cases = kPropertyCases);
SuiteResult monotone_cdf(std::uint64_t seed, std::size_t cases = kPropertyCases);
SuiteResult finite_difference(std::uint64_t seed, std::size_t cases = kPropertyCases);
SuiteResult weight_pmf_negative_binomial(std::uint64_t seed, std::size_t cases = kPropertyCases);
SuiteResult h_diff_nonnegative(std::uint64_t seed, std::size_t cases = kPropertyCases);

/// Relative difference |a - b| / max(|a|, |b|), zero when both vanish.
double rel_diff(double a, double b);

/// A random spec with `parts` components, log-uniform shapes in [shape_lo, shape_hi]
/// and scales in [0.2, 5].
ConvolutionSpec random_spec(std::uint64_t seed, std::size_t parts, double shape_lo, double shape_hi);

}  // namespace gammaconv::checks
