#pragma once

// Event counts N(t) = sup{n : U_1 + ... + U_n <= t} of a renewal process whose
// holding times U_k are i.i.d. mixtures of exponentials (scale = mean).

#include <cstddef>

#include "gammaconv/methods.hpp"
#include "gammaconv/model.hpp"
#include "gammaconv/specfun.hpp"

namespace gammaconv::renewal {

struct RenewalQuery {
    double t = 1.0;
    unsigned n = 0;
};

inline constexpr std::size_t kDefaultCompositionBudget = 1'000'000;

/// H(y; (a1,b1), (a2,b2)) = F(y; (a1,b1),(a2,b2)) - F(y; (a1+1,b1),(a2,b2)) in closed 1F1 form.
/// Zero shapes denote point masses at zero; the empty convolution has F = 1.
double h_diff(double y, unsigned a1, double b1, unsigned a2, double b2, const SeriesControl& ctrl = {});

/// Two-component mixture through the 1F1 formula. A mixture that validates to a
/// single component reduces to the Poisson law.
double pmf_s2(const MixtureExpSpec& mix, RenewalQuery q, const SeriesControl& ctrl = {});

/// Two-component mixture with H taken as a difference of two distribution
/// function evaluations by the given method (mathai or moschopoulos).
double pmf_raw_s2(const MixtureExpSpec& mix, RenewalQuery q, Method method, const SeriesControl& ctrl = {});

/// Any number of components: sum over compositions (k_1..k_S) of n with H_s
/// as distribution function differences by the given method.
double pmf_general(const MixtureExpSpec& mix, RenewalQuery q, Method method, const SeriesControl& ctrl = {},
                   std::size_t composition_budget = kDefaultCompositionBudget);

/// Number of compositions of n into s parts, saturating at SIZE_MAX.
std::size_t composition_count(unsigned n, std::size_t s);

}  // namespace gammaconv::renewal
