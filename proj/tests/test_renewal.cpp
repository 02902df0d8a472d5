#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "checks.hpp"
#include "gammaconv/errors.hpp"
#include "gammaconv/mathai.hpp"
#include "gammaconv/oracle.hpp"
#include "gammaconv/renewal.hpp"
#include "gammaconv/settings.hpp"

using namespace gammaconv;
using checks::rel_diff;

namespace {

double poisson(double mean, unsigned n) {
    return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

}  // namespace

TEST_CASE("h_diff special cases") {
    // Empty convolution minus one exponential: the exponential survival.
    CHECK(renewal::h_diff(1.7, 0, 2.0, 0, 5.0) == doctest::Approx(std::exp(-1.7 / 2.0)).epsilon(1e-14));

    const auto lo = ConvolutionSpec::from_lists({1, 1}, {1, 2});
    const auto hi = ConvolutionSpec::from_lists({2, 1}, {1, 2});
    CHECK(renewal::h_diff(1.0, 1, 1.0, 1, 2.0) ==
          doctest::Approx(mathai::cdf2(lo, 1.0).value - mathai::cdf2(hi, 1.0).value).epsilon(1e-12));

    // Equal scales: G(y; a) - G(y; a + 1) is a Poisson mass.
    const double y = 3.0, b = 1.5;
    CHECK(renewal::h_diff(y, 2, b, 3, b) == doctest::Approx(poisson(y / b, 5)).epsilon(1e-13));

    CHECK_THROWS_AS(renewal::h_diff(0.0, 1, 1.0, 1, 2.0), DomainError);
    CHECK_THROWS_AS(renewal::h_diff(1.0, 1, -1.0, 1, 2.0), DomainError);
}

TEST_CASE("two-component pmf examples") {
    const MixtureExpSpec even{{0.5, 0.5}, {1.0, 2.0}};
    const double survival = 0.5 * std::exp(-1.0) + 0.5 * std::exp(-0.5);
    CHECK(renewal::pmf_s2(even, {1.0, 0}) == doctest::Approx(survival).epsilon(1e-14));
    CHECK(renewal::pmf_raw_s2(even, {1.0, 0}, Method::mathai) == doctest::Approx(survival).epsilon(1e-14));
    CHECK(renewal::pmf_s2({{1.0}, {1.0}}, {2.0, 3}) == doctest::Approx(0.18044704431548356).epsilon(1e-14));
    CHECK(renewal::pmf_s2({{1.0, 0.0}, {1.0, 7.0}}, {2.0, 3}) ==
          doctest::Approx(0.18044704431548356).epsilon(1e-14));

    const MixtureExpSpec mix{{0.5, 0.5}, {4.0, 0.3}};
    const double p = renewal::pmf_s2(mix, {10.0, 18});
    CHECK(std::fabs(p - renewal::pmf_raw_s2(mix, {10.0, 18}, Method::mathai)) <= 1e-10);
    CHECK(std::fabs(p - renewal::pmf_raw_s2(mix, {10.0, 18}, Method::moschopoulos)) <= 1e-10);
}

TEST_CASE("the raw form on the two-scale study grid") {
    for (const auto& st : settings::renewal_two_component()) {
        const auto mix = st.mixture();
        const renewal::RenewalQuery q{settings::kRenewalHorizon, st.n};
        const double a = renewal::pmf_raw_s2(mix, q, Method::mathai);
        const double b = renewal::pmf_raw_s2(mix, q, Method::moschopoulos);
        CHECK(a > 0.0);
        CHECK(a < 1.0);
        CHECK(std::fabs(a - b) <= 1e-10);
        CHECK(std::fabs(a - renewal::pmf_s2(mix, q)) <= 1e-10);
        CHECK(std::fabs(a - renewal::pmf_general(mix, q, Method::moschopoulos)) <= 1e-10);
    }
}

TEST_CASE("a single exponential gives Poisson counts") {
    for (unsigned n = 0; n <= 50; ++n) {
        const double expected = poisson(10.0 / 0.7, n);
        CHECK(rel_diff(renewal::pmf_general({{1.0}, {0.7}}, {10.0, n}, Method::moschopoulos), expected) <= 1e-12);
        CHECK(rel_diff(renewal::pmf_s2({{1.0}, {0.7}}, {10.0, n}), expected) <= 1e-12);
    }
}

TEST_CASE("three scales with the reconstructed weights") {
    for (const auto& st : settings::renewal_three_component()) {
        const auto mix = st.mixture();
        const double exact = renewal::pmf_general(mix, {settings::kRenewalHorizon, st.n}, Method::moschopoulos);
        CAPTURE(st.n);
        // Reference values carry five significant digits.
        CHECK(std::fabs(exact - st.reference_pmf) <= 0.5e-4 * st.reference_pmf + 1e-15);
    }
    const settings::RenewalSetting first = settings::renewal_three_component().front();
    const double equal = renewal::pmf_general(first.equal_weight_mixture(), {10.0, first.n}, Method::moschopoulos);
    CHECK(std::fabs(equal - first.reference_pmf) > 1e-3);
}

TEST_CASE("methods agree for three scales") {
    const MixtureExpSpec mix{{0.2, 0.3, 0.5}, {4.0, 3.0, 0.2}};
    for (unsigned n : {0u, 1u, 5u, 12u}) {
        const double a = renewal::pmf_general(mix, {10.0, n}, Method::mathai);
        const double b = renewal::pmf_general(mix, {10.0, n}, Method::moschopoulos);
        const double c = renewal::pmf_general(mix, {10.0, n}, Method::approx);
        CHECK(std::fabs(a - b) <= 1e-12);
        CHECK(std::fabs(c - b) <= 2e-2 * b);
    }
}

TEST_CASE("pmf sums to one") {
    const MixtureExpSpec mix{{0.1, 0.9}, {0.4, 0.3}};
    double total = 0.0;
    for (unsigned n = 0; n < 200; ++n) {
        const double p = renewal::pmf_s2(mix, {10.0, n});
        total += p;
        CHECK(total <= 1.0 + 1e-10);
        if (n > 60 && p < 1e-14) break;
    }
    CHECK(total >= 1.0 - 1e-8);
}

TEST_CASE("composition budget and arguments") {
    CHECK(renewal::composition_count(2, 3) == 6);
    CHECK(renewal::composition_count(0, 4) == 1);
    CHECK(renewal::composition_count(10, 1) == 1);
    const MixtureExpSpec mix{{0.2, 0.3, 0.5}, {4.0, 3.0, 0.2}};
    CHECK_THROWS_AS(renewal::pmf_general(mix, {10.0, 30}, Method::moschopoulos, {}, 100), DomainError);
    CHECK_THROWS_AS(renewal::pmf_raw_s2({{0.5, 0.5}, {1, 2}}, {1.0, 2}, Method::approx), DomainError);
    CHECK_THROWS_AS(renewal::pmf_s2({{0.5, 0.5}, {1, 2}}, {0.0, 2}), DomainError);
    CHECK_THROWS_AS(renewal::pmf_s2(mix, {1.0, 2}), DomainError);
}

TEST_CASE("Monte Carlo frequencies") {
    const MixtureExpSpec mix{{0.1, 0.2, 0.7}, {4.0, 3.0, 2.0}};
    const std::size_t draws = 200000;
    const auto counts = oracle::sample_renewal_count(mix, 10.0, draws, 77);
    for (unsigned n : {2u, 4u, 7u}) {
        const double p = renewal::pmf_general(mix, {10.0, n}, Method::moschopoulos);
        const double freq =
            static_cast<double>(std::count(counts.begin(), counts.end(), n)) / static_cast<double>(draws);
        CHECK(std::fabs(freq - p) <= 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(draws)));
    }
}
