#include <doctest.h>

#include <cmath>
#include <vector>

#include "checks.hpp"
#include "gammaconv/errors.hpp"
#include "gammaconv/mathai.hpp"
#include "gammaconv/moschopoulos.hpp"
#include "gammaconv/oracle.hpp"
#include "gammaconv/settings.hpp"

using namespace gammaconv;
using checks::rel_diff;

namespace {

const ConvolutionSpec kHypo2 = ConvolutionSpec::from_lists({1, 1}, {1, 2});
const ConvolutionSpec kHypo3 = ConvolutionSpec::from_lists({1, 1, 1}, {1, 2, 4});

}  // namespace

TEST_CASE("density2 and cdf2 on the two-rate hypoexponential") {
    CHECK(mathai::density2(kHypo2, 1.0).value ==
          doctest::Approx(std::exp(-0.5) - std::exp(-1.0)).epsilon(1e-14));
    CHECK(mathai::cdf2(kHypo2, 1.0).value ==
          doctest::Approx(1.0 - 2.0 * std::exp(-0.5) + std::exp(-1.0)).epsilon(1e-14));
    CHECK(mathai::cdf2(kHypo2, 50.0).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mathai::cdf2(kHypo2, 1e-300).value < 1e-290);
    CHECK(mathai::cdf2(kHypo2, 0.0).value == 0.0);
}

TEST_CASE("equal scales reduce to one gamma") {
    const auto s = ConvolutionSpec::from_lists({1.5, 2.0}, {0.7, 0.7});
    for (double x : {0.1, 1.0, 3.3, 9.0}) {
        CHECK(rel_diff(mathai::density2(s, x).value, oracle::gamma_density(x, 3.5, 0.7)) < 1e-13);
        CHECK(rel_diff(mathai::cdf2(s, x).value, reg_lower_gamma(3.5, x / 0.7)) < 1e-13);
    }
}

TEST_CASE("component order does not matter") {
    const auto a = ConvolutionSpec::from_lists({2, 2}, {0.4, 0.3});
    const auto b = ConvolutionSpec::from_lists({2, 2}, {0.3, 0.4});
    CHECK(mathai::density2(a, 1.4).value == mathai::density2(b, 1.4).value);
    CHECK(mathai::cdf2(a, 1.4).value == mathai::cdf2(b, 1.4).value);
    const auto c = ConvolutionSpec::from_lists({0.2, 2, 5}, {4, 0.3, 1.1});
    const auto d = ConvolutionSpec::from_lists({5, 0.2, 2}, {1.1, 4, 0.3});
    CHECK(rel_diff(mathai::density_n(c, 3.0).value, mathai::density_n(d, 3.0).value) < 1e-12);
    CHECK(rel_diff(mathai::cdf_n(c, 3.0).value, mathai::cdf_n(d, 3.0).value) < 1e-12);
}

TEST_CASE("nested series reduce to the two-component forms") {
    const auto s = ConvolutionSpec::from_lists({2.5, 0.7}, {0.4, 3.0});
    for (double x : {0.05, 0.5, 2.0, 8.0, 20.0}) {
        CHECK(rel_diff(mathai::density_n(s, x).value, mathai::density2(s, x).value) < 1e-12);
        CHECK(rel_diff(mathai::cdf_n(s, x).value, mathai::cdf2(s, x).value) < 1e-12);
    }
}

TEST_CASE("three-rate hypoexponential") {
    const std::vector<double> rates{1.0, 0.5, 0.25};
    for (double x : {0.2, 2.0, 7.0, 25.0}) {
        CHECK(rel_diff(mathai::density_n(kHypo3, x).value, oracle::hypoexp_closed_form(rates, x)) < 1e-12);
        const double quad =
            oracle::integrate([&](double u) { return oracle::hypoexp_closed_form(rates, u); }, 0.0, x).value;
        CHECK(rel_diff(mathai::cdf_n(kHypo3, x).value, quad) < 1e-12);
    }
}

TEST_CASE("nested series agree with the single series on small shapes") {
    const auto s = ConvolutionSpec::from_lists({0.2, 0.2, 0.2}, {4, 3, 2});
    for (double x : oracle::bulk_grid(s, 20000, 5, 25)) {
        CHECK(rel_diff(mathai::density_n(s, x).value, moschopoulos::density(s, x).value) < 1e-10);
        CHECK(rel_diff(mathai::cdf_n(s, x).value, moschopoulos::cdf(s, x).value) < 1e-10);
    }
}

TEST_CASE("cdf_n saturates and its weight mass stays bounded") {
    const auto s = ConvolutionSpec::from_lists({2, 2, 2}, {4, 0.3, 0.2});
    const auto r = mathai::cdf_n(s, 400.0);
    REQUIRE(r.tail_bound);
    CHECK(std::fabs(r.value - 1.0) <= 1e-12 + *r.tail_bound);
    const auto trace = mathai::cdf_n_trace(s, 20.0);
    REQUIRE(!trace.empty());
    double prev = 0.0;
    for (const auto& st : trace) {
        CHECK(st.accumulated_mass >= prev);
        CHECK(st.accumulated_mass <= 1.0 + 1e-12);
        prev = st.accumulated_mass;
    }
    CHECK(trace.back().partial_sum.to_real() == doctest::Approx(mathai::cdf_n(s, 20.0).value).epsilon(1e-13));
}

TEST_CASE("density at the origin") {
    CHECK(mathai::density2(ConvolutionSpec::from_lists({1, 1}, {1, 2}), 0.0).value == 0.0);
    const auto unit = ConvolutionSpec::from_lists({0.5, 0.5}, {1, 2});
    CHECK(mathai::density2(unit, 0.0).value == doctest::Approx(std::pow(0.5, 0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(mathai::density2(ConvolutionSpec::from_lists({0.2, 0.2}, {1, 2}), 0.0), DomainError);
    CHECK(mathai::density_n(ConvolutionSpec::from_lists({1, 1, 1}, {1, 2, 3}), 0.0).value == 0.0);
}

TEST_CASE("argument errors") {
    CHECK_THROWS_AS(mathai::density2(kHypo3, 1.0), DomainError);
    CHECK_THROWS_AS(mathai::cdf2(ConvolutionSpec::from_lists({1}, {1}), 1.0), DomainError);
    CHECK_THROWS_AS(mathai::density2(kHypo2, -1.0), DomainError);
    CHECK_THROWS_AS(mathai::cdf_n(kHypo3, std::nan("")), DomainError);
    CHECK_THROWS_AS(mathai::density_n(ConvolutionSpec::from_lists({20, 20, 20}, {4, 0.3, 0.2}), 100.0,
                                      SeriesControl{1e-13, 5}),
                    ConvergenceError);
}

TEST_CASE("compositions are enumerated in colex order") {
    std::vector<std::vector<unsigned>> seen;
    mathai::for_each_composition(2, 3, [&](const std::vector<unsigned>& k) { seen.push_back(k); });
    const std::vector<std::vector<unsigned>> expected{{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                                                      {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
    CHECK(seen == expected);
    std::size_t count = 0;
    mathai::for_each_composition(7, 4, [&](const std::vector<unsigned>&) { ++count; });
    CHECK(count == 120);
}
