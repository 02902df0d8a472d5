#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gammaconv/mathai.hpp"
#include "gammaconv/methods.hpp"
#include "gammaconv/moschopoulos.hpp"
#include "gammaconv/oracle.hpp"
#include "gammaconv/renewal.hpp"
#include "gammaconv/specfun.hpp"

namespace gammaconv::checks {

namespace {

double uniform_in(oracle::Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

double log_uniform_in(oracle::Rng& rng, double lo, double hi) {
    return std::exp(uniform_in(rng, std::log(lo), std::log(hi)));
}

unsigned int_in(oracle::Rng& rng, unsigned lo, unsigned hi) {
    return lo + static_cast<unsigned>(rng.next() % (hi - lo + 1));
}

void record(SuiteResult& r, bool ok, double stat, const std::string& what) {
    ++r.cases;
    r.worst = std::max(r.worst, stat);
    if (!ok && r.pass) {
        r.pass = false;
        r.detail = what;
    }
}

std::string describe(const ConvolutionSpec& s) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << '(' << s[i].shape << ',' << s[i].scale << ')';
    return os.str();
}

// Increasing points spread over the central part of a spec's distribution.
std::vector<double> random_bulk_points(oracle::Rng& rng, const ConvolutionSpec& spec, std::size_t count) {
    auto sample = oracle::sample_convolution(spec, 2000, rng.next());
    std::sort(sample.begin(), sample.end());
    std::vector<double> pts;
    for (std::size_t i = 0; i < count; ++i) pts.push_back(oracle::quantile(sample, uniform_in(rng, 0.001, 0.999)));
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

ConvolutionSpec random_spec(std::uint64_t seed, std::size_t parts, double shape_lo, double shape_hi) {
    oracle::Rng rng(seed);
    std::vector<GammaComponent> comps;
    for (std::size_t i = 0; i < parts; ++i) {
        comps.push_back({log_uniform_in(rng, shape_lo, shape_hi), log_uniform_in(rng, 0.2, 5.0)});
    }
    return ConvolutionSpec(std::move(comps));
}

SuiteResult kummer_transformation(std::uint64_t seed, std::size_t cases) {
    oracle::Rng rng(seed);
    SuiteResult r;
    for (std::size_t i = 0; i < cases; ++i) {
        const double b = log_uniform_in(rng, 0.05, 60.0);
        const double a = b * rng.uniform();
        const double z = uniform_in(rng, -60.0, 60.0);
        const ScaledValue lhs = kummer_1f1(a, b, z);
        const ScaledValue rhs = kummer_1f1(b - a, b, -z);
        // Both sides are positive; compare logs to stay clear of overflow.
        const double rel = std::fabs(std::expm1(z + rhs.log_magnitude - lhs.log_magnitude));
        std::ostringstream what;
        what.precision(17);
        what << "a=" << a << " b=" << b << " z=" << z << " rel=" << rel;
        record(r, rel <= 1e-10 && lhs.sign == 1 && rhs.sign == 1, rel, what.str());
    }
    return r;
}

SuiteResult monotone_cdf(std::uint64_t seed, std::size_t cases) {
    oracle::Rng rng(seed);
    SuiteResult r;
    for (std::size_t i = 0; i < cases; ++i) {
        const std::size_t parts = int_in(rng, 1, 3);
        const ConvolutionSpec spec = random_spec(rng.next(), parts, 0.2, 20.0);
        const Method method = (i % 2 == 0) ? Method::moschopoulos : Method::mathai;
        const SeriesControl ctrl = default_control(method, spec);
        const auto pts = random_bulk_points(rng, spec, 12);
        double prev = 0.0;
        bool ok = true;
        double worst_drop = 0.0;
        for (double y : pts) {
            const double f = evaluate(Quantity::cdf, method, spec, y, ctrl).value;
            const double d = evaluate(Quantity::density, method, spec, y, ctrl).value;
            worst_drop = std::max(worst_drop, prev - f);
            ok = ok && f >= prev && f >= 0.0 && f <= 1.0 && d >= 0.0;
            prev = f;
        }
        record(r, ok, worst_drop, std::string(to_string(method)) + " " + describe(spec));
    }
    return r;
}

SuiteResult finite_difference(std::uint64_t seed, std::size_t cases) {
    oracle::Rng rng(seed);
    SuiteResult r;
    for (std::size_t i = 0; i < cases; ++i) {
        const std::size_t parts = int_in(rng, 1, 3);
        const ConvolutionSpec spec = random_spec(rng.next(), parts, 0.2, 20.0);
        const double y = random_bulk_points(rng, spec, 1).front();
        const double h = 1e-5 * y;
        const double fd = oracle::fd_derivative([&](double v) { return moschopoulos::cdf(spec, v).value; }, y, h);
        const double d = moschopoulos::density(spec, y).value;
        const double rel = rel_diff(fd, d);
        std::ostringstream what;
        what.precision(17);
        what << describe(spec) << " y=" << y << " rel=" << rel;
        record(r, rel <= 1e-6, rel, what.str());
    }
    return r;
}

SuiteResult weight_pmf_negative_binomial(std::uint64_t seed, std::size_t cases) {
    oracle::Rng rng(seed);
    SuiteResult r;
    for (std::size_t i = 0; i < cases; ++i) {
        const ConvolutionSpec spec = canonicalize(random_spec(rng.next(), 2, 0.2, 20.0));
        if (spec.size() != 2) continue;
        const double size = spec[1].shape;
        const double p = spec[0].scale / spec[1].scale;
        const auto k = int_in(rng, 0, 200);
        const double kk = k;
        const double log_nb = std::lgamma(size + kk) - std::lgamma(size) - std::lgamma(kk + 1.0) +
                              size * std::log(p) + kk * std::log1p(-p);
        const double w = moschopoulos::weight_pmf(spec, k);
        // Below the normal range only a vanishing mass is required.
        const double rel = log_nb < -700.0 ? (w < 1e-290 ? 0.0 : 1.0) : std::fabs(std::expm1(std::log(w) - log_nb));
        std::ostringstream what;
        what.precision(17);
        what << describe(spec) << " k=" << k << " rel=" << rel;
        record(r, rel <= 1e-12, rel, what.str());
    }
    return r;
}

SuiteResult h_diff_nonnegative(std::uint64_t seed, std::size_t cases) {
    oracle::Rng rng(seed);
    SuiteResult r;
    for (std::size_t i = 0; i < cases; ++i) {
        const double y = log_uniform_in(rng, 0.01, 50.0);
        const unsigned a1 = int_in(rng, 0, 60);
        const unsigned a2 = int_in(rng, 0, 60);
        const double b1 = log_uniform_in(rng, 0.2, 5.0);
        const double b2 = log_uniform_in(rng, 0.2, 5.0);
        const double h = renewal::h_diff(y, a1, b1, a2, b2);
        std::ostringstream what;
        what.precision(17);
        what << "y=" << y << " a1=" << a1 << " b1=" << b1 << " a2=" << a2 << " b2=" << b2 << " h=" << h;
        record(r, h >= 0.0 && h <= 1.0 && std::isfinite(h), h < 0.0 ? -h : 0.0, what.str());
    }
    return r;
}

}  // namespace gammaconv::checks
