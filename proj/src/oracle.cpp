#include "gammaconv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gammaconv/errors.hpp"
#include "gammaconv/specfun.hpp"

namespace gammaconv::oracle {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Integrand adaptor: boost passes the distance to the nearer endpoint as a
// signed complement, which we turn into accurate distances to both ends.
template <class F>
QuadratureResult tanh_sinh_on(F&& f, double lo, double hi, double tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double width = hi - lo;
    double error = 0.0;
    const auto wrapped = [&](double, double uc) {
        double left, right;
        if (uc < 0.0) {
            left = -uc;
            right = width - left;
        } else {
            right = uc;
            left = width - right;
        }
        return f(left, right);
    };
    const double value = integrator.integrate(wrapped, lo, hi, tol, &error);
    return {value, error};
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& s : s_) s = splitmix64(state);
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

double Rng::exponential(double mean) { return -mean * std::log(uniform()); }

double Rng::gamma(double shape, double scale) {
    if (shape < 1.0) {
        const double boosted = gamma(shape + 1.0, 1.0);
        return scale * boosted * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    return splitmix64(state);
}

std::vector<double> sample_convolution(const ConvolutionSpec& spec, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(count);
    for (auto& y : out) {
        double sum = 0.0;
        for (const auto& c : spec.components()) sum += rng.gamma(c.shape, c.scale);
        y = sum;
    }
    return out;
}

std::vector<unsigned> sample_renewal_count(const MixtureExpSpec& mix, double t, std::size_t count,
                                           std::uint64_t seed) {
    const MixtureExpSpec checked = validate_mixture(mix);
    if (!(t > 0.0)) throw DomainError("sample_renewal_count: t must be positive");
    std::vector<double> cumulative(checked.size());
    std::partial_sum(checked.weights.begin(), checked.weights.end(), cumulative.begin());
    cumulative.back() = 1.0;

    Rng rng(seed);
    std::vector<unsigned> out(count);
    for (auto& n : out) {
        double clock = 0.0;
        unsigned events = 0;
        while (true) {
            const double u = rng.uniform();
            const std::size_t s = static_cast<std::size_t>(
                std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
            clock += rng.exponential(checked.scales[std::min(s, checked.size() - 1)]);
            if (clock > t) break;
            ++events;
        }
        n = events;
    }
    return out;
}

double quantile(std::span<const double> sorted, double prob) {
    if (sorted.empty()) throw DomainError("quantile: empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("quantile: probability outside [0, 1]");
    const double h = prob * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double empirical_cdf(std::span<const double> sorted, double x) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

double ks_critical(std::size_t n, double alpha) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0) / static_cast<double>(n));
}

std::vector<double> bulk_grid(std::span<const double> sorted, std::size_t points, double lo, double hi) {
    if (points < 2) throw DomainError("bulk_grid: at least two points are required");
    const double a = quantile(sorted, lo);
    const double b = quantile(sorted, hi);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

std::vector<double> bulk_grid(const ConvolutionSpec& spec, std::size_t samples, std::uint64_t seed,
                              std::size_t points) {
    std::vector<double> draws = sample_convolution(spec, samples, seed);
    std::sort(draws.begin(), draws.end());
    return bulk_grid(draws, points);
}

double gamma_density(double x, double shape, double scale) {
    if (x <= 0.0) return 0.0;
    return std::exp((shape - 1.0) * std::log(x) - x / scale - ln_gamma(shape) - shape * std::log(scale));
}

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
    return tanh_sinh_on([&](double left, double) { return f(lo + left); }, lo, hi, tol);
}

namespace {

// Density of Gamma(a, sa) + Gamma(b, sb) at v, integrated over the fraction t
// of v carried by the first term so the singular factors stay bounded:
//   v^{a+b-1} / (G(a) G(b) sa^a sb^b) * int_0^1 t^{a-1} (1-t)^{b-1} e^{-vt/sa - v(1-t)/sb} dt
QuadratureResult pair_density(const GammaComponent& p, const GammaComponent& q, double v, double tol) {
    const QuadratureResult unit = tanh_sinh_on(
        [&](double t, double rest) {
            return std::exp((p.shape - 1.0) * std::log(t) + (q.shape - 1.0) * std::log(rest) - v * t / p.scale -
                            v * rest / q.scale);
        },
        0.0, 1.0, tol);
    const double log_front = (p.shape + q.shape - 1.0) * std::log(v) - ln_gamma(p.shape) - ln_gamma(q.shape) -
                             p.shape * std::log(p.scale) - q.shape * std::log(q.scale);
    const double front = std::exp(log_front);
    return {front * unit.value, front * unit.error};
}

}  // namespace

QuadratureResult quad_density(const ConvolutionSpec& spec, double x, double tol) {
    if (spec.empty() || spec.size() > 3) throw DomainError("quad_density: supports one to three components");
    if (!(x > 0.0)) throw DomainError("quad_density: x must be positive");
    const auto& c = spec.components();
    QuadratureResult result;
    if (spec.size() == 1) {
        result = {gamma_density(x, c[0].shape, c[0].scale), 0.0};
    } else if (spec.size() == 2) {
        result = pair_density(c[0], c[1], x, tol * 1e-2);
    } else {
        double inner_rel = 0.0;
        result = tanh_sinh_on(
            [&](double u, double rest) {
                if (rest <= 0.0) return 0.0;
                const QuadratureResult inner = pair_density(c[1], c[2], rest, tol * 1e-2);
                if (inner.value > 0.0) inner_rel = std::max(inner_rel, inner.error / inner.value);
                return gamma_density(u, c[0].shape, c[0].scale) * inner.value;
            },
            0.0, x, tol * 1e-2);
        result.error += inner_rel * std::fabs(result.value);
    }
    if (!(result.error <= tol * std::max(1.0, std::fabs(result.value)))) {
        throw ConvergenceError("quad_density", 0, result.error);
    }
    return result;
}

namespace {

std::vector<double> hypoexp_coefficients(std::span<const double> rates) {
    std::vector<double> coef(rates.size(), 1.0);
    for (std::size_t i = 0; i < rates.size(); ++i) {
        for (std::size_t j = 0; j < rates.size(); ++j) {
            if (j == i) continue;
            if (rates[j] == rates[i]) throw DomainError("hypoexponential closed form needs distinct rates");
            coef[i] *= rates[j] / (rates[j] - rates[i]);
        }
    }
    return coef;
}

}  // namespace

double hypoexp_closed_form(std::span<const double> rates, double x) {
    const std::vector<double> coef = hypoexp_coefficients(rates);
    double f = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) f += coef[i] * rates[i] * std::exp(-rates[i] * x);
    return f;
}

double hypoexp_cdf_closed_form(std::span<const double> rates, double x) {
    const std::vector<double> coef = hypoexp_coefficients(rates);
    double survival = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) survival += coef[i] * std::exp(-rates[i] * x);
    return 1.0 - survival;
}

double fd_derivative(const std::function<double(double)>& cdf_fn, double y, double h) {
    return (cdf_fn(y + h) - cdf_fn(y - h)) / (2.0 * h);
}

}  // namespace gammaconv::oracle
