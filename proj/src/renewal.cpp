#include "gammaconv/renewal.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gamma_series.hpp"
#include "gammaconv/barnabani.hpp"
#include "gammaconv/errors.hpp"
#include "gammaconv/mathai.hpp"
#include "gammaconv/moschopoulos.hpp"

namespace gammaconv::renewal {

namespace {

// k * log(p), with 0 * log(0) = 0.
double xlog(double k, double p) { return k == 0.0 ? 0.0 : k * std::log(p); }

void check_query(const RenewalQuery& q) {
    if (!(q.t > 0.0) || !std::isfinite(q.t)) throw DomainError("renewal: time horizon must be positive");
}

double poisson_pmf(double t, double scale, unsigned n) {
    return std::exp(ln_poisson_kernel(static_cast<double>(n), t / scale));
}

// Distribution function of a convolution of Erlang components at t. Zero
// shapes are dropped; nothing left means a point mass at zero.
double erlang_cdf(const std::vector<unsigned>& shapes, const std::vector<double>& scales, double t, Method method,
                  const SeriesControl& ctrl) {
    std::vector<GammaComponent> comps;
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        if (shapes[s] > 0) comps.push_back({static_cast<double>(shapes[s]), scales[s]});
    }
    if (comps.empty()) return 1.0;
    const ConvolutionSpec spec = canonicalize(ConvolutionSpec(std::move(comps)));
    if (spec.size() == 1) return reg_lower_gamma(spec[0].shape, t / spec[0].scale);
    if (method == Method::approx) {
        // Some weight laws have a third cumulant no GNBD can reach; use the exact series there.
        try {
            return evaluate(Quantity::cdf, method, spec, t, ctrl).value;
        } catch (const FitError&) {
            return evaluate(Quantity::cdf, Method::moschopoulos, spec, t, ctrl).value;
        }
    }
    return evaluate(Quantity::cdf, method, spec, t, ctrl).value;
}

// When the only shapes present (after the increment) share one scale, the
// difference is a Poisson mass and needs no subtraction.
bool single_scale(const std::vector<unsigned>& shapes, const std::vector<double>& scales, std::size_t bumped,
                  double& scale_out) {
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        if (s != bumped && shapes[s] > 0 && scales[s] != scales[bumped]) return false;
    }
    scale_out = scales[bumped];
    return true;
}

double difference_h(const std::vector<unsigned>& shapes, const std::vector<double>& scales, std::size_t bumped,
                    double t, Method method, const SeriesControl& ctrl, double base_cdf) {
    unsigned total = 0;
    for (unsigned k : shapes) total += k;
    double scale = 0.0;
    if (single_scale(shapes, scales, bumped, scale)) return poisson_pmf(t, scale, total);
    std::vector<unsigned> bumped_shapes = shapes;
    ++bumped_shapes[bumped];
    return base_cdf - erlang_cdf(bumped_shapes, scales, t, method, ctrl);
}

Method exact_or_approx(Method m) {
    if (m == Method::automatic) return Method::moschopoulos;
    return m;
}

}  // namespace

double h_diff(double y, unsigned a1, double b1, unsigned a2, double b2, const SeriesControl& ctrl) {
    if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("h_diff: y must be positive");
    if (!(b1 > 0.0) || !(b2 > 0.0)) throw DomainError("h_diff: scales must be positive");
    const double s1 = a1;
    const double s2 = a2;
    const double total = s1 + s2;
    const double log_prefix = xlog(total, y) - y / b1 - xlog(s1, b1) - xlog(s2, b2) - ln_gamma(total + 1.0);
    const ScaledValue hyper = kummer_1f1(s2, total + 1.0, y * (1.0 / b1 - 1.0 / b2), ctrl);
    return std::exp(log_prefix + hyper.log_magnitude);
}

double pmf_s2(const MixtureExpSpec& mix_in, RenewalQuery q, const SeriesControl& ctrl) {
    check_query(q);
    const MixtureExpSpec mix = validate_mixture(mix_in);
    if (mix.size() == 1) return poisson_pmf(q.t, mix.scales[0], q.n);
    if (mix.size() != 2) throw DomainError("pmf_s2: a two-component mixture is required");

    const double p = mix.weights[0];
    const double b1 = mix.scales[0];
    const double b2 = mix.scales[1];
    const double n = q.n;
    const double t = q.t;
    const double z = t * (1.0 / b1 - 1.0 / b2);
    const double log_tn = xlog(n, t) - ln_gamma(n + 1.0);

    detail::CompensatedSum total;
    for (unsigned k = 0; k <= q.n; ++k) {
        const double kk = k;
        const double log_common = log_tn - xlog(kk, b1) - xlog(n - kk, b2) + ln_binomial(n, kk) + xlog(kk, p) +
                                  xlog(n - kk, 1.0 - p);
        const double log_psi1 = -t / b1 + kummer_1f1(n - kk, n + 1.0, z, ctrl).log_magnitude;
        const double log_psi2 = -t / b2 + kummer_1f1(kk, n + 1.0, -z, ctrl).log_magnitude;
        total.add(p * std::exp(log_common + log_psi1) + (1.0 - p) * std::exp(log_common + log_psi2));
    }
    return total.value();
}

double pmf_raw_s2(const MixtureExpSpec& mix_in, RenewalQuery q, Method method, const SeriesControl& ctrl) {
    check_query(q);
    if (method != Method::mathai && method != Method::moschopoulos) {
        throw DomainError("pmf_raw_s2: method must be mathai or moschopoulos");
    }
    const MixtureExpSpec mix = validate_mixture(mix_in);
    if (mix.size() == 1) return poisson_pmf(q.t, mix.scales[0], q.n);
    if (mix.size() != 2) throw DomainError("pmf_raw_s2: a two-component mixture is required");

    const double p = mix.weights[0];
    const std::vector<double> scales = mix.scales;
    const double n = q.n;
    // H(t; (a1, b_first), (a2, b_other)) as F - F with the first shape raised by one.
    const auto h = [&](unsigned k1, unsigned k2, std::size_t bumped) {
        const std::vector<unsigned> shapes = {k1, k2};
        std::vector<unsigned> raised = shapes;
        ++raised[bumped];
        return erlang_cdf(shapes, scales, q.t, method, ctrl) - erlang_cdf(raised, scales, q.t, method, ctrl);
    };

    detail::CompensatedSum total;
    for (unsigned k = 0; k <= q.n; ++k) {
        const double kk = k;
        const double weight = std::exp(ln_binomial(n, kk) + xlog(kk, p) + xlog(n - kk, 1.0 - p));
        total.add((p * h(k, q.n - k, 0) + (1.0 - p) * h(k, q.n - k, 1)) * weight);
    }
    return total.value();
}

std::size_t composition_count(unsigned n, std::size_t s) {
    if (s == 0) return 0;
    // C(n + s - 1, s - 1) computed incrementally with saturation.
    long double count = 1.0L;
    for (std::size_t i = 1; i < s; ++i) {
        count = count * static_cast<long double>(n + i) / static_cast<long double>(i);
        if (count > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2)) {
            return std::numeric_limits<std::size_t>::max();
        }
    }
    return static_cast<std::size_t>(std::llround(count));
}

double pmf_general(const MixtureExpSpec& mix_in, RenewalQuery q, Method method_in, const SeriesControl& ctrl,
                   std::size_t composition_budget) {
    check_query(q);
    const MixtureExpSpec mix = validate_mixture(mix_in);
    const Method method = exact_or_approx(method_in);
    const std::size_t parts = mix.size();
    const std::size_t count = composition_count(q.n, parts);
    if (count > composition_budget) {
        throw DomainError("pmf_general: " + std::to_string(count) + " compositions exceed the budget of " +
                          std::to_string(composition_budget));
    }

    std::vector<double> log_p(parts);
    for (std::size_t s = 0; s < parts; ++s) log_p[s] = std::log(mix.weights[s]);

    detail::CompensatedSum total;
    mathai::for_each_composition(q.n, parts, [&](const std::vector<unsigned>& k) {
        double log_weight = ln_multinomial(k);
        for (std::size_t s = 0; s < parts; ++s) log_weight += k[s] == 0 ? 0.0 : k[s] * log_p[s];
        const double base_cdf = erlang_cdf(k, mix.scales, q.t, method, ctrl);
        double mixed = 0.0;
        for (std::size_t s = 0; s < parts; ++s) {
            mixed += mix.weights[s] * difference_h(k, mix.scales, s, q.t, method, ctrl, base_cdf);
        }
        total.add(mixed * std::exp(log_weight));
    });
    return total.value();
}

}  // namespace gammaconv::renewal
