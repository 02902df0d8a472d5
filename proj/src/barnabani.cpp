#include "gammaconv/barnabani.hpp"

#include <array>
#include <cmath>

#include "gamma_series.hpp"

namespace gammaconv::barnabani {

namespace {

// beta_g is recovered from a quadratic; for an exact negative binomial it
// lands within rounding of one, on either side.
constexpr double kBetaSlack = 1e-6;

}  // namespace

WeightMoments weight_cumulants(const ConvolutionSpec& spec) {
    const ConvolutionSpec canonical = canonicalize(spec);
    const double beta1 = canonical.min_scale();
    WeightMoments mom;
    for (const auto& comp : canonical.components()) {
        const double q = beta1 / comp.scale;
        const double a = comp.shape * (1.0 - q);
        mom.k1 += a / q;
        mom.k2 += a / (q * q);
        mom.k3 += a * (2.0 - q) / (q * q * q);
    }
    return mom;
}

WeightMoments gnbd_cumulants(const GnbdParams& p) {
    const double s = 1.0 - p.theta * p.beta_g;
    const double base = p.m * p.theta * (1.0 - p.theta);
    return {p.m * p.theta / s, base / (s * s * s),
            base * (1.0 - 2.0 * p.theta + p.theta * p.beta_g * (2.0 - p.theta)) / std::pow(s, 5)};
}

GnbdParams fit_gnbd(const WeightMoments& mom) {
    if (!(mom.k2 > 0.0) || !(mom.k1 > 0.0)) throw FitError("fit_gnbd: mean and variance must be positive");
    // With s = 1 - theta * beta_g: k2/k1 = (1-theta)/s^2 and
    // k3/k1 = (k2/k1) (3 s k2/k1 - 1 - s^2 k2/k1) / s, a quadratic in s.
    const double r2 = mom.k2 / mom.k1;
    const double r3 = mom.k3 / mom.k1;
    const double qa = r2 * r2;
    const double qb = r3 - 3.0 * r2 * r2;
    const double disc = qb * qb - 4.0 * qa * r2;
    if (!(disc >= 0.0)) throw FitError("fit_gnbd: third cumulant is not attainable by any GNBD");

    const double root = std::sqrt(disc);
    // Stable pair of roots.
    const double t = -0.5 * (qb + std::copysign(root, qb));
    const std::array<double, 2> candidates = {t / qa, r2 / t};

    bool found = false;
    GnbdParams best;
    double best_distance = 0.0;
    for (double s : candidates) {
        if (!(s > 0.0) || !std::isfinite(s)) continue;
        const double theta = 1.0 - s * s * r2;
        if (!(theta > 0.0 && theta < 1.0)) continue;
        const double beta_g = (1.0 - s) / theta;
        const double m = mom.k1 * s / theta;
        if (!(m > 0.0) || beta_g < 1.0 - kBetaSlack || !(theta * beta_g < 1.0)) continue;
        const double distance = std::fabs(beta_g - 1.0);
        if (!found || distance < best_distance) {
            best = {m, beta_g, theta};
            best_distance = distance;
            found = true;
        }
    }
    if (!found) throw FitError("fit_gnbd: no admissible parameters match the target cumulants");
    return best;
}

double gnbd_log_pmf(const GnbdParams& p, std::size_t k) {
    const double kk = static_cast<double>(k);
    const double n = p.m + p.beta_g * kk;
    if (k == 0) return p.m * std::log1p(-p.theta);
    return std::log(p.m) - std::log(n) + ln_gamma(n + 1.0) - ln_gamma(kk + 1.0) - ln_gamma(n - kk + 1.0) +
           kk * std::log(p.theta) + (n - kk) * std::log1p(-p.theta);
}

Approximation::Approximation(const ConvolutionSpec& spec, const SeriesControl& ctrl)
    : spec_(canonicalize(spec)), components_(spec_.size()) {
    ctrl.validate();
    if (spec_.empty()) throw DomainError("barnabani: empty spec");
    if (components_ == 1) return;
    moments_ = weight_cumulants(spec_);
    params_ = fit_gnbd(moments_);

    detail::CompensatedSum mass;
    while (pmf_.size() < ctrl.max_terms) {
        const double w = std::exp(gnbd_log_pmf(params_, pmf_.size()));
        pmf_.push_back(w);
        mass.add(w);
        if (1.0 - mass.value() < detail::kMassFloor && w < detail::kMassFloor) break;
    }
}

namespace {

template <class Weight>
EvalResult density_from(const ConvolutionSpec& spec, double x, const SeriesControl& ctrl, Weight&& weight_at) {
    ctrl.validate();
    if (detail::check_point(x, "barnabani::density")) return {detail::density_at_origin(spec), 0, 0.0};
    if (spec.size() == 1) return {std::exp(ln_gamma_pdf(x, spec[0].shape, spec[0].scale)), 1, 0.0};
    return detail::sum_density_series(spec.total_shape(), spec.min_scale(), x, ctrl, weight_at,
                                      "generalized negative binomial density series");
}

template <class Weight>
EvalResult cdf_from(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl, Weight&& weight_at) {
    ctrl.validate();
    if (detail::check_point(y, "barnabani::cdf")) return {0.0, 0, 0.0};
    if (spec.size() == 1) return {reg_lower_gamma(spec[0].shape, y / spec[0].scale), 1, 0.0};
    return detail::sum_cdf_series(spec.total_shape(), spec.min_scale(), y, ctrl, weight_at,
                                  "generalized negative binomial distribution series");
}

}  // namespace

EvalResult Approximation::density(double x, const SeriesControl& ctrl) const {
    return density_from(spec_, x, ctrl, [&](std::size_t k) { return k < pmf_.size() ? pmf_[k] : 0.0; });
}

EvalResult Approximation::cdf(double y, const SeriesControl& ctrl) const {
    return cdf_from(spec_, y, ctrl, [&](std::size_t k) { return k < pmf_.size() ? pmf_[k] : 0.0; });
}

// One-shot evaluation: fit, then generate weights only as far as the series needs them.
EvalResult density_approx(const ConvolutionSpec& spec_in, double x, const SeriesControl& ctrl) {
    const ConvolutionSpec spec = canonicalize(spec_in);
    if (spec.empty()) throw DomainError("barnabani: empty spec");
    if (spec.size() == 1) return density_from(spec, x, ctrl, [](std::size_t) { return 0.0; });
    const GnbdParams p = fit_gnbd(weight_cumulants(spec));
    return density_from(spec, x, ctrl, [&](std::size_t k) { return std::exp(gnbd_log_pmf(p, k)); });
}

EvalResult cdf_approx(const ConvolutionSpec& spec_in, double y, const SeriesControl& ctrl) {
    const ConvolutionSpec spec = canonicalize(spec_in);
    if (spec.empty()) throw DomainError("barnabani: empty spec");
    if (spec.size() == 1) return cdf_from(spec, y, ctrl, [](std::size_t) { return 0.0; });
    const GnbdParams p = fit_gnbd(weight_cumulants(spec));
    return cdf_from(spec, y, ctrl, [&](std::size_t k) { return std::exp(gnbd_log_pmf(p, k)); });
}

}  // namespace gammaconv::barnabani
