#include "gammaconv/moschopoulos.hpp"

#include <cmath>
#include <stdexcept>

#include "gamma_series.hpp"

namespace gammaconv::moschopoulos {

WeightDistribution::WeightDistribution(const ConvolutionSpec& spec) {
    const ConvolutionSpec canonical = canonicalize(spec);
    if (canonical.empty()) throw DomainError("moschopoulos: empty spec");
    beta1_ = canonical.min_scale();
    rho_ = canonical.total_shape();
    log_c_ = 0.0;
    for (const auto& comp : canonical.components()) {
        const double ratio = beta1_ / comp.scale;
        log_c_ += comp.shape * std::log(ratio);
        if (ratio < 1.0) {
            shapes_.push_back(comp.shape);
            log1m_ratio_.push_back(std::log1p(-ratio));
        }
    }
    c_ = std::exp(log_c_);
    power_sums_.push_back(0.0);
    gammas_.push_back(0.0);
    deltas_.push_back(1.0);
}

void WeightDistribution::extend(std::size_t upto) {
    while (deltas_.size() <= upto) {
        const std::size_t next = deltas_.size();
        double s = 0.0;
        for (std::size_t i = 0; i < shapes_.size(); ++i) {
            s += shapes_[i] * std::exp(static_cast<double>(next) * log1m_ratio_[i]);
        }
        power_sums_.push_back(s);
        gammas_.push_back(s / static_cast<double>(next));

        double acc = 0.0;
        for (std::size_t i = 1; i <= next; ++i) acc += power_sums_[i] * deltas_[next - i];
        const double delta = acc / static_cast<double>(next);
        if (!std::isfinite(delta)) throw std::overflow_error("moschopoulos: coefficient recursion overflowed");
        deltas_.push_back(delta);
    }
}

double WeightDistribution::pmf(std::size_t k) const {
    const double d = deltas_.at(k);
    if (c_ > 0.0 && std::isnormal(c_)) return c_ * d;
    return d > 0.0 ? std::exp(log_c_ + std::log(d)) : 0.0;
}

WeightDistribution build_weights(const ConvolutionSpec& spec, std::size_t upto) {
    WeightDistribution w(spec);
    w.extend(upto);
    return w;
}

EvalResult density(const ConvolutionSpec& spec, double x, const SeriesControl& ctrl) {
    ctrl.validate();
    const ConvolutionSpec canonical = canonicalize(spec);
    if (detail::check_point(x, "moschopoulos::density")) return {detail::density_at_origin(canonical), 0, 0.0};
    if (canonical.size() == 1) {
        return {std::exp(ln_gamma_pdf(x, canonical[0].shape, canonical[0].scale)), 1, 0.0};
    }
    WeightDistribution weights(canonical);
    return detail::sum_density_series(weights.rho(), weights.beta1(), x, ctrl,
                                      [&](std::size_t k) {
                                          weights.extend(k);
                                          return weights.pmf(k);
                                      },
                                      "moschopoulos density series");
}

EvalResult cdf(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl) {
    ctrl.validate();
    const ConvolutionSpec canonical = canonicalize(spec);
    if (detail::check_point(y, "moschopoulos::cdf")) return {0.0, 0, 0.0};
    if (canonical.size() == 1) return {reg_lower_gamma(canonical[0].shape, y / canonical[0].scale), 1, 0.0};
    WeightDistribution weights(canonical);
    return detail::sum_cdf_series(weights.rho(), weights.beta1(), y, ctrl,
                                  [&](std::size_t k) {
                                      weights.extend(k);
                                      return weights.pmf(k);
                                  },
                                  "moschopoulos distribution series");
}

double weight_pmf(const ConvolutionSpec& spec, std::size_t k) {
    return build_weights(spec, k).pmf(k);
}

}  // namespace gammaconv::moschopoulos
