#include "gammaconv/mathai.hpp"

#include <cmath>

#include "gamma_series.hpp"

namespace gammaconv::mathai {

namespace {

ConvolutionSpec two_component(const ConvolutionSpec& spec, const char* op) {
    if (spec.size() != 2) throw DomainError(std::string(op) + ": exactly two components are required");
    return canonicalize(spec);
}

// Per-dimension log coefficients log(a_m) with a_{m+1} = a_m (alpha + m) / (m + 1) * e^{step}.
// The running sum of log ratios is compensated; plain accumulation drifts by ~1e-11 after a few hundred terms.
class LogCoefficients {
public:
    LogCoefficients(double alpha, double log_step) : alpha_(alpha), log_step_(log_step), table_{0.0} {}

    double operator[](std::size_t m) {
        while (table_.size() <= m) {
            const double k = static_cast<double>(table_.size() - 1);
            ratios_.add(std::log((alpha_ + k) / (k + 1.0)));
            table_.push_back(ratios_.value() + (k + 1.0) * log_step_);
        }
        return table_[m];
    }

private:
    double alpha_;
    double log_step_;
    detail::CompensatedSum ratios_;
    std::vector<double> table_;
};

// log of sum over compositions (r_2..r_n) of r of exp(sum_j coef_j[r_j]).
double shell_log_sum(std::vector<LogCoefficients>& coef, unsigned r) {
    detail::LogAccumulator acc;
    for_each_composition(r, coef.size(), [&](const std::vector<unsigned>& parts) {
        double l = 0.0;
        for (std::size_t j = 0; j < parts.size(); ++j) l += coef[j][parts[j]];
        acc.add(l);
    });
    return acc.log_value();
}

std::vector<LogCoefficients> weight_coefficients(const ConvolutionSpec& canonical) {
    const double beta1 = canonical[0].scale;
    std::vector<LogCoefficients> coef;
    for (std::size_t j = 1; j < canonical.size(); ++j) {
        coef.emplace_back(canonical[j].shape, std::log1p(-beta1 / canonical[j].scale));
    }
    return coef;
}

template <class Observer>
EvalResult nested_cdf(const ConvolutionSpec& canonical, double y, const SeriesControl& ctrl, Observer&& observe) {
    const double beta1 = canonical[0].scale;
    const double gamma = canonical.total_shape();
    const double u = y / beta1;
    double log_c = 0.0;
    for (const auto& comp : canonical.components()) log_c += comp.shape * std::log(beta1 / comp.scale);
    std::vector<LogCoefficients> coef = weight_coefficients(canonical);

    detail::CompensatedSum mass;
    detail::CompensatedSum total;
    double lower = reg_lower_gamma(gamma, u);
    for (std::size_t r = 0; r < ctrl.max_terms; ++r) {
        const double w = std::exp(log_c + shell_log_sum(coef, static_cast<unsigned>(r)));
        mass.add(w);
        total.add(w * lower);
        observe(NestedSeriesState{r, mass.value(), ScaledValue::from_real(total.value())});
        const double lower_next = reg_lower_gamma(gamma + static_cast<double>(r + 1), u);
        const double tail = detail::remaining_mass(mass) * lower_next;
        if (detail::tail_negligible(tail, total.value(), ctrl.rel_tol)) {
            return {std::min(total.value(), 1.0), r + 1, tail};
        }
        lower = lower_next;
    }
    throw ConvergenceError("mathai nested distribution series", ctrl.max_terms, detail::remaining_mass(mass));
}

}  // namespace

EvalResult density2(const ConvolutionSpec& spec, double x, const SeriesControl& ctrl) {
    ctrl.validate();
    const ConvolutionSpec canonical = two_component(spec, "mathai::density2");
    if (detail::check_point(x, "mathai::density2")) return {detail::density_at_origin(canonical), 0, {}};
    if (canonical.size() == 1) return {std::exp(ln_gamma_pdf(x, canonical[0].shape, canonical[0].scale)), 1, {}};

    const auto& [a1, b1] = canonical[0];
    const auto& [a2, b2] = canonical[1];
    const double gamma = a1 + a2;
    const SeriesSum hyper = kummer_1f1_series(a2, gamma, (1.0 / b1 - 1.0 / b2) * x, ctrl);
    const double log_f = a2 * std::log(b1 / b2) + ln_gamma_pdf(x, gamma, b1) + hyper.value.log_magnitude;
    return {std::exp(log_f), hyper.terms, {}};
}

EvalResult cdf2(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl) {
    ctrl.validate();
    const ConvolutionSpec canonical = two_component(spec, "mathai::cdf2");
    if (detail::check_point(y, "mathai::cdf2")) return {0.0, 0, 0.0};
    if (canonical.size() == 1) return {reg_lower_gamma(canonical[0].shape, y / canonical[0].scale), 1, 0.0};

    const auto& [a1, b1] = canonical[0];
    const auto& [a2, b2] = canonical[1];
    detail::NegativeBinomialWeights weights(a2, b1 / b2);
    return detail::sum_cdf_series(a1 + a2, b1, y, ctrl, [&](std::size_t) { return weights.next(); },
                                  "mathai distribution series");
}

EvalResult density_n(const ConvolutionSpec& spec, double x, const SeriesControl& ctrl) {
    ctrl.validate();
    const ConvolutionSpec canonical = canonicalize(spec);
    if (canonical.empty()) throw DomainError("mathai::density_n: empty spec");
    if (detail::check_point(x, "mathai::density_n")) return {detail::density_at_origin(canonical), 0, {}};
    if (canonical.size() == 1) return {std::exp(ln_gamma_pdf(x, canonical[0].shape, canonical[0].scale)), 1, {}};

    const double beta1 = canonical[0].scale;
    const double gamma = canonical.total_shape();
    std::vector<LogCoefficients> coef;
    double log_prefactor = (gamma - 1.0) * std::log(x) - x / beta1 - ln_gamma(gamma);
    for (std::size_t j = 0; j < canonical.size(); ++j) {
        const auto& comp = canonical[j];
        log_prefactor -= comp.shape * std::log(comp.scale);
        if (j > 0) coef.emplace_back(comp.shape, std::log((1.0 / beta1 - 1.0 / comp.scale) * x));
    }

    detail::LogAccumulator series;
    detail::CompensatedSum log_rising;  // log (gamma)_r
    int small_run = 0;
    double relative = 1.0;
    for (std::size_t r = 0; r < ctrl.max_terms; ++r) {
        if (r > 0) log_rising.add(std::log(gamma + static_cast<double>(r - 1)));
        const double log_shell = shell_log_sum(coef, static_cast<unsigned>(r)) - log_rising.value();
        series.add(log_shell);
        relative = std::exp(log_shell - series.log_value());
        small_run = relative < ctrl.rel_tol ? small_run + 1 : 0;
        if (small_run == 2) return {std::exp(log_prefactor + series.log_value()), r + 1, {}};
    }
    throw ConvergenceError("mathai nested density series", ctrl.max_terms, relative);
}

EvalResult cdf_n(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl) {
    ctrl.validate();
    const ConvolutionSpec canonical = canonicalize(spec);
    if (canonical.empty()) throw DomainError("mathai::cdf_n: empty spec");
    if (detail::check_point(y, "mathai::cdf_n")) return {0.0, 0, 0.0};
    if (canonical.size() == 1) return {reg_lower_gamma(canonical[0].shape, y / canonical[0].scale), 1, 0.0};
    return nested_cdf(canonical, y, ctrl, [](const NestedSeriesState&) {});
}

std::vector<NestedSeriesState> cdf_n_trace(const ConvolutionSpec& spec, double y, const SeriesControl& ctrl) {
    ctrl.validate();
    const ConvolutionSpec canonical = canonicalize(spec);
    if (canonical.size() < 2) throw DomainError("mathai::cdf_n_trace: at least two distinct scales are required");
    if (detail::check_point(y, "mathai::cdf_n_trace")) return {};
    std::vector<NestedSeriesState> trace;
    nested_cdf(canonical, y, ctrl, [&](const NestedSeriesState& s) { trace.push_back(s); });
    return trace;
}

}  // namespace gammaconv::mathai
