#include "gammaconv/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gammaconv/errors.hpp"

namespace gammaconv {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

bool same_scale(double a, double b) {
    return std::fabs(a - b) <= kScaleMergeTolerance * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

ConvolutionSpec::ConvolutionSpec(std::vector<GammaComponent> components) : components_(std::move(components)) {
    for (const auto& c : components_) {
        if (!positive_finite(c.shape)) throw DomainError("ConvolutionSpec: shape must be positive and finite");
        if (!positive_finite(c.scale)) throw DomainError("ConvolutionSpec: scale must be positive and finite");
    }
}

ConvolutionSpec ConvolutionSpec::from_lists(const std::vector<double>& shapes, const std::vector<double>& scales) {
    if (shapes.size() != scales.size()) throw DomainError("ConvolutionSpec: shape and scale lists differ in length");
    if (shapes.empty()) throw DomainError("ConvolutionSpec: at least one component is required");
    std::vector<GammaComponent> comps;
    comps.reserve(shapes.size());
    for (std::size_t i = 0; i < shapes.size(); ++i) comps.push_back({shapes[i], scales[i]});
    return ConvolutionSpec(std::move(comps));
}

double ConvolutionSpec::total_shape() const {
    return std::accumulate(components_.begin(), components_.end(), 0.0,
                           [](double acc, const GammaComponent& c) { return acc + c.shape; });
}

double ConvolutionSpec::min_scale() const {
    if (components_.empty()) throw DomainError("ConvolutionSpec: empty spec has no minimum scale");
    return std::min_element(components_.begin(), components_.end(),
                            [](const GammaComponent& l, const GammaComponent& r) { return l.scale < r.scale; })
        ->scale;
}

double ConvolutionSpec::mean() const {
    double m = 0.0;
    for (const auto& c : components_) m += c.shape * c.scale;
    return m;
}

double ConvolutionSpec::variance() const {
    double v = 0.0;
    for (const auto& c : components_) v += c.shape * c.scale * c.scale;
    return v;
}

bool ConvolutionSpec::is_canonical() const {
    for (std::size_t i = 1; i < components_.size(); ++i) {
        const double prev = components_[i - 1].scale;
        const double cur = components_[i].scale;
        if (!(prev < cur) || same_scale(prev, cur)) return false;
    }
    return true;
}

ConvolutionSpec canonicalize(const ConvolutionSpec& spec) {
    if (spec.is_canonical()) return spec;
    std::vector<GammaComponent> sorted = spec.components();
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const GammaComponent& l, const GammaComponent& r) { return l.scale < r.scale; });
    std::vector<GammaComponent> merged;
    merged.reserve(sorted.size());
    for (const auto& c : sorted) {
        if (!merged.empty() && same_scale(merged.back().scale, c.scale)) {
            merged.back().shape += c.shape;
        } else {
            merged.push_back(c);
        }
    }
    return ConvolutionSpec(std::move(merged));
}

MixtureExpSpec validate_mixture(const MixtureExpSpec& spec) {
    if (spec.weights.size() != spec.scales.size()) {
        throw DomainError("mixture: weight and scale lists differ in length");
    }
    if (spec.weights.empty()) throw DomainError("mixture: at least one component is required");
    double total = 0.0;
    for (std::size_t s = 0; s < spec.weights.size(); ++s) {
        if (!(spec.weights[s] >= 0.0) || !std::isfinite(spec.weights[s])) {
            throw DomainError("mixture: weights must be non-negative");
        }
        if (!positive_finite(spec.scales[s])) throw DomainError("mixture: scales must be positive");
        total += spec.weights[s];
    }
    if (std::fabs(total - 1.0) > 1e-9) throw DomainError("mixture: weights must sum to one");
    MixtureExpSpec out;
    for (std::size_t s = 0; s < spec.weights.size(); ++s) {
        if (spec.weights[s] == 0.0) continue;
        out.weights.push_back(spec.weights[s] / total);
        out.scales.push_back(spec.scales[s]);
    }
    return out;
}

}  // namespace gammaconv
