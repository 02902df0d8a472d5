#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace gammaconv {

/// Gamma(shape, scale) with density x^{shape-1} e^{-x/scale} / (Gamma(shape) scale^shape).
struct GammaComponent {
    double shape = 1.0;
    double scale = 1.0;

    friend bool operator==(const GammaComponent&, const GammaComponent&) = default;
};

/// Parameters of Y = X_1 + ... + X_n with independent gamma X_i.
class ConvolutionSpec {
public:
    ConvolutionSpec() = default;
    /// Throws DomainError on a non-positive or non-finite shape or scale.
    explicit ConvolutionSpec(std::vector<GammaComponent> components);

    static ConvolutionSpec from_lists(const std::vector<double>& shapes, const std::vector<double>& scales);

    const std::vector<GammaComponent>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    bool empty() const { return components_.empty(); }
    const GammaComponent& operator[](std::size_t i) const { return components_[i]; }

    double total_shape() const;
    double min_scale() const;
    double mean() const;
    double variance() const;

    /// True when scales are strictly ascending with no two equal within tolerance.
    bool is_canonical() const;

    friend bool operator==(const ConvolutionSpec&, const ConvolutionSpec&) = default;

private:
    std::vector<GammaComponent> components_;
};

/// Relative tolerance under which two scales are treated as equal.
inline constexpr double kScaleMergeTolerance = 1e-12;

/// Merge equal scales by summing shapes, then sort ascending by scale.
ConvolutionSpec canonicalize(const ConvolutionSpec& spec);

/// Holding-time law sum_s p_s Exp(mean = scales[s]).
struct MixtureExpSpec {
    std::vector<double> weights;
    std::vector<double> scales;

    std::size_t size() const { return weights.size(); }
    friend bool operator==(const MixtureExpSpec&, const MixtureExpSpec&) = default;
};

/// Renormalizes weights whose sum is within 1e-9 of one and drops zero-weight
/// components. Throws DomainError on negative weights, non-positive scales,
/// mismatched lengths, or a larger weight-sum deviation.
MixtureExpSpec validate_mixture(const MixtureExpSpec& spec);

struct EvalResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    std::optional<double> tail_bound;
};

}  // namespace gammaconv
