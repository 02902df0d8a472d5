#pragma once

// Parameter grids of the reference timing study, shared by the benchmark
// harness, the self test and the acceptance suite.

#include <string>
#include <vector>

#include "gammaconv/model.hpp"

namespace gammaconv::settings {

struct ConvolutionSetting {
    double shape;                 // common shape of every component
    std::vector<double> scales;   // as listed, not canonicalized

    ConvolutionSpec spec() const {
        return ConvolutionSpec::from_lists(std::vector<double>(scales.size(), shape), scales);
    }
};

struct RenewalSetting {
    std::vector<double> scales;
    unsigned n;
    double reference_pmf = 0.0;        // reference exact value, 0 when not listed
    double reference_rel_error = 0.0;  // reference approximation error, 0 when not listed

    std::vector<double> weights;       // mixing weights used for the study

    MixtureExpSpec mixture() const { return {weights, scales}; }
    MixtureExpSpec equal_weight_mixture() const {
        return {std::vector<double>(scales.size(), 1.0 / static_cast<double>(scales.size())), scales};
    }
};

// Mixing weights for the renewal grids. The S=3 weights reproduce the
// reference exact values; equal weights do not. The S=2 weights match the
// reference choice of n at each scale pair.
inline const std::vector<double>& study_weights_two() {
    static const std::vector<double> w{0.1, 0.9};
    return w;
}
inline const std::vector<double>& study_weights_three() {
    static const std::vector<double> w{0.1, 0.2, 0.7};
    return w;
}

inline constexpr double kRenewalHorizon = 10.0;

inline std::vector<ConvolutionSetting> two_component() {
    std::vector<ConvolutionSetting> out;
    for (double a : {0.2, 2.0, 20.0}) {
        for (const auto& s : std::vector<std::vector<double>>{{0.4, 0.3}, {4.0, 0.3}, {4.0, 3.0}}) {
            out.push_back({a, s});
        }
    }
    return out;
}

inline std::vector<ConvolutionSetting> three_component() {
    std::vector<ConvolutionSetting> out;
    for (double a : {0.2, 2.0, 20.0}) {
        for (const auto& s : std::vector<std::vector<double>>{
                 {0.4, 0.3, 0.2}, {4.0, 0.3, 0.2}, {4.0, 3.0, 0.2}, {4.0, 3.0, 2.0}}) {
            out.push_back({a, s});
        }
    }
    return out;
}

inline std::vector<RenewalSetting> renewal_two_component() {
    std::vector<RenewalSetting> out;
    const auto add = [&](std::vector<double> scales, unsigned n) {
        out.push_back({std::move(scales), n, 0.0, 0.0, study_weights_two()});
    };
    for (unsigned n : {27u, 32u, 40u}) add({0.4, 0.3}, n);
    for (unsigned n : {10u, 18u, 30u}) add({4.0, 0.3}, n);
    for (unsigned n : {2u, 3u, 5u}) add({4.0, 3.0}, n);
    return out;
}

inline std::vector<RenewalSetting> renewal_three_component() {
    std::vector<RenewalSetting> out;
    const auto add = [&](std::vector<double> scales, unsigned n, double pmf, double rel) {
        out.push_back({std::move(scales), n, pmf, rel, study_weights_three()});
    };
    add({0.4, 0.3, 0.2}, 36, 4.2456e-02, 3.3887e-03);
    add({0.4, 0.3, 0.2}, 42, 5.7594e-02, -2.5825e-03);
    add({0.4, 0.3, 0.2}, 51, 2.2793e-02, -4.7991e-04);
    add({4.0, 0.3, 0.2}, 10, 2.8303e-02, 3.6682e-03);
    add({4.0, 0.3, 0.2}, 19, 3.3972e-02, -2.9601e-05);
    add({4.0, 0.3, 0.2}, 35, 1.4896e-02, -1.0625e-02);
    add({4.0, 3.0, 0.2}, 5, 5.8889e-02, 3.3020e-04);
    add({4.0, 3.0, 0.2}, 10, 6.2835e-02, -2.0693e-03);
    add({4.0, 3.0, 0.2}, 19, 2.1189e-02, 1.5217e-03);
    add({4.0, 3.0, 2.0}, 2, 1.2854e-01, 1.2242e-03);
    add({4.0, 3.0, 2.0}, 4, 1.8740e-01, -1.9957e-03);
    add({4.0, 3.0, 2.0}, 7, 7.2131e-02, 1.9813e-03);
    return out;
}

}  // namespace gammaconv::settings
