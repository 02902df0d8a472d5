#pragma once

// JSON forms used on the command line and in reports:
//   {"components":[{"shape":a,"scale":b},...]}
//   {"weights":[...],"scales":[...]}

#include <json.hpp>

#include "gammaconv/model.hpp"

namespace gammaconv {

inline void to_json(nlohmann::json& j, const GammaComponent& c) {
    j = nlohmann::json{{"shape", c.shape}, {"scale", c.scale}};
}

inline void from_json(const nlohmann::json& j, GammaComponent& c) {
    j.at("shape").get_to(c.shape);
    j.at("scale").get_to(c.scale);
}

inline void to_json(nlohmann::json& j, const ConvolutionSpec& spec) {
    j = nlohmann::json{{"components", spec.components()}};
}

inline void from_json(const nlohmann::json& j, ConvolutionSpec& spec) {
    spec = ConvolutionSpec(j.at("components").get<std::vector<GammaComponent>>());
}

inline void to_json(nlohmann::json& j, const MixtureExpSpec& mix) {
    j = nlohmann::json{{"weights", mix.weights}, {"scales", mix.scales}};
}

inline void from_json(const nlohmann::json& j, MixtureExpSpec& mix) {
    j.at("weights").get_to(mix.weights);
    j.at("scales").get_to(mix.scales);
}

inline void to_json(nlohmann::json& j, const EvalResult& r) {
    j = nlohmann::json{{"value", r.value}, {"terms_used", r.terms_used}};
    if (r.tail_bound) j["tail_bound"] = *r.tail_bound;
    else j["tail_bound"] = nullptr;
}

}  // namespace gammaconv
