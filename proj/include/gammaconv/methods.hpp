#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gammaconv/model.hpp"
#include "gammaconv/specfun.hpp"

namespace gammaconv {

enum class Method { mathai, moschopoulos, approx, automatic };
enum class Quantity { density, cdf };

std::optional<Method> parse_method(std::string_view name);
std::string_view to_string(Method m);
std::optional<Quantity> parse_quantity(std::string_view name);
std::string_view to_string(Quantity q);

/// Resolves Method::automatic: the 1F1 form for two components, the single series otherwise.
Method resolve_method(Method m, const ConvolutionSpec& spec);

/// Default truncation policy for a method and component count.
SeriesControl default_control(Method m, const ConvolutionSpec& spec);

EvalResult evaluate(Quantity q, Method m, const ConvolutionSpec& spec, double x, const SeriesControl& ctrl);

}  // namespace gammaconv
