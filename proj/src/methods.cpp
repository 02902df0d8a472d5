#include "gammaconv/methods.hpp"

#include "gammaconv/barnabani.hpp"
#include "gammaconv/errors.hpp"
#include "gammaconv/mathai.hpp"
#include "gammaconv/moschopoulos.hpp"

namespace gammaconv {

std::optional<Method> parse_method(std::string_view name) {
    if (name == "mathai") return Method::mathai;
    if (name == "moschopoulos") return Method::moschopoulos;
    if (name == "approx") return Method::approx;
    if (name == "auto") return Method::automatic;
    return std::nullopt;
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::mathai: return "mathai";
        case Method::moschopoulos: return "moschopoulos";
        case Method::approx: return "approx";
        case Method::automatic: return "auto";
    }
    return "unknown";
}

std::optional<Quantity> parse_quantity(std::string_view name) {
    if (name == "density") return Quantity::density;
    if (name == "cdf") return Quantity::cdf;
    return std::nullopt;
}

std::string_view to_string(Quantity q) { return q == Quantity::density ? "density" : "cdf"; }

Method resolve_method(Method m, const ConvolutionSpec& spec) {
    if (m != Method::automatic) return m;
    return canonicalize(spec).size() <= 2 ? Method::mathai : Method::moschopoulos;
}

SeriesControl default_control(Method m, const ConvolutionSpec& spec) {
    if (resolve_method(m, spec) == Method::mathai && canonicalize(spec).size() >= 3) {
        return mathai::default_nested_control();
    }
    return {};
}

EvalResult evaluate(Quantity q, Method m, const ConvolutionSpec& spec, double x, const SeriesControl& ctrl) {
    const ConvolutionSpec canonical = canonicalize(spec);
    if (canonical.empty()) throw DomainError("evaluate: empty spec");
    switch (resolve_method(m, canonical)) {
        case Method::mathai:
            if (canonical.size() == 2) {
                return q == Quantity::density ? mathai::density2(canonical, x, ctrl) : mathai::cdf2(canonical, x, ctrl);
            }
            return q == Quantity::density ? mathai::density_n(canonical, x, ctrl) : mathai::cdf_n(canonical, x, ctrl);
        case Method::moschopoulos:
            return q == Quantity::density ? moschopoulos::density(canonical, x, ctrl)
                                          : moschopoulos::cdf(canonical, x, ctrl);
        case Method::approx:
            return q == Quantity::density ? barnabani::density_approx(canonical, x, ctrl)
                                          : barnabani::cdf_approx(canonical, x, ctrl);
        case Method::automatic: break;
    }
    throw DomainError("evaluate: unresolved method");
}

}  // namespace gammaconv
