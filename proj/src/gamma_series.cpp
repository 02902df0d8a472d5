#include "gamma_series.hpp"

#include <string>

namespace gammaconv::detail {

double density_at_origin(const ConvolutionSpec& canonical) {
    const double rho = canonical.total_shape();
    if (rho > 1.0) return 0.0;
    if (rho < 1.0) throw DomainError("density diverges at x = 0 when the total shape is below one");
    const double beta1 = canonical.min_scale();
    double log_c = 0.0;
    for (const auto& c : canonical.components()) log_c += c.shape * std::log(beta1 / c.scale);
    return std::exp(log_c) / beta1;
}

bool check_point(double x, const char* op) {
    if (std::isnan(x) || x < 0.0) throw DomainError(std::string(op) + ": evaluation point must be non-negative");
    if (std::isinf(x)) throw DomainError(std::string(op) + ": evaluation point must be finite");
    return x == 0.0;
}

}  // namespace gammaconv::detail
