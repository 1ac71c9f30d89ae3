#include "aucplan/variance_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aucplan/errors.hpp"
#include "aucplan/normal_math.hpp"

namespace aucplan {

std::string_view to_string(KernelChoice k) {
    switch (k) {
    case KernelChoice::Proposed: return "proposed";
    case KernelChoice::Obuchowski: return "obuchowski";
    }
    return "unknown";
}

KernelChoice parse_kernel(std::string_view name) {
    if (name == "proposed") return KernelChoice::Proposed;
    if (name == "obuchowski") return KernelChoice::Obuchowski;
    throw ValidationError("kernel must be 'proposed' or 'obuchowski', got '" + std::string(name) + "'");
}

void GroupStructure::validate() const {
    detail::require_positive(r, "r");
    detail::require_positive(B, "B");
}

double proposed_kernel(double theta, const GroupStructure& g) {
    detail::require_open_unit(theta, "theta");
    g.validate();
    const double a = std_normal_quantile(theta);
    const double dens = std_normal_pdf(a);
    const double r = g.r;
    const double b2 = g.B * g.B;
    const double s = 1.0 + b2;
    const double bracket = a * a / (s * s) * ((r + 1.0) + (r + 1.0) * b2 * b2 / r)
                         + 2.0 * (r + 1.0) / s
                         + 2.0 * (r + 1.0) * b2 / (r * s);
    return 0.5 * dens * dens * bracket;
}

double obuchowski_kernel(double theta, double r) {
    detail::require_open_unit(theta, "theta");
    detail::require_positive(r, "r");
    const double a2 = std::pow(std_normal_quantile(theta), 2);
    return 0.0099 * std::exp(-a2) * (10.0 * a2 + 8.0 + (2.0 * a2 + 8.0) / r) * (r + 1.0);
}

double single_kernel(KernelChoice k, double theta, const GroupStructure& g) {
    switch (k) {
    case KernelChoice::Proposed: return proposed_kernel(theta, g);
    case KernelChoice::Obuchowski: return obuchowski_kernel(theta, g.r);
    }
    throw ValidationError("unknown kernel");
}

double diff_kernel(const DiffKernelInput& in) {
    detail::require_finite(in.rho, "rho");
    if (in.rho < -1.0 || in.rho > 1.0) {
        throw ValidationError("rho must lie in [-1, 1]");
    }
    const double f1 = proposed_kernel(in.theta1, {in.r, in.B1});
    const double f2 = proposed_kernel(in.theta2, {in.r, in.B2});
    const double f = 0.25 * (f1 + f2 - 2.0 * in.rho * std::sqrt(f1) * std::sqrt(f2));
    return std::max(f, 0.0);
}

} // namespace aucplan
