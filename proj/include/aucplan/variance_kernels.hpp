#pragma once

#include <string_view>

// Variance kernels f(theta) with var(theta_hat) = f(theta) / n, n being the
// total number of participants.

namespace aucplan {

enum class KernelChoice {
    Proposed,   ///< binormal delta-method kernel, uses r and B
    Obuchowski, ///< conservative kernel that ignores B
};

std::string_view to_string(KernelChoice k);
/// Accepts "proposed" or "obuchowski" (case-sensitive).
KernelChoice parse_kernel(std::string_view name);

/// Control:case group structure.
struct GroupStructure {
    double r = 1.0; ///< control-to-case size ratio
    double B = 1.0; ///< control-to-case SD ratio

    void validate() const;
};

/// Binormal kernel:
///   1/2 phi(a)^2 [ a^2/(1+B^2)^2 {(r+1) + (r+1)B^4/r}
///                  + 2(r+1)/(1+B^2) + 2(r+1)B^2/(r(1+B^2)) ],  a = Phi^-1(theta).
/// Symmetric under (r, B) -> (1/r, 1/B).
double proposed_kernel(double theta, const GroupStructure& g);

/// 0.0099 exp(-a^2) [10a^2 + 8 + (2a^2 + 8)/r] (r+1), a = Phi^-1(theta).
/// The exponent is -a^2 (not -a^2/2); that form reproduces the published
/// Obuchowski-kernel sample sizes.
double obuchowski_kernel(double theta, double r);

/// Kernel for the selected variant; B is ignored by the Obuchowski kernel.
double single_kernel(KernelChoice k, double theta, const GroupStructure& g);

/// Inputs of the combined kernel for theta* = (theta2 - theta1 + 1) / 2.
struct DiffKernelInput {
    double theta1 = 0.5;
    double theta2 = 0.5;
    double r = 1.0;
    double B1 = 1.0;
    double B2 = 1.0;
    double rho = 0.0; ///< correlation between the two estimated AUCs
};

/// f(theta*) = 1/4 { f1 + f2 - 2 rho sqrt(f1) sqrt(f2) } with f_t the
/// proposed kernel of test t. Clamped at 0 against rounding when rho = 1.
double diff_kernel(const DiffKernelInput& in);

} // namespace aucplan
