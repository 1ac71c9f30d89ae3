#pragma once

#include "aucplan/variance_kernels.hpp"

// Closed-form sample sizes that give, with probability `assurance`, a lower
// two-sided (1 - alpha) logit confidence limit at or above a target bound.
//
//   n = {(z_beta + z_{alpha/2}) / (logit theta - logit theta0)}^2
//       * f(theta) / (theta^2 (1 - theta)^2) * pi/3
//
// The pi/3 factor accounts for analysing with the nonparametric (DeLong)
// estimator and is applied for every kernel.

namespace aucplan {

struct PlanningTarget {
    double theta = 0.9;     ///< anticipated AUC
    double theta0 = 0.85;   ///< required lower confidence limit
    double alpha = 0.05;    ///< two-sided CI significance
    double assurance = 0.8; ///< 1 - beta
    GroupStructure groups{};
    KernelChoice kernel = KernelChoice::Proposed;

    void validate() const;
};

/// Lower limit for the difference Delta = theta2 - theta1 of two correlated AUCs.
struct DiffPlanningTarget {
    double theta1 = 0.7;
    double theta2 = 0.9;
    double delta0 = 0.1;
    double alpha = 0.05;
    double assurance = 0.8;
    double r = 1.0;
    double B1 = 1.0;
    double B2 = 1.0;
    double rho = 0.0; ///< correlation between the two estimated AUCs

    void validate() const;
    double theta_star() const { return (theta2 - theta1 + 1.0) / 2.0; }
    double theta0_star() const { return (delta0 + 1.0) / 2.0; }
};

/// Continuous total plus integer group sizes; each group is rounded up
/// separately after the split n/(r+1) : n r/(r+1).
struct Allocation {
    double n_raw = 0.0;
    long n_cases = 0;
    long n_controls = 0;
    long n_total = 0;
};

Allocation allocate(double n_raw, double r);

/// Integer split of an already-fixed total: cases = round(n/(r+1)), the
/// rest are controls. Used when a user supplies n directly.
Allocation split_total(long n_total, double r);

Allocation size_single(const PlanningTarget& t);
Allocation size_diff(const DiffPlanningTarget& t);

/// Closed-form inversion of the formulas: Phi(|gap| sqrt(n / K) - z_{alpha/2})
/// where K is the kernel term including pi/3. Clamped into (0, 1). The
/// `assurance` field of the target is ignored.
double assurance_for_n(double n_total, const PlanningTarget& t);
double assurance_for_n(double n_total, const DiffPlanningTarget& t);

/// r = (1 - p_D) / p_D for a random sample with disease prevalence p_D.
double ratio_from_prevalence(double prevalence);

} // namespace aucplan
