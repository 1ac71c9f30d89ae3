#include "aucplan/sample_size.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "aucplan/errors.hpp"
#include "aucplan/normal_math.hpp"

namespace aucplan {

namespace {

// Pieces shared by the forward formula and its inversion.
struct FormulaTerms {
    double logit_gap;   // logit(theta) - logit(theta0)
    double kernel_term; // f(theta) / (theta^2 (1-theta)^2) * pi/3
    double z_half_alpha;
};

FormulaTerms make_terms(double theta, double theta0, double kernel, double alpha) {
    const double spread = theta * (1.0 - theta);
    return {logit(theta) - logit(theta0),
            kernel / (spread * spread) * std::numbers::pi / 3.0,
            upper_quantile(alpha / 2.0)};
}

FormulaTerms terms_for(const PlanningTarget& t) {
    return make_terms(t.theta, t.theta0, single_kernel(t.kernel, t.theta, t.groups), t.alpha);
}

FormulaTerms terms_for(const DiffPlanningTarget& t) {
    const double f = diff_kernel({t.theta1, t.theta2, t.r, t.B1, t.B2, t.rho});
    return make_terms(t.theta_star(), t.theta0_star(), f, t.alpha);
}

double n_raw_from(const FormulaTerms& ft, double assurance) {
    const double z = upper_quantile(1.0 - assurance) + ft.z_half_alpha;
    const double ratio = z / ft.logit_gap;
    return ratio * ratio * ft.kernel_term;
}

double assurance_from(const FormulaTerms& ft, double n_total) {
    detail::require_positive(n_total, "n_total");
    const double z_beta = std::abs(ft.logit_gap) * std::sqrt(n_total / ft.kernel_term) - ft.z_half_alpha;
    const double a = std_normal_cdf(z_beta);
    constexpr double lo = std::numeric_limits<double>::min();
    const double hi = std::nextafter(1.0, 0.0);
    return std::clamp(a, lo, hi);
}

void require_alpha_assurance(double alpha, double assurance) {
    detail::require_open_unit(alpha, "alpha");
    detail::require_open_unit(assurance, "assurance");
}

} // namespace

void PlanningTarget::validate() const {
    detail::require_open_unit(theta, "theta");
    detail::require_open_unit(theta0, "theta0");
    require_alpha_assurance(alpha, assurance);
    if (kernel == KernelChoice::Obuchowski) {
        detail::require_positive(groups.r, "r");
    } else {
        groups.validate();
    }
    if (!(theta0 < theta)) {
        throw ValidationError("theta0 must be below theta");
    }
}

void DiffPlanningTarget::validate() const {
    detail::require_open_unit(theta1, "theta1");
    detail::require_open_unit(theta2, "theta2");
    detail::require_finite(delta0, "delta0");
    require_alpha_assurance(alpha, assurance);
    detail::require_positive(r, "r");
    detail::require_positive(B1, "B1");
    detail::require_positive(B2, "B2");
    detail::require_finite(rho, "rho");
    if (rho < -1.0 || rho > 1.0) {
        throw ValidationError("rho must lie in [-1, 1]");
    }
    if (!(delta0 < theta2 - theta1)) {
        throw ValidationError("delta0 must be below theta2 - theta1");
    }
    const double ts = theta_star();
    if (!(ts > 0.0 && ts < 1.0)) {
        throw ValidationError("theta* = (theta2 - theta1 + 1)/2 must lie strictly between 0 and 1");
    }
    const double t0 = theta0_star();
    if (!(t0 > 0.0 && t0 < 1.0)) {
        throw ValidationError("delta0 must lie strictly between -1 and 1");
    }
}

Allocation allocate(double n_raw, double r) {
    detail::require_positive(n_raw, "n_raw");
    detail::require_positive(r, "r");
    Allocation a;
    a.n_raw = n_raw;
    a.n_cases = static_cast<long>(std::ceil(n_raw / (r + 1.0)));
    a.n_controls = static_cast<long>(std::ceil(n_raw * r / (r + 1.0)));
    a.n_total = a.n_cases + a.n_controls;
    return a;
}

Allocation split_total(long n_total, double r) {
    detail::require_positive(r, "r");
    if (n_total < 4) {
        throw ValidationError("n_total must be at least 4");
    }
    Allocation a;
    a.n_raw = static_cast<double>(n_total);
    a.n_cases = std::lround(static_cast<double>(n_total) / (r + 1.0));
    a.n_cases = std::clamp(a.n_cases, 2L, n_total - 2);
    a.n_controls = n_total - a.n_cases;
    a.n_total = n_total;
    return a;
}

Allocation size_single(const PlanningTarget& t) {
    t.validate();
    return allocate(n_raw_from(terms_for(t), t.assurance), t.groups.r);
}

Allocation size_diff(const DiffPlanningTarget& t) {
    t.validate();
    const FormulaTerms ft = terms_for(t);
    if (!(ft.kernel_term > 0.0)) {
        throw ValidationError("combined variance kernel is zero (rho = 1 with identical tests); no finite sample size");
    }
    return allocate(n_raw_from(ft, t.assurance), t.r);
}

double assurance_for_n(double n_total, const PlanningTarget& t) {
    t.validate();
    return assurance_from(terms_for(t), n_total);
}

double assurance_for_n(double n_total, const DiffPlanningTarget& t) {
    t.validate();
    const FormulaTerms ft = terms_for(t);
    if (!(ft.kernel_term > 0.0)) {
        throw ValidationError("combined variance kernel is zero (rho = 1 with identical tests)");
    }
    return assurance_from(ft, n_total);
}

double ratio_from_prevalence(double prevalence) {
    detail::require_open_unit(prevalence, "prevalence");
    return (1.0 - prevalence) / prevalence;
}

} // namespace aucplan
