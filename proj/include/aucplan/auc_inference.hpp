#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

// Nonparametric AUC estimation with DeLong structural components and
// logit-transformed confidence intervals.
//
// Convention: `controls` are non-diseased ratings X, `cases` are diseased
// ratings Y, and AUC = P(Y > X) + 1/2 P(Y = X).

namespace aucplan {

struct RatingSample {
    std::vector<double> controls;
    std::vector<double> cases;
};

/// Two tests applied to the same participants. Element k of each vector is
/// one participant; test 1 is [0], test 2 is [1].
struct PairedRatingSample {
    std::vector<std::array<double, 2>> controls;
    std::vector<std::array<double, 2>> cases;
};

struct AucEstimate {
    double point = 0.0;
    double variance = 0.0;
    std::size_t n_cases = 0;
    std::size_t n_controls = 0;
};

struct PairedAucEstimate {
    std::array<double, 2> points{};
    std::array<std::array<double, 2>, 2> covariance{};
    std::size_t n_cases = 0;
    std::size_t n_controls = 0;

    /// cov / (sd1 sd2); NaN when either variance is zero.
    double correlation() const;
};

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    bool degenerate = false; ///< collapsed to the point estimate

    bool contains(double value) const { return lower <= value && value <= upper; }
};

/// Per-participant placement values.
///   from_cases[j]    = V10(Y_j) = mean_i psi(X_i, Y_j)
///   from_controls[i] = V01(X_i) = mean_j psi(X_i, Y_j)
/// with psi = 1 if Y > X, 1/2 if tied, 0 otherwise. Sorting plus binary
/// search, O((n_D + n_C) log n).
struct StructuralComponents {
    std::vector<double> from_cases;
    std::vector<double> from_controls;
    double auc = 0.0;
};

StructuralComponents structural_components(std::span<const double> controls,
                                           std::span<const double> cases);

double auc_mann_whitney(const RatingSample& s);
AucEstimate delong_single(const RatingSample& s);
PairedAucEstimate delong_paired(const PairedRatingSample& s);

/// Interval inv_logit(logit(p) -/+ z sqrt(v) / (p (1 - p))).
/// Collapses to [p, p] with `degenerate` set when p is 0 or 1 or v <= 0.
ConfidenceInterval ci_single_logit(const AucEstimate& e, double level);

/// Logit interval on theta* = (p2 - p1 + 1)/2 with
/// var(theta*) = (v11 + v22 - 2 v12) / 4, mapped back by Delta = 2u - 1.
ConfidenceInterval ci_diff_logit(const PairedAucEstimate& e, double level);

/// Shared transform used by both interval constructions.
ConfidenceInterval logit_interval(double point, double variance, double level);

} // namespace aucplan
