#include "aucplan/auc_inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aucplan/errors.hpp"
#include "aucplan/normal_math.hpp"

namespace aucplan {

namespace {

void require_ratings(std::span<const double> values, const char* group) {
    if (values.empty()) {
        throw ValidationError(std::string(group) + " must not be empty");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ValidationError(std::string(group) + " ratings must be finite");
        }
    }
}

void require_variance_sizes(std::size_t n_cases, std::size_t n_controls) {
    if (n_cases < 2 || n_controls < 2) {
        throw ValidationError("DeLong variance needs at least 2 cases and 2 controls");
    }
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Sample covariance with divisor n - 1.
double sample_cov(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean(a);
    const double mb = mean(b);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - ma) * (b[k] - mb);
    return s / static_cast<double>(a.size() - 1);
}

template <std::size_t T>
std::vector<double> column(const std::vector<std::array<double, 2>>& rows) {
    std::vector<double> out(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) out[k] = rows[k][T];
    return out;
}

} // namespace

StructuralComponents structural_components(std::span<const double> controls,
                                           std::span<const double> cases) {
    require_ratings(controls, "controls");
    require_ratings(cases, "cases");

    std::vector<double> sorted_controls(controls.begin(), controls.end());
    std::vector<double> sorted_cases(cases.begin(), cases.end());
    std::sort(sorted_controls.begin(), sorted_controls.end());
    std::sort(sorted_cases.begin(), sorted_cases.end());

    const auto nc = static_cast<double>(controls.size());
    const auto nd = static_cast<double>(cases.size());

    StructuralComponents sc;
    sc.from_cases.resize(cases.size());
    sc.from_controls.resize(controls.size());

    // Counts are half-integers, so their sum is exact and the point estimate
    // matches the double loop bit for bit.
    double total = 0.0;
    for (std::size_t j = 0; j < cases.size(); ++j) {
        const auto [lo, hi] = std::equal_range(sorted_controls.begin(), sorted_controls.end(), cases[j]);
        const double below = static_cast<double>(lo - sorted_controls.begin());
        const double tied = static_cast<double>(hi - lo);
        const double count = below + 0.5 * tied;
        total += count;
        sc.from_cases[j] = count / nc;
    }
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const auto [lo, hi] = std::equal_range(sorted_cases.begin(), sorted_cases.end(), controls[i]);
        const double above = static_cast<double>(sorted_cases.end() - hi);
        const double tied = static_cast<double>(hi - lo);
        sc.from_controls[i] = (above + 0.5 * tied) / nd;
    }
    sc.auc = total / (nd * nc);
    return sc;
}

double auc_mann_whitney(const RatingSample& s) {
    return structural_components(s.controls, s.cases).auc;
}

AucEstimate delong_single(const RatingSample& s) {
    const auto sc = structural_components(s.controls, s.cases);
    require_variance_sizes(s.cases.size(), s.controls.size());
    AucEstimate e;
    e.point = sc.auc;
    e.n_cases = s.cases.size();
    e.n_controls = s.controls.size();
    e.variance = sample_cov(sc.from_cases, sc.from_cases) / static_cast<double>(e.n_cases)
               + sample_cov(sc.from_controls, sc.from_controls) / static_cast<double>(e.n_controls);
    return e;
}

PairedAucEstimate delong_paired(const PairedRatingSample& s) {
    const auto x1 = column<0>(s.controls);
    const auto x2 = column<1>(s.controls);
    const auto y1 = column<0>(s.cases);
    const auto y2 = column<1>(s.cases);
    const StructuralComponents c[2] = {structural_components(x1, y1), structural_components(x2, y2)};
    require_variance_sizes(s.cases.size(), s.controls.size());

    PairedAucEstimate e;
    e.n_cases = s.cases.size();
    e.n_controls = s.controls.size();
    const auto nd = static_cast<double>(e.n_cases);
    const auto nc = static_cast<double>(e.n_controls);
    for (int a = 0; a < 2; ++a) {
        e.points[a] = c[a].auc;
        for (int b = a; b < 2; ++b) {
            const double v = sample_cov(c[a].from_cases, c[b].from_cases) / nd
                           + sample_cov(c[a].from_controls, c[b].from_controls) / nc;
            e.covariance[a][b] = v;
            e.covariance[b][a] = v;
        }
    }
    return e;
}

double PairedAucEstimate::correlation() const {
    const double v1 = covariance[0][0];
    const double v2 = covariance[1][1];
    if (!(v1 > 0.0 && v2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return covariance[0][1] / std::sqrt(v1 * v2);
}

ConfidenceInterval logit_interval(double point, double variance, double level) {
    detail::require_open_unit(level, "level");
    ConfidenceInterval ci;
    ci.level = level;
    if (!(point > 0.0 && point < 1.0) || !(variance > 0.0)) {
        ci.lower = ci.upper = point;
        ci.degenerate = true;
        return ci;
    }
    const double z = upper_quantile((1.0 - level) / 2.0);
    const double center = logit(point);
    const double se = std::sqrt(variance) / (point * (1.0 - point));
    ci.lower = inv_logit(center - z * se);
    ci.upper = inv_logit(center + z * se);
    return ci;
}

ConfidenceInterval ci_single_logit(const AucEstimate& e, double level) {
    return logit_interval(e.point, e.variance, level);
}

ConfidenceInterval ci_diff_logit(const PairedAucEstimate& e, double level) {
    const double star = (e.points[1] - e.points[0] + 1.0) / 2.0;
    const double var_star = 0.25 * (e.covariance[0][0] + e.covariance[1][1] - 2.0 * e.covariance[0][1]);
    ConfidenceInterval ci = logit_interval(star, var_star, level);
    ci.lower = 2.0 * ci.lower - 1.0;
    ci.upper = 2.0 * ci.upper - 1.0;
    return ci;
}

} // namespace aucplan
