#pragma once

// O(n_D n_C) reference for AUC, DeLong components and (co)variances, written
// straight from the definitions. Independent of the sort-based code path.

#include <array>
#include <cmath>
#include <vector>

namespace oracle {

inline double psi(double x, double y) {
    if (y > x) return 1.0;
    if (y == x) return 0.5;
    return 0.0;
}

struct Components {
    std::vector<double> v10; // per case
    std::vector<double> v01; // per control
    double auc;
};

inline Components components(const std::vector<double>& controls, const std::vector<double>& cases) {
    Components c;
    c.v10.assign(cases.size(), 0.0);
    c.v01.assign(controls.size(), 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < cases.size(); ++j) {
        for (std::size_t i = 0; i < controls.size(); ++i) {
            const double p = psi(controls[i], cases[j]);
            c.v10[j] += p;
            c.v01[i] += p;
            total += p;
        }
    }
    for (auto& v : c.v10) v /= static_cast<double>(controls.size());
    for (auto& v : c.v01) v /= static_cast<double>(cases.size());
    c.auc = total / static_cast<double>(cases.size() * controls.size());
    return c;
}

inline double cov(const std::vector<double>& a, const std::vector<double>& b) {
    double ma = 0, mb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= static_cast<double>(a.size());
    mb /= static_cast<double>(b.size());
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - ma) * (b[k] - mb);
    return s / static_cast<double>(a.size() - 1);
}

inline double variance(const std::vector<double>& controls, const std::vector<double>& cases) {
    const Components c = components(controls, cases);
    return cov(c.v10, c.v10) / static_cast<double>(cases.size()) +
           cov(c.v01, c.v01) / static_cast<double>(controls.size());
}

inline double covariance(const std::vector<double>& x1, const std::vector<double>& y1,
                         const std::vector<double>& x2, const std::vector<double>& y2) {
    const Components a = components(x1, y1);
    const Components b = components(x2, y2);
    return cov(a.v10, b.v10) / static_cast<double>(y1.size()) +
           cov(a.v01, b.v01) / static_cast<double>(x1.size());
}

/// Logit interval in long double, for comparing the transform chain.
inline std::array<long double, 2> logit_interval(long double p, long double v, long double z) {
    const long double l = std::log(p / (1.0L - p));
    const long double se = std::sqrt(v) / (p * (1.0L - p));
    auto expit = [](long double t) { return 1.0L / (1.0L + std::exp(-t)); };
    return {expit(l - z * se), expit(l + z * se)};
}

} // namespace oracle
