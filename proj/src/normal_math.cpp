#include "aucplan/normal_math.hpp"

#include <cmath>
#include <string>

#include "aucplan/errors.hpp"

namespace aucplan {

namespace detail {

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
}

void require_open_unit(double p, const char* name) {
    require_finite(p, name);
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError(std::string(name) + " must lie strictly between 0 and 1");
    }
}

void require_positive(double x, const char* name) {
    require_finite(x, name);
    if (!(x > 0.0)) {
        throw ValidationError(std::string(name) + " must be positive");
    }
}

} // namespace detail

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

template <std::size_t N>
double horner(const double (&c)[N], double x) {
    double acc = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// AS241 (PPND16) coefficients, ascending powers.
constexpr double kCentralNum[] = {
    3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
    1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
    3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kCentralDen[] = {
    1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2,
    5.3941960214247511077e+3, 2.1213794301586595867e+4, 3.9307895800092710610e+4,
    2.8729085735721942674e+4, 5.2264952788528545610e+3};
constexpr double kIntermNum[] = {
    1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
    3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kIntermDen[] = {
    1.0, 2.05319162663775882187e0, 1.67638483018380384940e0,
    6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9};
constexpr double kTailNum[] = {
    6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
    2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kTailDen[] = {
    1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1,
    1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15};

double as241(double p) {
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * horner(kCentralNum, r) / horner(kCentralDen, r);
    }
    double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = horner(kIntermNum, r) / horner(kIntermDen, r);
    } else {
        r -= 5.0;
        x = horner(kTailNum, r) / horner(kTailDen, r);
    }
    return q < 0.0 ? -x : x;
}

} // namespace

double std_normal_cdf(double x) {
    detail::require_finite(x, "x");
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_sf(double x) {
    detail::require_finite(x, "x");
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double std_normal_pdf(double x) {
    detail::require_finite(x, "x");
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_quantile(double p) {
    detail::require_open_unit(p, "p");
    double x = as241(p);
    // Newton polish; residual taken on the smaller tail to avoid cancellation.
    const double density = std_normal_pdf(x);
    if (density > 0.0) {
        const double resid = x <= 0.0 ? std_normal_cdf(x) - p : (1.0 - p) - std_normal_sf(x);
        x -= resid / density;
    }
    return x;
}

double logit(double p) {
    detail::require_open_unit(p, "p");
    return std::log(p / (1.0 - p));
}

double inv_logit(double x) {
    detail::require_finite(x, "x");
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

} // namespace aucplan
