#pragma once

// Standard-normal special functions and logit transforms.
//
// All functions reject NaN and infinities with ValidationError instead of
// propagating them.

namespace aucplan {

/// Phi(x). Computed through erfc so both tails keep relative accuracy.
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x), without cancellation for large x.
double std_normal_sf(double x);

/// phi(x) = exp(-x^2/2) / sqrt(2 pi).
double std_normal_pdf(double x);

/// Lower quantile Phi^-1(p) for p in (0, 1).
///
/// Wichura's AS241 rational approximation followed by one Newton step
/// against std_normal_cdf. The upper quantile z_q used in sample size
/// formulas is -std_normal_quantile(q), see upper_quantile().
double std_normal_quantile(double p);

/// z_q: the value exceeded with probability q.
inline double upper_quantile(double q) { return -std_normal_quantile(q); }

double logit(double p);
double inv_logit(double x);

} // namespace aucplan
