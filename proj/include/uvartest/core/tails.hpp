#pragma once

namespace uvt {

/// log Gamma(x) for x > 0; reentrant (does not touch signgam).
double log_gamma(double x);

/// P(Z > x) for a standard normal Z.
double normal_sf(double x);

/// z such that P(Z > z) = p, for p in (0, 1).
double normal_upper_quantile(double p);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// P(F > x) for a central F with (d1, d2) degrees of freedom.
/// Throws std::domain_error for x < 0 or non-positive degrees of freedom.
double f_sf(double x, double d1, double d2);

}  // namespace uvt
