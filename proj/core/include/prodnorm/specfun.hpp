#pragma once

// Special functions used by the density, distribution-function and moment
// formulas: modified Bessel K, modified Struve L, Gauss 2F1 on the negative
// real axis, the upper incomplete gamma function and the terminating
// confluent hypergeometric U polynomial.
//
// All routines are pure and reentrant.

namespace prodnorm::specfun {

struct EvalResult {
  double value = 0.0;
  double abs_err_est = 0.0;  ///< heuristic, always finite and >= 0
};

/// K_nu(x) for real nu and x > 0. Relative error <= 1e-12 for
/// 1e-8 <= x <= 700, |nu| <= 60. Throws DomainError for x <= 0 and
/// RangeError when the unscaled value over- or underflows.
EvalResult bessel_k(double nu, double x);

/// e^x K_nu(x). Same accuracy as bessel_k; never underflows for large x.
EvalResult bessel_k_scaled(double nu, double x);

/// log K_nu(x), finite for every x > 0 and |nu| up to several hundred.
/// Used where x^nu K_nu(x)-type products would over/underflow.
double log_bessel_k(double nu, double x);

/// Modified Struve function L_nu(x) for nu >= -3/2, x >= 0 by the ascending
/// series (all terms positive, so no cancellation). Throws
/// PrecisionLossError if the term cap is reached.
EvalResult struve_l(double nu, double x);

/// e^{-x} L_nu(x), finite for large x.
EvalResult struve_l_scaled(double nu, double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0 (and 0 <= z <= 1/2).
/// Certified to 1e-10 relative on the argument set of the moment formulas.
EvalResult gauss_2f1(double a, double b, double c, double z);

/// Upper incomplete gamma Gamma(a, x) for a > 0, x >= 0.
EvalResult upper_inc_gamma(double a, double x);

/// Rising factorial (a)_j with (a)_0 = 1.
double pochhammer(double a, unsigned j);

/// U(-m, b, x) as the terminating polynomial
/// (-1)^m sum_j C(m,j) (b+j)_{m-j} (-x)^j.
double confluent_u_poly(unsigned m, double b, double x);

struct BesselRatioBounds {
  double lower;  ///< x / (nu - 1/2 + sqrt((nu - 1/2)^2 + x^2)),   nu > 1/2
  double upper;  ///< x / (nu - 1 + sqrt((nu - 1)^2 + x^2)),       nu > 1/2
  double sharp;  ///< x / (nu - 1/2 + sqrt((nu - 3/2)^2 + x^2)),   nu >= 3/2; NaN otherwise
};

/// Two-sided bounds on K_{nu-1}(x) / K_nu(x).
BesselRatioBounds bessel_ratio_bounds(double nu, double x);

/// log Gamma(x) for x > 0 without touching the global signgam.
double log_gamma(double x);

/// 1 / Gamma(x), zero at the poles.
double rgamma(double x);

}  // namespace prodnorm::specfun
