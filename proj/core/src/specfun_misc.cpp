#include <math.h>  // lgamma_r

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "prodnorm/errors.hpp"
#include "prodnorm/specfun.hpp"

namespace prodnorm::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

}  // namespace

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 170.0) return std::exp(-log_gamma(x));
  return 1.0 / std::tgamma(x);
}

double pochhammer(double a, unsigned j) {
  double p = 1.0;
  for (unsigned i = 0; i < j; ++i) p *= a + i;
  return p;
}

double confluent_u_poly(unsigned m, double b, double x) {
  double sum = 0.0;
  double binom = 1.0;
  double xpow = 1.0;
  for (unsigned j = 0; j <= m; ++j) {
    sum += binom * pochhammer(b + j, m - j) * xpow;
    binom = binom * (m - j) / (j + 1.0);
    xpow *= -x;
  }
  return (m % 2 == 0) ? sum : -sum;
}

BesselRatioBounds bessel_ratio_bounds(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_ratio_bounds: x must be > 0");
  if (!(nu > 0.5)) throw DomainError("bessel_ratio_bounds: nu must be > 1/2");
  const double a = nu - 0.5;
  const double b = nu - 1.0;
  BesselRatioBounds r{};
  r.lower = x / (a + std::sqrt(a * a + x * x));
  r.upper = x / (b + std::sqrt(b * b + x * x));
  if (nu >= 1.5) {
    const double c = nu - 1.5;
    r.sharp = x / (a + std::sqrt(c * c + x * x));
  } else {
    r.sharp = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Modified Struve L

namespace {

// e^{-shift} L_nu(x); the series terms (x/2)^{nu+2j+1} / (Gamma(j+3/2) Gamma(j+nu+3/2))
// are all positive for nu >= -3/2. Summation starts at the largest term and
// walks outwards so nothing underflows before it matters.
EvalResult struve_series(double nu, double x, double shift) {
  if (nu < -1.5) throw DomainError("struve_l: nu must be >= -3/2");
  if (!(x >= 0.0)) throw DomainError("struve_l: x must be >= 0");
  const int j0 = (nu == -1.5) ? 1 : 0;
  if (x == 0.0) {
    if (nu + 1.0 > 0.0 || j0 == 1) return {0.0, 0.0};
    if (nu == -1.0) return {2.0 / std::numbers::pi, 0.0};
    throw RangeError("struve_l: unbounded at x = 0 for nu < -1");
  }
  const double hx = 0.5 * x;
  const double hx2 = hx * hx;
  const double log_hx = std::log(hx);
  auto log_term = [&](int j) {
    return (nu + 2.0 * j + 1.0) * log_hx - log_gamma(j + 1.5) - log_gamma(j + nu + 1.5);
  };
  auto ratio = [&](int j) {  // t_{j+1} / t_j
    return hx2 / ((j + 1.5) * (j + nu + 1.5));
  };

  const int jstar = std::max(j0, static_cast<int>(hx));
  const double ref = log_term(jstar);
  constexpr int kMaxTerms = 200000;

  double sum = 1.0;
  int terms = 1;
  double t = 1.0;
  for (int j = jstar; terms < kMaxTerms; ++j) {
    t *= ratio(j);
    sum += t;
    ++terms;
    if (t < kEps * sum * 0.1) break;
  }
  t = 1.0;
  for (int j = jstar - 1; j >= j0 && terms < kMaxTerms; --j) {
    t /= ratio(j);
    sum += t;
    ++terms;
    if (t < kEps * sum * 0.1) break;
  }
  if (terms >= kMaxTerms) {
    const double est = sum * std::exp(ref - shift);
    throw PrecisionLossError("struve_l: term cap reached", est, std::fabs(est));
  }
  const double value = sum * std::exp(ref - shift);
  if (!std::isfinite(value)) throw RangeError("struve_l: overflow; use struve_l_scaled");
  const double rel = kEps * (terms + 4.0 * (1.0 + std::fabs(ref)));
  return {value, std::fabs(value) * rel};
}

}  // namespace

EvalResult struve_l(double nu, double x) { return struve_series(nu, x, 0.0); }

EvalResult struve_l_scaled(double nu, double x) { return struve_series(nu, x, x); }

// ---------------------------------------------------------------------------
// Gauss 2F1

namespace {

// Plain power series; reports error from cancellation and truncation.
EvalResult hyp2f1_series(double a, double b, double c, double z) {
  constexpr long kMaxTerms = 20000000;
  double term = 1.0;
  double sum = 1.0;
  double abs_sum = 1.0;
  long j = 0;
  for (; j < kMaxTerms; ++j) {
    const double jj = static_cast<double>(j);
    const double num = (a + jj) * (b + jj);
    if (num == 0.0) {
      // terminating series
      const double err = 4.0 * kEps * abs_sum;
      return {sum, err};
    }
    const double r = num / ((c + jj) * (jj + 1.0)) * z;
    term *= r;
    sum += term;
    abs_sum += std::fabs(term);
    // Ratios approach |z| from below once j exceeds the parameters, so
    // max(|r|, |z|) bounds the geometric tail.
    const double q = std::max(std::fabs(r), std::fabs(z));
    if (q < 1.0 && jj > std::fabs(a) + std::fabs(b) + std::fabs(c)) {
      const double tail = std::fabs(term) * q / (1.0 - q);
      if (tail <= 0.25 * kEps * std::fabs(sum)) break;
    }
  }
  const double err = 4.0 * kEps * abs_sum + (j >= kMaxTerms ? std::fabs(term) / (1.0 - std::fabs(z)) : 0.0);
  if (j >= kMaxTerms) throw PrecisionLossError("gauss_2f1: series term cap reached", sum, err);
  return {sum, err};
}

}  // namespace

EvalResult gauss_2f1(double a, double b, double c, double z) {
  if (is_nonpositive_integer(c)) throw DomainError("gauss_2f1: c must not be a non-positive integer");
  if (!std::isfinite(z) || z > 0.5) throw DomainError("gauss_2f1: only z <= 1/2 is supported");
  if (z == 0.0) return {1.0, 0.0};

  EvalResult r{};
  if (z > 0.0) {
    r = hyp2f1_series(a, b, c, z);
  } else {
    // Pfaff: 2F1(a,b;c;z) = (1-z)^{-b} 2F1(c-a, b; c; w) = (1-z)^{-a} 2F1(a, c-b; c; w),
    // w = z/(z-1) in (0, 1).
    const double w = z / (z - 1.0);
    const double log1mz = std::log1p(-z);
    const bool term_b = is_nonpositive_integer(c - a) || is_nonpositive_integer(b);
    const bool term_a = is_nonpositive_integer(c - b) || is_nonpositive_integer(a);
    // Coefficients of the b-variant decay like j^{b-a-1}, the a-variant like j^{a-b-1}.
    const bool use_b = term_b || (!term_a && b <= a);
    if (use_b) {
      r = hyp2f1_series(c - a, b, c, w);
      const double f = std::exp(-b * log1mz);
      r = {r.value * f, r.abs_err_est * f + std::fabs(r.value * f) * kEps * (2.0 + std::fabs(b * log1mz))};
    } else {
      r = hyp2f1_series(a, c - b, c, w);
      const double f = std::exp(-a * log1mz);
      r = {r.value * f, r.abs_err_est * f + std::fabs(r.value * f) * kEps * (2.0 + std::fabs(a * log1mz))};
    }
  }
  if (r.abs_err_est > 1e-8 * std::fabs(r.value)) {
    throw PrecisionLossError("gauss_2f1: cancellation exceeds budget", r.value, r.abs_err_est);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Upper incomplete gamma

EvalResult upper_inc_gamma(double a, double x) {
  if (!(a > 0.0)) throw DomainError("upper_inc_gamma: a must be > 0");
  if (!(x >= 0.0)) throw DomainError("upper_inc_gamma: x must be >= 0");
  const double gamma_a = std::tgamma(a);
  if (x == 0.0) return {gamma_a, gamma_a * 2.0 * kEps};
  constexpr int kMaxIter = 100000;
  const double log_pref = a * std::log(x) - x;

  if (x < a + 1.0) {
    // lower gamma by series, then subtract
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    int n = 0;
    for (; n < kMaxIter; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    if (n >= kMaxIter) throw ConvergenceError("upper_inc_gamma: series did not converge", 0.0, 0.0);
    const double lower = sum * std::exp(log_pref);
    const double value = gamma_a - lower;
    const double err = kEps * (4.0 * gamma_a + 4.0 * lower * (1.0 + std::fabs(log_pref)));
    return {value, err};
  }

  // Modified Lentz continued fraction for Gamma(a,x) e^x x^{-a}
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  int i = 1;
  for (; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  if (i >= kMaxIter) throw ConvergenceError("upper_inc_gamma: continued fraction did not converge", 0.0, 0.0);
  const double value = std::exp(log_pref) * h;
  return {value, std::fabs(value) * kEps * (8.0 + std::fabs(log_pref))};
}

}  // namespace prodnorm::specfun
