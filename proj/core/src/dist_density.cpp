#include <cmath>
#include <limits>
#include <numbers>

#include "dist_internal.hpp"
#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/specfun.hpp"

namespace prodnorm::dist {
namespace {

using specfun::log_gamma;

// Below this Bessel argument x^nu K_nu(x) equals its limit to double precision.
constexpr double kTinyArg = 1e-100;

}  // namespace

double detail::stddev(const DistParams& p) {
  const double sn = p.s_n();
  return sn * std::sqrt(p.n * (1.0 + p.rho * p.rho));
}

double pdf_at_origin(const DistParams& p) {
  p.validate();
  if (p.n == 1) throw SingularityError("pdf: n = 1 density is unbounded at 0");
  const double r2 = 1.0 - p.rho * p.rho;
  const double log_v = (0.5 * p.n - 1.0) * std::log(r2) + log_gamma(0.5 * (p.n - 1)) - log_gamma(0.5 * p.n) -
                       std::log(2.0 * std::sqrt(std::numbers::pi) * p.s_n());
  return std::exp(log_v);
}

double log_pdf(const DistParams& p, double x) {
  p.validate();
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  if (x == 0.0) {
    if (p.n == 1) return std::numeric_limits<double>::infinity();
    return std::log(pdf_at_origin(p));
  }
  const double c = detail::bessel_scale(p);
  const double nu = detail::bessel_order(p);
  const double sn = p.s_n();
  const double ax = std::fabs(x);
  const double y = ax / c;
  if (y < kTinyArg && p.n >= 2) return std::log(pdf_at_origin(p));

  const double log_const = 0.5 * (1 - p.n) * std::numbers::ln2 - 0.5 * (p.n + 1) * std::log(sn) -
                           0.5 * std::log(std::numbers::pi * (1.0 - p.rho * p.rho)) - log_gamma(0.5 * p.n);
  double log_k_scaled;
  if (y < kTinyArg) {
    log_k_scaled = specfun::log_bessel_k(nu, y) + y;
  } else {
    log_k_scaled = std::log(specfun::bessel_k_scaled(nu, y).value);
  }
  // rho x / c - |x| / c never overflows: it is <= 0.
  return log_const + nu * std::log(ax) + (p.rho * x - ax) / c + log_k_scaled;
}

double pdf(const DistParams& p, double x) {
  p.validate();
  if (x == 0.0 && p.n == 1) throw SingularityError("pdf: n = 1 density is unbounded at 0");
  return std::exp(log_pdf(p, x));
}

double pdf_elementary(const DistParams& p, double x) {
  p.validate();
  if (p.n % 2 != 0) throw DomainError("pdf_elementary: n must be even");
  const int m = p.n / 2;
  const double c = detail::bessel_scale(p);
  const double ax = std::fabs(x);
  const double expo = (p.rho * x - ax) / c;
  const double log_front = -m * std::log(2.0 * p.s_n()) - log_gamma(m);
  // Term j carries |x|^{m-1-j}; at x = 0 only j = m - 1 survives.
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    const int power = m - 1 - j;
    if (ax == 0.0 && power > 0) continue;
    const double log_coef = log_gamma(m + j) - log_gamma(m - j) - log_gamma(j + 1.0) + j * std::log(0.5 * c);
    const double log_pow = power > 0 ? power * std::log(ax) : 0.0;
    sum += std::exp(log_front + log_coef + log_pow + expo);
  }
  return sum;
}

double pdf_tail_asymptote(const DistParams& p, double x) {
  p.validate();
  if (x == 0.0) throw DomainError("pdf_tail_asymptote: x must be nonzero");
  const double sn = p.s_n();
  const double ax = std::fabs(x);
  const double rate = x > 0.0 ? 1.0 / (sn * (1.0 + p.rho)) : 1.0 / (sn * (1.0 - p.rho));
  const double log_v = -0.5 * p.n * std::log(2.0 * sn) - log_gamma(0.5 * p.n) + (0.5 * p.n - 1.0) * std::log(ax) -
                       rate * ax;
  return std::exp(log_v);
}

}  // namespace prodnorm::dist
