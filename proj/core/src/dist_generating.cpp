#include <cmath>
#include <complex>

#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"

namespace prodnorm::dist {
namespace {

// The quadratic 1 - 2 rho s_n t - s_n^2 (1 - rho^2) t^2 factors as
// (1 - a t)(1 + b t) with a = s_n (1 + rho), b = s_n (1 - rho).
struct Factors {
  double a;
  double b;
};

Factors factors(const DistParams& p) { return {p.s_n() * (1.0 + p.rho), p.s_n() * (1.0 - p.rho)}; }

}  // namespace

double cgf(const DistParams& p, double t) {
  p.validate();
  const auto [a, b] = factors(p);
  if (!(a * t < 1.0 && b * t > -1.0)) throw DomainError("cgf: t outside -1/(1-rho) < s_n t < 1/(1+rho)");
  return -0.5 * p.n * (std::log1p(-a * t) + std::log1p(b * t));
}

double mgf(const DistParams& p, double t) { return std::exp(cgf(p, t)); }

std::complex<double> cf(const DistParams& p, double t) {
  p.validate();
  const auto [a, b] = factors(p);
  // Both factors have real part 1, so the principal powers are continuous in t.
  const std::complex<double> u(1.0, -a * t);
  const std::complex<double> v(1.0, b * t);
  const double e = -0.5 * p.n;
  return std::pow(u, e) * std::pow(v, e);
}

std::complex<double> cf_derivative(const DistParams& p, double t) {
  const auto [a, b] = factors(p);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> dlog = 0.5 * p.n * (i * a / (1.0 - i * a * t) - i * b / (1.0 + i * b * t));
  return cf(p, t) * dlog;
}

}  // namespace prodnorm::dist
