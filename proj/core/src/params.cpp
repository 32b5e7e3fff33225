#include "prodnorm/params.hpp"

#include <cmath>

#include "prodnorm/errors.hpp"

namespace prodnorm {
namespace {

void check_common(double rho, double sx, double sy) {
  if (!(std::fabs(rho) < 1.0)) throw DomainError("rho must lie in (-1, 1)");
  if (!(sx > 0.0) || !std::isfinite(sx)) throw DomainError("sigma_x must be finite and > 0");
  if (!(sy > 0.0) || !std::isfinite(sy)) throw DomainError("sigma_y must be finite and > 0");
}

}  // namespace

void DistParams::validate() const {
  if (n < 1) throw DomainError("n must be >= 1");
  check_common(rho, sigma_x, sigma_y);
}

DistParams DistParams::with_scale(int n, double rho, double s) { return DistParams{n, rho, s, 1.0}; }

void NonZeroMeanParams::validate() const {
  if (!std::isfinite(mu_x) || !std::isfinite(mu_y)) throw DomainError("means must be finite");
  check_common(rho, sigma_x, sigma_y);
}

}  // namespace prodnorm
