#include <cmath>
#include <limits>
#include <numbers>

#include "dist_internal.hpp"
#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/roots.hpp"
#include "prodnorm/specfun.hpp"

namespace prodnorm::dist {

std::optional<double> mode_closed_form(const DistParams& p) {
  p.validate();
  if (p.n <= 2 || p.rho == 0.0) return 0.0;
  const double r = std::fabs(p.rho);
  const double rs = p.rho * p.s();
  if (p.n == 4) return 0.25 * rs * (1.0 + r);
  if (p.n == 6) return rs / 12.0 * (1.0 + r) * (3.0 - 1.0 / r + std::sqrt(1.0 / (r * r) + 6.0 / r - 3.0));
  return std::nullopt;
}

ModeBounds mode_bounds(const DistParams& p) {
  p.validate();
  if (p.n < 3) throw DomainError("mode_bounds: requires n >= 3");
  const double r = std::fabs(p.rho);
  const double rs = r * p.s();
  const double n = p.n;
  ModeBounds b{};
  b.lower = rs * (1.0 - 3.0 / n);
  b.upper = rs * (1.0 - 2.0 / n);
  if (p.n >= 4) {
    const double u = 1.0 - 2.0 / n;
    const double v = 1.0 - 4.0 / n;
    b.lower_sharp = 0.5 * rs * (u + std::sqrt(r * r * u * u + (1.0 - r * r) * v * v));
  } else {
    b.lower_sharp = std::numeric_limits<double>::quiet_NaN();
  }
  return b;
}

ModeRoot mode_by_root(const DistParams& p) {
  p.validate();
  if (p.n < 3) throw DomainError("mode_by_root: requires n >= 3");
  if (p.rho == 0.0) throw DomainError("mode_by_root: rho = 0 has mode 0 and no interior root");
  const double r = std::fabs(p.rho);
  const double c = detail::bessel_scale(p);
  const double nu = detail::bessel_order(p);
  // K_{nu-1}(y)/K_nu(y) rises from 0 to 1; the scaled values share e^y.
  auto g = [&](double x) {
    const double y = x / c;
    return specfun::bessel_k_scaled(nu - 1.0, y).value / specfun::bessel_k_scaled(nu, y).value - r;
  };
  const ModeBounds b = mode_bounds(p);
  const double lo = b.lower > 0.0 ? b.lower : 1e-12 * b.upper;
  const auto res = roots::brent(g, lo, b.upper, 1e-12 * p.s(), 4e-16, 200);
  return {std::copysign(res.root, p.rho), res.iterations, lo, b.upper};
}

double mode(const DistParams& p) {
  if (auto m = mode_closed_form(p)) return *m;
  return mode_by_root(p).mode;
}

double median(const DistParams& p) {
  p.validate();
  if (p.rho == 0.0) return 0.0;
  if (p.n == 2) {
    const double s = p.s();
    if (p.rho >= 0.0) return 0.5 * s * (1.0 + p.rho) * std::log1p(p.rho);
    return -0.5 * s * (1.0 - p.rho) * std::log1p(-p.rho);
  }
  return quantile(p, 0.5);
}

MedianAudit median_conjecture_audit(const DistParams& p) {
  p.validate();
  if (!(p.rho > 0.0)) throw DomainError("median_conjecture_audit: requires rho > 0");
  const double n = p.n;
  const double rs = p.rho * p.s();
  MedianAudit a{};
  a.params = p;
  a.median = median(p);
  a.mode = mode(p);
  a.mean = rs;
  const double mid = rs * std::exp(-2.0 / (3.0 * n));
  a.bounds.push_back({"(1-1/n) rho s < Med", (1.0 - 1.0 / n) * rs, a.median, true, (1.0 - 1.0 / n) * rs < a.median});
  a.bounds.push_back({"Med < rho s exp(-2/(3n))", a.median, mid, true, a.median < mid});
  const double poly = (1.0 - 2.0 / (3.0 * n) + 2.0 / (9.0 * n * n)) * rs;
  a.bounds.push_back({"rho s exp(-2/(3n)) < (1-2/(3n)+2/(9n^2)) rho s", mid, poly, true, mid < poly});
  const double log_bound = (1.0 - 2.0 * (1.0 - std::numbers::ln2) / n) * rs;
  const bool applies = p.n >= 2;
  a.bounds.push_back({"Med <= (1-2(1-log 2)/n) rho s", a.median, log_bound, applies,
                      !applies || a.median <= log_bound});
  a.mean_median_mode_order = a.mode < a.median && a.median < a.mean;
  a.all_pass = true;
  for (const auto& b : a.bounds) a.all_pass = a.all_pass && b.pass;
  return a;
}

}  // namespace prodnorm::dist
