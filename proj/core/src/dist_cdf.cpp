#include <algorithm>
#include <cmath>
#include <numbers>

#include "dist_internal.hpp"
#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/quadrature.hpp"
#include "prodnorm/roots.hpp"
#include "prodnorm/specfun.hpp"

namespace prodnorm::dist {
namespace {

using specfun::log_gamma;

// Requested quadrature tolerances; the promised cdf accuracy is 1e-9 absolute.
constexpr double kQuadAbs = 1e-13;
constexpr double kQuadRel = 1e-12;
constexpr double kPromised = 1e-9;

quad::QuadOptions pdf_quad_options() {
  quad::QuadOptions o;
  o.abs_tol = kQuadAbs;
  o.rel_tol = kQuadRel;
  o.max_intervals = 2000;
  o.throw_on_failure = false;
  return o;
}

detail::Piece checked(const quad::QuadResult& r, const char* what) {
  if (!(r.abs_err <= kPromised)) throw ConvergenceError(what, r.value, r.abs_err);
  return {r.value, r.abs_err};
}

// Mapping scale for a semi-infinite integral starting at b: the bulk width
// near the centre, the exponential decay length far out.
double tail_scale(const DistParams& p, double b, bool upper) {
  const double sd = detail::stddev(p);
  const double decay = p.s_n() * (upper ? 1.0 + p.rho : 1.0 - p.rho);
  const double centre = p.rho * p.s();
  return std::fabs(b - centre) > 4.0 * sd ? std::max(decay, 1e-3 * sd) : sd;
}

CdfResult cdf_struve(const DistParams& p, double x) {
  if (p.rho != 0.0) throw DomainError("cdf: Struve form requires rho = 0");
  if (x == 0.0) return {0.5, 0.0, CdfMethod::struve};
  const double nu = detail::bessel_order(p);
  const double y = std::fabs(x) / p.s_n();
  // K and L enter as products, so the e^{-y} and e^{y} scalings cancel.
  const auto k_nu = specfun::bessel_k_scaled(nu, y);
  const auto k_nu1 = specfun::bessel_k_scaled(nu - 1.0, y);
  const auto l_nu = specfun::struve_l_scaled(nu, y);
  const auto l_nu1 = specfun::struve_l_scaled(nu - 1.0, y);
  const double bracket = k_nu.value * l_nu1.value + l_nu.value * k_nu1.value;
  const double bracket_err = k_nu.abs_err_est * l_nu1.value + k_nu.value * l_nu1.abs_err_est +
                             l_nu.abs_err_est * k_nu1.value + l_nu.value * k_nu1.abs_err_est;
  const double half = 0.5 * y * bracket;
  const double v = x > 0.0 ? 0.5 + half : 0.5 - half;
  const double err = 0.5 * y * bracket_err + 4e-16;
  return {std::clamp(v, 0.0, 1.0), err, CdfMethod::struve};
}

// Sum over j of the finite incomplete-gamma expansion giving the mass of
// the tail beyond x on the side of `sign`; rho_side is the correlation seen
// from that side (rho for the right tail, -rho for the left).
CdfResult incgamma_tail(const DistParams& p, double ax, double rho_side) {
  const int m = p.n / 2;
  const double z = ax / (p.s_n() * (1.0 + rho_side));
  const double log_front = m * std::log1p(rho_side) - m * std::numbers::ln2 - log_gamma(m);
  const double w = 0.5 * (1.0 - rho_side);
  double sum = 0.0;
  double err = 0.0;
  for (int j = 0; j < m; ++j) {
    const double log_coef = log_gamma(m + j) - log_gamma(m - j) - log_gamma(j + 1.0) + j * std::log(w);
    const auto g = specfun::upper_inc_gamma(m - j, z);
    const double f = std::exp(log_front + log_coef);
    sum += f * g.value;
    err += f * g.abs_err_est;
  }
  return {sum, err + 4e-16 * sum, CdfMethod::incomplete_gamma};
}

CdfResult cdf_incgamma(const DistParams& p, double x) {
  if (p.n % 2 != 0) throw DomainError("cdf: incomplete-gamma form requires even n");
  if (x <= 0.0) return incgamma_tail(p, -x, -p.rho);
  const CdfResult s = incgamma_tail(p, x, p.rho);
  return {1.0 - s.value, s.abs_err, CdfMethod::incomplete_gamma};
}

CdfMethod resolve(const DistParams& p, CdfMethod m) {
  if (m != CdfMethod::automatic) return m;
  if (p.rho == 0.0) return CdfMethod::struve;
  if (p.n % 2 == 0) return CdfMethod::incomplete_gamma;
  return CdfMethod::quadrature;
}

}  // namespace

detail::Piece detail::integrate_pdf(const DistParams& p, double a, double b) {
  if (a == b) return {0.0, 0.0};
  auto f = [&](double t) { return pdf(p, t); };
  return checked(quad::integrate(f, a, b, pdf_quad_options()), "cdf: quadrature did not converge");
}

detail::Piece detail::integrate_pdf_lower(const DistParams& p, double b) {
  auto f = [&](double t) { return t == 0.0 ? 0.0 : pdf(p, t); };
  return checked(quad::integrate_lower(f, b, tail_scale(p, b, false), pdf_quad_options()),
                 "cdf: lower-tail quadrature did not converge");
}

detail::Piece detail::integrate_pdf_upper(const DistParams& p, double a) {
  auto f = [&](double t) { return t == 0.0 ? 0.0 : pdf(p, t); };
  return checked(quad::integrate_upper(f, a, tail_scale(p, a, true), pdf_quad_options()),
                 "cdf: upper-tail quadrature did not converge");
}

CdfResult cdf_detail(const DistParams& p, double x, CdfMethod method) {
  p.validate();
  if (std::isnan(x)) throw DomainError("cdf: x is NaN");
  if (x == -INFINITY) return {0.0, 0.0, resolve(p, method)};
  if (x == INFINITY) return {1.0, 0.0, resolve(p, method)};
  // 1/2 - (Struve bracket) cancels in the left tail; use the tail forms there.
  if (method == CdfMethod::automatic && x < 0.0 && p.rho == 0.0) {
    method = p.n % 2 == 0 ? CdfMethod::incomplete_gamma : CdfMethod::quadrature;
  }
  switch (resolve(p, method)) {
    case CdfMethod::struve:
      return cdf_struve(p, x);
    case CdfMethod::incomplete_gamma:
      return cdf_incgamma(p, x);
    default:
      break;
  }
  if (x <= 0.0) {
    const auto r = detail::integrate_pdf_lower(p, x);
    return {std::clamp(r.value, 0.0, 1.0), r.err, CdfMethod::quadrature};
  }
  const auto r = detail::integrate_pdf_upper(p, x);
  return {std::clamp(1.0 - r.value, 0.0, 1.0), r.err, CdfMethod::quadrature};
}

double cdf(const DistParams& p, double x) { return cdf_detail(p, x).value; }

CdfResult survival_detail(const DistParams& p, double x, CdfMethod method) {
  p.validate();
  // The Struve form cancels in the right tail; integrate directly there.
  if (method == CdfMethod::automatic && x > 0.0 && p.rho == 0.0) {
    method = p.n % 2 == 0 ? CdfMethod::incomplete_gamma : CdfMethod::quadrature;
  }
  if (x <= 0.0 || resolve(p, method) == CdfMethod::struve) {
    const CdfResult c = cdf_detail(p, x, method);
    return {1.0 - c.value, c.abs_err, c.method};
  }
  if (resolve(p, method) == CdfMethod::incomplete_gamma) {
    if (p.n % 2 != 0) throw DomainError("survival: incomplete-gamma form requires even n");
    return incgamma_tail(p, x, p.rho);
  }
  const auto r = detail::integrate_pdf_upper(p, x);
  return {std::clamp(r.value, 0.0, 1.0), r.err, CdfMethod::quadrature};
}

double survival(const DistParams& p, double x) {
  return survival_detail(p, x).value;
}

double survival_asymptote(const DistParams& p, double x) {
  p.validate();
  if (!(x > 0.0)) throw DomainError("survival_asymptote: x must be > 0");
  const double sn = p.s_n();
  const double h = 0.5 * p.n;
  return std::exp(std::log1p(p.rho) - h * std::numbers::ln2 - (h - 1.0) * std::log(sn) - log_gamma(h) +
                  (h - 1.0) * std::log(x) - x / (sn * (1.0 + p.rho)));
}

double cdf_left_asymptote(const DistParams& p, double x) {
  p.validate();
  if (!(x < 0.0)) throw DomainError("cdf_left_asymptote: x must be < 0");
  DistParams r = p;
  r.rho = -p.rho;
  return survival_asymptote(r, -x);
}

SurvivalBound survival_bound_check(const DistParams& p, double x) {
  p.validate();
  if (p.n != 1) throw DomainError("survival_bound_check: bound is stated for n = 1");
  if (!(p.rho >= 0.0)) throw DomainError("survival_bound_check: requires rho >= 0");
  if (!(x > 0.0)) throw DomainError("survival_bound_check: requires x > 0");
  const double sf = survival(p, x);
  const double bound = p.s() * (1.0 + p.rho) * pdf(p, x);
  return {sf, bound, sf < bound};
}

std::vector<double> cdf_many(const DistParams& p, const std::vector<double>& xs) {
  p.validate();
  if (!std::is_sorted(xs.begin(), xs.end())) throw DomainError("cdf_many: points must be ascending");
  std::vector<double> out(xs.size());
  if (resolve(p, CdfMethod::automatic) != CdfMethod::quadrature) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = cdf(p, xs[i]);
    return out;
  }
  const auto split = std::lower_bound(xs.begin(), xs.end(), 0.0);
  const std::size_t k = static_cast<std::size_t>(split - xs.begin());
  const double f0 = detail::integrate_pdf_lower(p, 0.0).value;
  double acc = f0;
  double prev = 0.0;
  for (std::size_t i = k; i < xs.size(); ++i) {
    if (std::isinf(xs[i])) {
      out[i] = 1.0;
      continue;
    }
    acc += detail::integrate_pdf(p, prev, xs[i]).value;
    prev = xs[i];
    out[i] = std::clamp(acc, 0.0, 1.0);
  }
  acc = f0;
  prev = 0.0;
  for (std::size_t i = k; i-- > 0;) {
    if (std::isinf(xs[i])) {
      out[i] = 0.0;
      continue;
    }
    acc -= detail::integrate_pdf(p, xs[i], prev).value;
    prev = xs[i];
    out[i] = std::clamp(acc, 0.0, 1.0);
  }
  return out;
}

double quantile(const DistParams& p, double q) {
  p.validate();
  if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile: q must lie in (0, 1)");
  if (p.rho == 0.0 && q == 0.5) return 0.0;
  const double sd = detail::stddev(p);
  const double mean = p.rho * p.s();
  auto f = [&](double x) { return cdf(p, x) - q; };

  double lo = mean - sd;
  double hi = mean + sd;
  double step = sd;
  for (int i = 0; f(lo) > 0.0; ++i) {
    if (i > 200) throw ConvergenceError("quantile: could not bracket from below", lo, step);
    hi = lo;
    lo -= step;
    step *= 2.0;
  }
  step = sd;
  for (int i = 0; f(hi) < 0.0; ++i) {
    if (i > 200) throw ConvergenceError("quantile: could not bracket from above", hi, step);
    lo = hi;
    hi += step;
    step *= 2.0;
  }
  const auto r = roots::brent(f, lo, hi, 1e-13 * sd, 4e-16, 200);
  if (!(std::fabs(r.f_root) <= 1e-8)) throw ConvergenceError("quantile: residual above 1e-8", r.root, r.hi - r.lo);
  return r.root;
}

}  // namespace prodnorm::dist
