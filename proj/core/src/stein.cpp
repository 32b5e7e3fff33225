#include "prodnorm/stein.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/quadrature.hpp"
#include "prodnorm/sampling.hpp"

#include "json.hpp"

namespace prodnorm::stein {

std::string to_string(Method m) { return m == Method::monte_carlo ? "monte_carlo" : "quadrature"; }

TestFunction monomial(int k) {
  if (k < 0) throw DomainError("monomial: k must be >= 0");
  auto pw = [](double x, int e) { return e < 0 ? 0.0 : std::pow(x, e); };
  return {"x^" + std::to_string(k), [=](double x) { return pw(x, k); },
          [=](double x) { return k * pw(x, k - 1); }, [=](double x) { return k * (k - 1.0) * pw(x, k - 2); }};
}

std::vector<TestFunction> default_suite() {
  std::vector<TestFunction> s;
  for (int k = 0; k <= 6; ++k) s.push_back(monomial(k));
  s.push_back({"sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
               [](double x) { return -std::sin(x); }});
  s.push_back({"cos", [](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); },
               [](double x) { return -std::cos(x); }});
  s.push_back({"exp(-x^2)", [](double x) { return std::exp(-x * x); },
               [](double x) { return -2.0 * x * std::exp(-x * x); },
               [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); }});
  // exp(-1/(1-x^2)) on (-1, 1); with u = 1 - x^2:
  // g' = g (-2x/u^2), g'' = g (4x^2/u^4 - 2/u^2 - 8x^2/u^3).
  auto bump = [](double x) {
    const double u = 1.0 - x * x;
    return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
  };
  s.push_back({"bump", bump,
               [bump](double x) {
                 const double u = 1.0 - x * x;
                 return u > 0.0 ? bump(x) * (-2.0 * x / (u * u)) : 0.0;
               },
               [bump](double x) {
                 const double u = 1.0 - x * x;
                 if (!(u > 0.0)) return 0.0;
                 const double u2 = u * u;
                 return bump(x) * (4.0 * x * x / (u2 * u2) - 2.0 / u2 - 8.0 * x * x / (u2 * u));
               }});
  return s;
}

double apply_operator(const DistParams& p, const TestFunction& g, double w) {
  const double sn = p.s_n();
  const double a = sn * sn * (1.0 - p.rho * p.rho);
  // Terms with a vanishing factor are skipped so 0 * inf never appears.
  double v = (p.rho * p.s() - w) * g.g(w);
  const double d1 = g.dg(w);
  if (d1 != 0.0) v += (p.n * a + 2.0 * p.rho * sn * w) * d1;
  const double d2 = g.d2g(w);
  if (d2 != 0.0) v += a * w * d2;
  return v;
}

namespace {

SteinReport by_quadrature(const DistParams& p, const TestFunction& g) {
  const double sd = p.s_n() * std::sqrt(p.n * (1.0 + p.rho * p.rho));
  const double mean = p.rho * p.s();
  auto integrand = [&](double w) {
    if (w == 0.0 && p.n == 1) return 0.0;
    const double f = dist::pdf(p, w);
    return f == 0.0 ? 0.0 : apply_operator(p, g, w) * f;
  };
  // Far-tail check: contributions must have died out.
  for (double w : {mean - 80.0 * sd, mean + 80.0 * sd}) {
    const double v = std::fabs(integrand(w)) * 80.0 * sd;
    if (!(v < 1e-10) || !std::isfinite(v)) throw DomainError("stein_residual: test function grows too fast");
  }
  auto absolute = [&](double w) { return std::fabs(integrand(w)); };
  quad::QuadOptions rough;
  rough.rel_tol = 1e-6;
  rough.abs_tol = 0.0;
  rough.throw_on_failure = false;
  const double mag = quad::integrate_lower(absolute, 0.0, sd, rough).value +
                     quad::integrate_upper(absolute, 0.0, sd, rough).value;

  quad::QuadOptions fine;
  fine.abs_tol = 1e-14 * std::max(mag, 1e-300);
  fine.rel_tol = 1e-13;
  fine.max_intervals = 4000;
  fine.throw_on_failure = false;
  const auto lo = quad::integrate_lower(integrand, 0.0, sd, fine);
  const auto hi = quad::integrate_upper(integrand, 0.0, sd, fine);
  const double err = lo.abs_err + hi.abs_err;
  if (!(err <= 1e-9 * std::max(1.0, mag))) {
    throw ConvergenceError("stein_residual: quadrature did not converge", lo.value + hi.value, err);
  }
  return {g.name, lo.value + hi.value, err, Method::quadrature};
}

}  // namespace

SteinReport stein_residual_on_sample(const DistParams& p, const TestFunction& g, const std::vector<double>& draws) {
  if (draws.size() < 2) throw DomainError("stein_residual_on_sample: need at least 2 draws");
  long double sum = 0.0L;
  long double sum2 = 0.0L;
  for (double w : draws) {
    const long double v = apply_operator(p, g, w);
    sum += v;
    sum2 += v * v;
  }
  const long double n = static_cast<long double>(draws.size());
  const long double mean = sum / n;
  const long double var = std::max(0.0L, (sum2 - n * mean * mean) / (n - 1));
  return {g.name, static_cast<double>(mean), static_cast<double>(std::sqrt(var / n)), Method::monte_carlo};
}

SteinReport stein_residual(const DistParams& p, const TestFunction& g, Method method, const McOptions& mc) {
  p.validate();
  if (method == Method::quadrature) return by_quadrature(p, g);
  const auto batch = sampling::sample(p, sampling::Representation::R4_gamma_difference, mc.seed, mc.count);
  return stein_residual_on_sample(p, g, batch.values);
}

Discrimination stein_discriminates(const DistParams& params, const DistParams& wrong_params,
                                   const std::vector<TestFunction>& suite, const McOptions& mc) {
  params.validate();
  wrong_params.validate();
  const auto batch = sampling::sample(wrong_params, sampling::Representation::R4_gamma_difference, mc.seed, mc.count);
  Discrimination d;
  for (const auto& g : suite) {
    d.reports.push_back(stein_residual_on_sample(params, g, batch.values));
    const auto& r = d.reports.back();
    if (!d.flagged && std::fabs(r.residual) > 5.0 * r.error) {
      d.flagged = true;
      d.flagged_by = r.test_function;
    }
  }
  return d;
}

double cf_ode_residual(const DistParams& ode_params, const DistParams& cf_params, const std::vector<double>& t_grid) {
  ode_params.validate();
  cf_params.validate();
  const double n = ode_params.n;
  const double r = ode_params.rho;
  const double s = ode_params.s();
  const std::complex<double> i(0.0, 1.0);
  double worst = 0.0;
  for (double t : t_grid) {
    const double u = s * t;
    const std::complex<double> phi = dist::cf(cf_params, t);
    const std::complex<double> dphi = dist::cf_derivative(cf_params, t) / s;
    const std::complex<double> res =
        ((1.0 - r * r) * u * u / (n * n) - 2.0 * r * i * u / n + 1.0) * dphi + ((1.0 - r * r) * u / n - r * i) * phi;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double cf_ode_residual(const DistParams& p, const std::vector<double>& t_grid) { return cf_ode_residual(p, p, t_grid); }

double polynomial_residual(const DistParams& p, int k) {
  p.validate();
  if (k < 0) throw DomainError("polynomial_residual: k must be >= 0");
  const auto m = dist::moments_from_cumulants(p, k + 1).raw;
  const double sn = p.s_n();
  const double a = sn * sn * (1.0 - p.rho * p.rho);
  // E[w g''] = k(k-1) mu'_{k-1} and E[g'] = k mu'_{k-1}.
  const double km1 = k >= 1 ? m[k - 1] : 0.0;
  const double terms[] = {a * k * (k - 1.0) * km1, p.n * a * k * km1, 2.0 * p.rho * sn * k * m[k],
                          p.rho * p.s() * m[k], -m[k + 1]};
  double sum = 0.0;
  double scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::fabs(t));
  }
  return scale == 0.0 ? 0.0 : sum / scale;
}

std::string to_json(const SteinReport& r) {
  nlohmann::ordered_json j;
  j["test_function"] = r.test_function;
  j["residual"] = r.residual;
  j[r.method == Method::monte_carlo ? "stderr" : "quad_err"] = r.error;
  j["method"] = to_string(r.method);
  return j.dump();
}

std::string to_json(const std::vector<SteinReport>& rs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) arr.push_back(nlohmann::ordered_json::parse(to_json(r)));
  return arr.dump();
}

}  // namespace prodnorm::stein
