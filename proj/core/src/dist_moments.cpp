#include <cmath>
#include <numbers>

#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/specfun.hpp"

namespace prodnorm::dist {
namespace {

using specfun::log_gamma;

void check_order(int k) {
  if (k < 1) throw DomainError("moment order must be >= 1");
}

// C(n, k) as a double; exact for the small orders used here.
double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace

std::string to_string(MomentRoute r) {
  switch (r) {
    case MomentRoute::recursion:
      return "recursion";
    case MomentRoute::hypergeometric:
      return "hypergeometric";
    case MomentRoute::cgf:
      return "cgf";
    case MomentRoute::kan:
      return "kan";
    case MomentRoute::rho0:
      return "rho0";
  }
  return "unknown";
}

std::vector<double> raw_to_cumulants(const std::vector<double>& raw) {
  const int order = static_cast<int>(raw.size()) - 1;
  std::vector<double> kappa(raw.size(), 0.0);
  for (int k = 1; k <= order; ++k) {
    double s = raw[k];
    for (int j = 1; j < k; ++j) s -= binom(k - 1, j - 1) * kappa[j] * raw[k - j];
    kappa[k] = s;
  }
  return kappa;
}

std::vector<double> cumulants_to_raw(const std::vector<double>& kappa) {
  const int order = static_cast<int>(kappa.size()) - 1;
  std::vector<double> raw(kappa.size(), 0.0);
  raw[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += binom(k - 1, j - 1) * kappa[j] * raw[k - j];
    raw[k] = s;
  }
  return raw;
}

std::vector<double> raw_to_central(const std::vector<double>& raw) {
  const int order = static_cast<int>(raw.size()) - 1;
  std::vector<double> central(raw.size(), 0.0);
  central[0] = 1.0;
  if (order < 1) return central;
  const double m = raw[1];
  for (int k = 1; k <= order; ++k) {
    double s = 0.0;
    double mp = 1.0;  // (-m)^{k-j}, j descending
    for (int j = k; j >= 0; --j) {
      s += binom(k, j) * raw[j] * mp;
      mp *= -m;
    }
    central[k] = k == 1 ? 0.0 : s;
  }
  return central;
}

std::vector<double> cumulants(const DistParams& p, int order) {
  p.validate();
  check_order(order);
  const double sn = p.s_n();
  std::vector<double> kappa(order + 1, 0.0);
  kappa[1] = p.rho * p.s();
  for (int k = 2; k <= order; ++k) {
    kappa[k] = 0.5 * p.n * std::pow(sn, k) * factorial(k - 1) *
               (std::pow(1.0 + p.rho, k) + std::pow(p.rho - 1.0, k));
  }
  return kappa;
}

MomentSet moments_recursive(const DistParams& p, int order) {
  p.validate();
  check_order(order);
  const double n = p.n;
  const double sn = p.s_n();
  const double r = p.rho;
  const double r2 = 1.0 - r * r;

  MomentSet m;
  m.order = order;
  m.route = MomentRoute::recursion;
  m.raw.assign(order + 1, 0.0);
  m.raw[0] = 1.0;
  m.raw[1] = r * p.s();
  for (int k = 1; k < order; ++k) {
    m.raw[k + 1] = (n + 2 * k) * r * sn * m.raw[k] + k * (n + k - 1) * sn * sn * r2 * m.raw[k - 1];
  }

  m.central.assign(order + 1, 0.0);
  m.central[0] = 1.0;
  if (order >= 2) m.central[2] = n * sn * sn * (1.0 + r * r);
  for (int k = 2; k < order; ++k) {
    m.central[k + 1] = 2.0 * k * r * sn * m.central[k] +
                       k * sn * sn * (n + k - 1 + (n - k + 1) * r * r) * m.central[k - 1] +
                       k * (k - 1.0) * n * sn * sn * sn * r * r2 * m.central[k - 2];
  }
  m.cumulants = raw_to_cumulants(m.raw);
  return m;
}

MomentSet moments_from_cumulants(const DistParams& p, int order) {
  MomentSet m;
  m.order = order;
  m.route = MomentRoute::cgf;
  m.cumulants = cumulants(p, order);
  m.raw = cumulants_to_raw(m.cumulants);
  std::vector<double> centred = m.cumulants;
  centred[1] = 0.0;
  m.central = cumulants_to_raw(centred);
  return m;
}

HypergeometricMoment moments_hypergeometric(const DistParams& p, int k) {
  p.validate();
  check_order(k);
  const double n = p.n;
  const double r = p.rho;
  const double a = n + k;
  const double b = 0.5 * n;
  const double c = 0.5 * n + k + 1.0;
  const double log_pref = k * std::log(p.s_n()) + log_gamma(n + k) + log_gamma(k + 1.0) -
                          0.5 * n * std::log1p(-r * r) - log_gamma(0.5 * n + k + 1.0) - log_gamma(0.5 * n);
  const auto f1 = specfun::gauss_2f1(a, b, c, -(1.0 - r) / (1.0 + r));
  const auto f2 = specfun::gauss_2f1(a, b, c, -(1.0 + r) / (1.0 - r));
  const double t1 = std::exp(log_pref + (n + k) * std::log1p(-r)) * f1.value;
  const double t2 = std::exp(log_pref + (n + k) * std::log1p(r)) * f2.value;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return {sign * t1 + t2, t1 + t2};
}

double moments_kan_n1(const DistParams& p, int k) {
  p.validate();
  check_order(k);
  if (p.n != 1) throw DomainError("moments_kan_n1: requires n = 1");
  const double front = std::pow(p.s(), k) * factorial(k) * factorial(k) / std::pow(2.0, k);
  const double tr = 2.0 * p.rho;
  double sum = 0.0;
  if (k % 2 == 0) {
    for (int j = 0; j <= k / 2; ++j) {
      const double f = factorial(k / 2 - j);
      sum += std::pow(tr, 2 * j) / (f * f * factorial(2 * j));
    }
  } else {
    for (int j = 0; j <= (k - 1) / 2; ++j) {
      const double f = factorial((k - 1) / 2 - j);
      sum += std::pow(tr, 2 * j + 1) / (f * f * factorial(2 * j + 1));
    }
  }
  return front * sum;
}

double moment_rho0(const DistParams& p, int k) {
  p.validate();
  check_order(k);
  if (p.rho != 0.0) throw DomainError("moment_rho0: requires rho = 0");
  if (k % 2 != 0) return 0.0;
  // s_n sqrt(S) T with E[S^{k/2}] = 2^{k/2} G((n+k)/2)/G(n/2) and E[T^k] = 2^{k/2} G((k+1)/2)/sqrt(pi).
  return std::exp(k * std::numbers::ln2 + k * std::log(p.s_n()) + log_gamma(0.5 * (p.n + k)) +
                  log_gamma(0.5 * (k + 1)) - log_gamma(0.5 * p.n)) /
         std::sqrt(std::numbers::pi);
}

std::vector<double> central_moments_chisq_route(const DistParams& p, int order) {
  p.validate();
  check_order(order);
  const double h = 0.5 * p.n;
  // u[j] = U(-j, 1 - j - n/2, -n/2) = 2^{-j} E[(V - n)^j], V ~ chi2_n.
  std::vector<double> u(order + 1);
  for (int j = 0; j <= order; ++j) u[j] = specfun::confluent_u_poly(j, 1.0 - j - h, -h);
  std::vector<double> mu(order + 1, 0.0);
  mu[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) {
      s += binom(k, j) * u[j] * u[k - j] * std::pow(1.0 + p.rho, j) * std::pow(p.rho - 1.0, k - j);
    }
    mu[k] = std::pow(p.s_n(), k) * s;
  }
  return mu;
}

Shape shape(const DistParams& p) {
  p.validate();
  const double r2 = p.rho * p.rho;
  const double n = p.n;
  const double q = 1.0 + r2;
  Shape s{};
  s.skewness = 2.0 * p.rho * (3.0 + r2) / (std::sqrt(n) * q * std::sqrt(q));
  s.excess_kurtosis = (6.0 + 36.0 * r2 + 6.0 * r2 * r2) / (n * q * q);
  s.kurtosis = 3.0 + s.excess_kurtosis;
  return s;
}

}  // namespace prodnorm::dist
