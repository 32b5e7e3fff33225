#include "prodnorm/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "prodnorm/errors.hpp"

namespace prodnorm::specfun {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;
constexpr double kPi = std::numbers::pi;

// Below this argument the Temme pair K_mu, K_{mu+1} can overflow; the
// small-argument expansion is exact to O(x^2) relative there.
constexpr double kTinyX = 1e-100;

// Rescaling threshold for the upward recurrence.
constexpr double kBig = 1e150;

// Taylor coefficients of 1/Gamma(1+z) = sum_j c[j] z^j, |z| <= 1/2
// (Abramowitz & Stegun 6.1.34, shifted by one index).
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

struct TemmeGammas {
  double gam1;   // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
  double gam2;   // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
  double gampl;  // 1/Gamma(1+mu)
  double gammi;  // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu) {
  // Split the series into even and odd powers so gam1 has no cancellation
  // as mu -> 0.
  double even = 0.0;
  double odd_over_mu = 0.0;
  const double mu2 = mu * mu;
  double pe = 1.0;
  for (std::size_t j = 0; j < kRecipGamma.size(); j += 2) {
    even += kRecipGamma[j] * pe;
    if (j + 1 < kRecipGamma.size()) odd_over_mu += kRecipGamma[j + 1] * pe;
    pe *= mu2;
  }
  return {-odd_over_mu, even, even + mu * odd_over_mu, even - mu * odd_over_mu};
}

struct KPair {
  double k_mu;   // e^x K_mu(x)
  double k_mu1;  // e^x K_{mu+1}(x)
};

// |mu| <= 1/2, x >= kTinyX. Returns exponentially scaled K_mu, K_{mu+1}.
KPair k_base_scaled(double mu, double x) {
  const double mu2 = mu * mu;
  if (x < 2.0) {
    // Temme's series.
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::fabs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::fabs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      const double di = i;
      ff = (di * ff + p + q) / (di * di - mu2);
      c *= d / di;
      p /= di - mu;
      q /= di + mu;
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - di * ff);
      if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    if (i > kMaxIter) {
      throw ConvergenceError("bessel_k: Temme series did not converge", sum, std::fabs(sum));
    }
    const double ex = std::exp(x);
    return {sum * ex, sum1 * (2.0 / x) * ex};
  }

  // Steed's continued fraction CF2 (Thompson-Barnett).
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  if (i > kMaxIter) {
    throw ConvergenceError("bessel_k: continued fraction did not converge", s, std::fabs(s));
  }
  h = a1 * h;
  const double kmu = std::sqrt(kPi / (2.0 * x)) / s;
  const double kmu1 = kmu * (mu + x + 0.5 - h) / x;
  return {kmu, kmu1};
}

// e^x K_nu(x) = mant * exp(log_scale), nu >= 0.
struct ScaledK {
  double mant;
  double log_scale;
  int steps;
};

ScaledK k_scaled_log(double nu, double x) {
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  KPair pair = k_base_scaled(mu, x);
  double kmu = pair.k_mu;
  double k1 = pair.k_mu1;
  double log_scale = 0.0;
  const double xi2 = 2.0 / x;
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * k1 + kmu;
    kmu = k1;
    k1 = next;
    if (k1 > kBig) {
      kmu /= kBig;
      k1 /= kBig;
      log_scale += std::log(kBig);
    }
  }
  return {kmu, log_scale, nl};
}

// log K_nu(x) for x < kTinyX from the leading small-argument terms.
double log_k_tiny(double nu, double x) {
  constexpr double kEulerGamma = 0.57721566490153286061;
  if (nu == 0.0) return std::log(-std::log(0.5 * x) - kEulerGamma);
  const double lead = log_gamma(nu) - std::log(2.0) - nu * std::log(0.5 * x);
  if (nu < 1.0 && nu != std::floor(nu)) {
    // K_nu ~ Gamma(nu)/2 (x/2)^-nu + Gamma(-nu)/2 (x/2)^nu
    const double ratio = std::tgamma(-nu) / std::tgamma(nu) * std::pow(0.5 * x, 2.0 * nu);
    return lead + std::log1p(ratio);
  }
  return lead;
}

void check_x(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k: x must be > 0");
}

double rel_err_budget(int steps) { return (16.0 + 2.0 * steps) * std::numeric_limits<double>::epsilon(); }

}  // namespace

double log_bessel_k(double nu, double x) {
  check_x(x);
  nu = std::fabs(nu);
  if (x < kTinyX) return log_k_tiny(nu, x);
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  const ScaledK sk = k_scaled_log(nu, x);
  return std::log(sk.mant) + sk.log_scale - x;
}

EvalResult bessel_k_scaled(double nu, double x) {
  check_x(x);
  nu = std::fabs(nu);
  if (x < kTinyX) {
    const double v = std::exp(log_k_tiny(nu, x) + x);
    if (!std::isfinite(v)) throw RangeError("bessel_k_scaled: overflow");
    return {v, v * rel_err_budget(0)};
  }
  const ScaledK sk = k_scaled_log(nu, x);
  const double v = sk.log_scale == 0.0 ? sk.mant : sk.mant * std::exp(sk.log_scale);
  if (!std::isfinite(v)) throw RangeError("bessel_k_scaled: overflow");
  return {v, v * rel_err_budget(sk.steps)};
}

EvalResult bessel_k(double nu, double x) {
  check_x(x);
  nu = std::fabs(nu);
  double v = 0.0;
  int steps = 0;
  if (x < kTinyX) {
    v = std::exp(log_k_tiny(nu, x));
  } else {
    const ScaledK sk = k_scaled_log(nu, x);
    steps = sk.steps;
    v = sk.log_scale == 0.0 ? sk.mant * std::exp(-x) : std::exp(std::log(sk.mant) + sk.log_scale - x);
  }
  if (!std::isfinite(v)) throw RangeError("bessel_k: overflow; use log_bessel_k");
  if (v < std::numeric_limits<double>::min()) throw RangeError("bessel_k: underflow; use bessel_k_scaled");
  return {v, v * rel_err_budget(steps)};
}

}  // namespace prodnorm::specfun
