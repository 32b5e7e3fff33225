#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/specfun.hpp"

namespace prodnorm::dist {
namespace {

using specfun::log_gamma;

constexpr int kMaxShells = 200;

// log K_j(y) for j = 0..jmax by the upward ratio recurrence
// K_{j+1}/K_j = K_{j-1}/K_j + 2j/y, which is stable in this direction.
std::vector<double> log_k_ladder(double y, int jmax) {
  std::vector<double> lk(jmax + 1);
  lk[0] = specfun::log_bessel_k(0.0, y);
  if (jmax == 0) return lk;
  lk[1] = specfun::log_bessel_k(1.0, y);
  double ratio = std::exp(lk[1] - lk[0]);
  for (int j = 1; j < jmax; ++j) {
    ratio = 1.0 / ratio + 2.0 * j / y;
    lk[j + 1] = lk[j] + std::log(ratio);
  }
  return lk;
}

struct ShellSummer {
  double log_abs_x;
  double sign_x;
  double log_sx;
  double log_sy;
  double log_r2;
  double a;
  double b;
  double expo;
  std::vector<double> log_k;

  double shell(int n) const {
    double sum = 0.0;
    const double common = n * log_abs_x - std::log(std::numbers::pi) - log_gamma(2.0 * n + 1.0) -
                          (2.0 * n + 0.5) * log_r2 + expo;
    for (int m = 0; m <= 2 * n; ++m) {
      const int pa = m;
      const int pb = 2 * n - m;
      if ((a == 0.0 && pa > 0) || (b == 0.0 && pb > 0)) continue;
      double sign = 1.0;
      if (pb % 2 == 1 && sign_x < 0.0) sign = -sign;
      if (pa % 2 == 1 && a < 0.0) sign = -sign;
      if (pb % 2 == 1 && b < 0.0) sign = -sign;
      const double log_binom = log_gamma(2.0 * n + 1.0) - log_gamma(m + 1.0) - log_gamma(2.0 * n - m + 1.0);
      const double la = pa > 0 ? pa * std::log(std::fabs(a)) : 0.0;
      const double lb = pb > 0 ? pb * std::log(std::fabs(b)) : 0.0;
      const double lt = common + (m - n - 1.0) * log_sx - (m - n + 1.0) * log_sy + log_binom + la + lb +
                        log_k[std::abs(m - n)];
      sum += sign * std::exp(lt);
    }
    return sum;
  }
};

}  // namespace

SeriesResult pdf_nonzero_mean(const NonZeroMeanParams& q, double x, int trunc, bool adaptive) {
  q.validate();
  if (x == 0.0) throw SingularityError("pdf_nonzero_mean: series has a log singularity at x = 0");
  if (trunc < 1) throw DomainError("pdf_nonzero_mean: trunc must be >= 1");
  const double s = q.sigma_x * q.sigma_y;
  const double r2 = 1.0 - q.rho * q.rho;
  const double y = std::fabs(x) / (r2 * s);

  ShellSummer ss;
  ss.log_abs_x = std::log(std::fabs(x));
  ss.sign_x = x > 0.0 ? 1.0 : -1.0;
  ss.log_sx = std::log(q.sigma_x);
  ss.log_sy = std::log(q.sigma_y);
  ss.log_r2 = std::log(r2);
  ss.a = q.mu_x / (q.sigma_x * q.sigma_x) - q.rho * q.mu_y / s;
  ss.b = q.mu_y / (q.sigma_y * q.sigma_y) - q.rho * q.mu_x / s;
  ss.expo = -0.5 / r2 *
            (q.mu_x * q.mu_x / (q.sigma_x * q.sigma_x) + q.mu_y * q.mu_y / (q.sigma_y * q.sigma_y) -
             2.0 * q.rho * (x + q.mu_x * q.mu_y) / s);

  int limit = std::min(trunc, kMaxShells);
  if (adaptive) limit = std::max(limit, 2);
  ss.log_k = log_k_ladder(y, kMaxShells);

  std::vector<double> shells;
  double value = 0.0;
  auto extend = [&](int upto) {
    while (static_cast<int>(shells.size()) < upto) {
      shells.push_back(ss.shell(static_cast<int>(shells.size())));
      value += shells.back();
    }
  };
  auto tail = [&]() {
    if (shells.size() < 2) return std::numeric_limits<double>::infinity();
    const double last = std::fabs(shells.back());
    const double prev = std::fabs(shells[shells.size() - 2]);
    if (last == 0.0) return 0.0;
    if (prev == 0.0) return std::numeric_limits<double>::infinity();
    const double ratio = last / prev;
    return ratio < 1.0 ? last * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
  };

  extend(limit);
  if (!adaptive) return {value, tail(), limit};
  while (!(tail() < 1e-9 * std::fabs(value))) {
    if (limit >= kMaxShells) throw ConvergenceError("pdf_nonzero_mean: shell cap reached", value, tail());
    limit = std::min(2 * limit, kMaxShells);
    extend(limit);
  }
  return {value, tail(), limit};
}

}  // namespace prodnorm::dist
