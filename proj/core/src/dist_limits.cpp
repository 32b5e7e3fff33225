#include <algorithm>
#include <cmath>
#include <complex>

#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"

namespace prodnorm::dist {

VgParams vg_params(const DistParams& p) {
  p.validate();
  const double sn = p.s_n();
  return {static_cast<double>(p.n), p.rho * sn, sn * std::sqrt(1.0 - p.rho * p.rho), 0.0};
}

double chisq_cf_distance(const DistParams& p, double t_max, int points) {
  p.validate();
  if (!(t_max > 0.0) || points < 2) throw DomainError("chisq_cf_distance: needs t_max > 0 and points >= 2");
  const double sn = p.s_n();
  double sup = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = -t_max + 2.0 * t_max * i / (points - 1);
    const std::complex<double> chi = std::pow(std::complex<double>(1.0, -2.0 * sn * t), -0.5 * p.n);
    sup = std::max(sup, std::abs(cf(p, t) - chi));
  }
  return sup;
}

LimitReport limit_checks(const DistParams& p, double t_max) {
  p.validate();
  LimitReport r{};
  r.t_max = t_max;
  r.rho_grid = {0.9, 0.99, 0.999};
  for (double rho : r.rho_grid) {
    DistParams q = p;
    q.rho = rho;
    r.chisq_cf_sup.push_back(chisq_cf_distance(q, t_max));
  }
  r.n_grid = {1, 4, 16, 64, 256};
  for (int n : r.n_grid) {
    DistParams q = p;
    q.n = n;
    const auto k = cumulants(q, 4);
    r.std_kappa3.push_back(k[3] / std::pow(k[2], 1.5));
    r.std_kappa4.push_back(k[4] / (k[2] * k[2]));
  }
  r.vg = vg_params(p);
  return r;
}

}  // namespace prodnorm::dist
