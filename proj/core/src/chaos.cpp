#include "prodnorm/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/linalg.hpp"
#include "prodnorm/rng.hpp"
#include "prodnorm/sampling.hpp"
#include "prodnorm/specfun.hpp"

namespace prodnorm::chaos {
namespace {

double beta_fn(double a, double b) {
  using specfun::log_gamma;
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

// int int over [a0,a1] x [b0,b1] of |s - t|^beta, cells disjoint or equal.
double cell_integral(double a0, double a1, double b0, double b1, double beta) {
  const double d = (beta + 1.0) * (beta + 2.0);
  auto F = [&](double u) { return std::pow(std::fabs(u), beta + 2.0) / d; };
  return F(b1 - a0) - F(b1 - a1) - F(b0 - a0) + F(b0 - a1);
}

}  // namespace

void ChaosSpec::validate() const {
  const double g2 = gamma2();
  if (!(phi > 0.0 && phi < 1.0)) throw DomainError("chaos: phi must lie in (0, 1)");
  if (!(gamma1 > -1.0 && gamma1 < -0.5)) throw DomainError("chaos: gamma1 must lie in (-1, -1/2)");
  if (!(g2 > -1.0 && g2 < -0.5)) throw DomainError("chaos: derived gamma2 must lie in (-1, -1/2)");
  if (!(gamma1 + g2 > -1.5)) throw DomainError("chaos: gamma1 + gamma2 must exceed -3/2");
  if (!(gamma1 >= g2)) throw DomainError("chaos: requires gamma1 >= gamma2");
  if (grid_m < 1) throw DomainError("chaos: grid_m must be >= 1");
}

YPhi y_phi_params(double phi) {
  if (!(phi > 0.0 && phi < 1.0)) throw DomainError("y_phi_params: phi must lie in (0, 1)");
  const double p1 = 1.0 / (2.0 * std::sqrt(phi));
  const double p2 = 1.0 / (phi + 1.0);
  const double den = std::sqrt(1.0 / (2.0 * phi) + 2.0 * p2 * p2);
  YPhi y{};
  y.a_phi = (p1 + p2) / den;
  y.b_phi = (p1 - p2) / den;
  y.s = (1.0 + phi) / std::sqrt(1.0 + 6.0 * phi + phi * phi);
  y.rho = 2.0 * std::sqrt(phi) / (phi + 1.0);
  return y;
}

std::vector<double> y_phi_cumulants(double phi) {
  const YPhi y = y_phi_params(phi);
  auto k = dist::cumulants(DistParams::with_scale(1, y.rho, y.s), 6);
  k[1] = 0.0;
  return k;
}

double kernel_hs_norm2(const ChaosSpec& spec) {
  spec.validate();
  const double g1 = spec.gamma1;
  const double g2 = spec.gamma2();
  const double b12 = g1 + g2 + 1.0;
  const double b11 = 2.0 * g1 + 1.0;
  const double b22 = 2.0 * g2 + 1.0;
  const double cross = beta_fn(g1 + 1.0, -b12) * beta_fn(g2 + 1.0, -b12);
  const double diag = beta_fn(g1 + 1.0, -b11) * beta_fn(g2 + 1.0, -b22);
  return 0.5 * (cross + diag) * 2.0 / ((2.0 * b12 + 1.0) * (2.0 * b12 + 2.0));
}

std::vector<double> gram_matrix(const ChaosSpec& spec) {
  spec.validate();
  const int m = spec.grid_m;
  const std::size_t dim = 2 * static_cast<std::size_t>(m);
  const double h = 1.0 / m;
  const double g[2] = {spec.gamma1, spec.gamma2()};
  std::vector<double> G(dim * dim, 0.0);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double beta = g[i] + g[j] + 1.0;
      const double ci = beta_fn(g[i] + 1.0, -beta);  // s < t
      const double cj = beta_fn(g[j] + 1.0, -beta);  // s > t
      const double same = 0.5 * (ci + cj) * 2.0 * std::pow(h, beta + 2.0) / ((beta + 1.0) * (beta + 2.0));
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          double v;
          if (a == b) {
            v = same;
          } else {
            const double c = a < b ? ci : cj;
            v = c * cell_integral(a * h, (a + 1) * h, b * h, (b + 1) * h, beta);
          }
          G[(i * m + a) * dim + (j * m + b)] = v / h;
        }
      }
    }
  }
  // Exact symmetry: G_ij(a,b) and G_ji(b,a) are the same integral.
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = r + 1; c < dim; ++c) G[c * dim + r] = G[r * dim + c];
  }
  return G;
}

std::vector<double> raw_eigenvalues(const ChaosSpec& spec, bool* fallback) {
  const std::vector<double> G = gram_matrix(spec);
  const std::size_t dim = 2 * static_cast<std::size_t>(spec.grid_m);
  const std::size_t m = spec.grid_m;
  linalg::Matrix L(dim);
  L.a = G;
  bool fb = false;
  if (!linalg::cholesky(L)) {
    // G is positive semidefinite in exact arithmetic; factor as V D^{1/2}.
    fb = true;
    linalg::Matrix g(dim);
    g.a = G;
    const auto e = linalg::jacobi_eigen(g, true);
    L = linalg::Matrix(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const double root = std::sqrt(std::max(0.0, e.values[k]));
      for (std::size_t r = 0; r < dim; ++r) L(r, k) = e.vectors(r, k) * root;
    }
  }
  if (fallback) *fallback = fb;
  linalg::Matrix J(dim);
  for (std::size_t k = 0; k < m; ++k) {
    J(k, m + k) = 0.5;
    J(m + k, k) = 0.5;
  }
  const linalg::Matrix C = linalg::congruence(L, J);
  return linalg::symmetric_eigenvalues(C);
}

std::vector<double> rosenblatt_eigenvalues(const ChaosSpec& spec, Normalization norm) {
  std::vector<double> lam = raw_eigenvalues(spec);
  double hs2 = 0.0;
  if (norm == Normalization::exact_hs) {
    hs2 = kernel_hs_norm2(spec);
  } else {
    for (double l : lam) hs2 += l * l;
  }
  const double scale = 1.0 / std::sqrt(2.0 * hs2);
  for (double& l : lam) l *= scale;
  return lam;
}

std::vector<double> chaos_cumulants(const std::vector<double>& eigenvalues, double shift, double gaussian_variance,
                                    int max_order) {
  if (max_order < 2) throw DomainError("chaos_cumulants: max_order must be >= 2");
  std::vector<double> k(max_order + 1, 0.0);
  k[1] = shift;
  double fact = 1.0;  // (p-1)!
  double two = 1.0;   // 2^{p-1}
  for (int p = 2; p <= max_order; ++p) {
    fact *= p - 1;
    two *= 2.0;
    double s = 0.0;
    for (double l : eigenvalues) s += std::pow(l, p);
    k[p] = two * fact * s;
  }
  k[2] += gaussian_variance;
  return k;
}

ChaosResult six_moment_gap(const ChaosSpec& spec) {
  spec.validate();
  ChaosResult r;
  r.spec = spec;
  std::vector<double> lam = raw_eigenvalues(spec, &r.cholesky_fallback);
  const double scale = 1.0 / std::sqrt(2.0 * kernel_hs_norm2(spec));
  double sum2 = 0.0;
  for (double& l : lam) {
    l *= scale;
    sum2 += l * l;
  }
  r.eigenvalues = std::move(lam);
  r.gaussian_variance = std::max(0.0, 1.0 - 2.0 * sum2);
  r.cumulants = chaos_cumulants(r.eigenvalues, 0.0, r.gaussian_variance);
  r.target = y_phi_params(spec.phi);
  const auto ky = y_phi_cumulants(spec.phi);
  r.gaps.assign(7, 0.0);
  r.M = 0.0;
  for (int i = 2; i <= 6; ++i) {
    r.gaps[i] = std::fabs(r.cumulants[i] - ky[i]);
    r.M = std::max(r.M, r.gaps[i]);
  }
  return r;
}

std::vector<double> sample_chaos(const std::vector<double>& eigenvalues, double shift, std::uint64_t seed,
                                 std::size_t count, double gaussian_variance, unsigned threads) {
  std::vector<double> out = sampling::sample_quadratic_form(shift, eigenvalues, seed, count, threads);
  if (gaussian_variance > 0.0) {
    const double sd = std::sqrt(gaussian_variance);
    const std::size_t chunks = (count + sampling::kChunk - 1) / sampling::kChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
      // Separate seed family so the normal term is independent of the form.
      Rng rng(seed ^ 0x5DEECE66DULL, c);
      const std::size_t hi = std::min(count, (c + 1) * sampling::kChunk);
      for (std::size_t i = c * sampling::kChunk; i < hi; ++i) out[i] += sd * rng.normal();
    }
  }
  return out;
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size() || a.empty()) throw DomainError("wasserstein1: samples must be non-empty and equal size");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return static_cast<double>(s / a.size());
}

std::vector<SweepRow> chaos_sweep(double phi, const std::vector<double>& gamma1s, int grid_m,
                                  const SweepOptions& opt) {
  std::vector<SweepRow> rows(gamma1s.size());
  std::vector<double> target;
  if (opt.wasserstein_count > 0) {
    const YPhi y = y_phi_params(phi);
    const auto form = sampling::second_chaos_form(DistParams::with_scale(1, y.rho, y.s));
    target = sampling::sample_quadratic_form(0.0, form.eigenvalues, opt.seed + 1, opt.wasserstein_count);
  }
  auto work = [&](std::size_t i) {
    const ChaosSpec spec{gamma1s[i], phi, grid_m};
    const ChaosResult r = six_moment_gap(spec);
    SweepRow row{gamma1s[i], phi, grid_m, {}, r.M, std::numeric_limits<double>::quiet_NaN()};
    row.gaps.assign(r.gaps.begin() + 2, r.gaps.end());
    if (opt.wasserstein_count > 0) {
      auto f = sample_chaos(r.eigenvalues, 0.0, opt.seed, opt.wasserstein_count, r.gaussian_variance);
      row.wasserstein_est = wasserstein1(std::move(f), target);
    }
    rows[i] = std::move(row);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(gamma1s.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < gamma1s.size(); ++i) work(i);
    return rows;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < gamma1s.size(); i += workers) work(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "gamma1,phi,grid_m,kappa2_gap,kappa3_gap,kappa4_gap,kappa5_gap,kappa6_gap,M,wasserstein_est\r\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    os << num(r.gamma1) << ',' << num(r.phi) << ',' << r.grid_m;
    for (double g : r.gaps) os << ',' << num(g);
    os << ',' << num(r.M) << ',' << (std::isnan(r.wasserstein_est) ? std::string() : num(r.wasserstein_est)) << "\r\n";
  }
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need two or more paired points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace prodnorm::chaos
