#pragma once

// Second Wiener chaos: cumulants of quadratic forms, the six-cumulant gap,
// and the generalized Rosenblatt variable Z_{g1,g2}(1) against its limit Y_phi.
//
// The Rosenblatt kernel h(x1,x2) = 1/2 int_0^1 [(s-x1)_+^{g1}(s-x2)_+^{g2} + (sym)] ds
// factors as h = Phi J Phi*, with Phi(u1,u2)(x) = int (s-x)_+^{g1} u1(s) + (s-x)_+^{g2} u2(s) ds
// and J = 1/2 [[0,I],[I,0]]. The nonzero spectrum of h therefore equals that
// of J G on L2[0,1]^2 with the Gram kernel G = Phi* Phi, which is explicit:
//   G_ij(s,t) = |s-t|^{b_ij} B(g_i+1, -b_ij) for s < t (B(g_j+1, -b_ij) for s > t),
//   b_ij = g_i + g_j + 1.
// No truncation of the x-domain is needed. G is discretised by piecewise
// constants on m uniform cells and the spectrum of L^T J L (G = L L^T) is
// computed by Householder tridiagonalisation and implicit QL.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace prodnorm::chaos {

struct ChaosSpec {
  double gamma1 = -0.6;
  double phi = 0.5;
  int grid_m = 256;

  double gamma2() const { return (gamma1 + 0.5) / phi - 0.5; }
  /// gamma1, gamma2 in (-1, -1/2), gamma1 + gamma2 > -3/2, gamma1 >= gamma2,
  /// phi in (0, 1), grid_m >= 1.
  void validate() const;
};

struct YPhi {
  double a_phi;
  double b_phi;
  double s;
  double rho;
};

/// Y_phi = (a/sqrt2)(X1 - 1) - (b/sqrt2)(X2 - 1), X_i ~ chi2_1, which is the
/// centred product-normal law with the returned (s, rho) and n = 1.
YPhi y_phi_params(double phi);

/// kappa_2..kappa_6 of Y_phi (index = order, entries 0 and 1 are 0).
std::vector<double> y_phi_cumulants(double phi);

/// Exact squared Hilbert-Schmidt norm of the symmetrised kernel.
double kernel_hs_norm2(const ChaosSpec& spec);

struct ChaosResult {
  ChaosSpec spec;
  std::vector<double> eigenvalues;  ///< scaled so Var(Z) = 1 for the exact kernel
  double gaussian_variance = 0.0;   ///< 1 - 2 sum lambda^2: unresolved spectrum, carried as a normal term
  std::vector<double> cumulants;    ///< kappa_0..kappa_6 of the discretised variable (kappa_1 = 0)
  std::vector<double> gaps;         ///< |kappa_i - kappa_i(Y_phi)|, i = 2..6 at their own index
  double M = 0.0;
  YPhi target{};
  bool cholesky_fallback = false;   ///< Gram matrix factored through its eigen-decomposition
};

/// The 2m x 2m Galerkin Gram matrix (row-major), symmetric by construction.
std::vector<double> gram_matrix(const ChaosSpec& spec);

/// Eigenvalues of the discretised symmetrised operator, unnormalised.
std::vector<double> raw_eigenvalues(const ChaosSpec& spec, bool* fallback = nullptr);

enum class Normalization {
  discrete_unit,  ///< 2 sum lambda^2 = 1 for the discretised list
  exact_hs,       ///< divide by sqrt(2 ||h||^2) of the exact kernel; 2 sum lambda^2 <= 1
};

/// Eigenvalues of the discretised kernel, unit-variance normalised.
std::vector<double> rosenblatt_eigenvalues(const ChaosSpec& spec,
                                           Normalization norm = Normalization::discrete_unit);

/// kappa_p = 2^{p-1} (p-1)! sum lambda^p, p = 2..max_order (index = order;
/// kappa_0 = 0, kappa_1 = shift). gaussian_variance is added to kappa_2.
std::vector<double> chaos_cumulants(const std::vector<double>& eigenvalues, double shift = 0.0,
                                    double gaussian_variance = 0.0, int max_order = 6);

/// Full pipeline for one spec: eigenvalues, cumulants, gaps against Y_phi.
/// Uses exact_hs normalisation; the spectrum the grid cannot resolve is
/// carried as a Gaussian term of variance 1 - 2 sum lambda^2, so kappa_2 = 1
/// and kappa_3..kappa_6 converge from below under grid refinement.
ChaosResult six_moment_gap(const ChaosSpec& spec);

/// shift + sum lambda_j (N_j^2 - 1) + sqrt(gaussian_variance) N_0.
std::vector<double> sample_chaos(const std::vector<double>& eigenvalues, double shift, std::uint64_t seed,
                                 std::size_t count, double gaussian_variance = 0.0, unsigned threads = 1);

/// W1 between two equal-size samples via the sorted coupling.
double wasserstein1(std::vector<double> a, std::vector<double> b);

struct SweepRow {
  double gamma1;
  double phi;
  int grid_m;
  std::vector<double> gaps;  ///< kappa2..kappa6 gaps
  double M;
  double wasserstein_est;    ///< NaN when not requested
};

struct SweepOptions {
  std::size_t wasserstein_count = 0;  ///< 0 disables the sampling estimate
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

std::vector<SweepRow> chaos_sweep(double phi, const std::vector<double>& gamma1s, int grid_m,
                                  const SweepOptions& opt = {});

/// Columns gamma1,phi,grid_m,kappa2_gap..kappa6_gap,M,wasserstein_est.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Least-squares slope of log y on log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace prodnorm::chaos
