#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prodnorm/params.hpp"

namespace prodnorm::sampling {

enum class Representation {
  R1_bilinear,          ///< s_n sum (sqrt(1-rho^2) X_j W_j + rho X_j^2)
  R2_chisq_normal,      ///< rho s_n S + s_n sqrt(1-rho^2) sqrt(S) T
  R4_gamma_difference,  ///< (s_n/2)(1+rho) V - (s_n/2)(1-rho) V'
  R5_uniform_logs,      ///< even n: -s_n(1+rho) sum log U_j + s_n(1-rho) sum log U'_j
  second_chaos,         ///< shift + sum lambda_j (N_j^2 - 1)
};

std::string to_string(Representation r);
/// Accepts the to_string names and the short forms r1, r2, r4, r5, chaos.
Representation representation_from_string(const std::string& s);

struct SampleBatch {
  DistParams params;
  Representation rep = Representation::R4_gamma_difference;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

/// Draws are generated in fixed chunks of kChunk values, chunk c from
/// Rng(seed, c), so the output does not depend on `threads`.
inline constexpr std::size_t kChunk = 1u << 16;

/// i.i.d. draws of Z_n. R5 requires even n (DomainError otherwise).
SampleBatch sample(const DistParams& p, Representation rep, std::uint64_t seed, std::size_t count,
                   unsigned threads = 1);

struct ChaosForm {
  double shift;
  std::vector<double> eigenvalues;
};

/// Z_n = rho s + sum_{j<=2n} lambda_j (N_j^2 - 1) with n eigenvalues
/// s_n(1+rho)/2 and n eigenvalues s_n(rho-1)/2.
ChaosForm second_chaos_form(const DistParams& p);

/// Draws of shift + sum lambda_j (N_j^2 - 1), same chunked stream contract.
std::vector<double> sample_quadratic_form(double shift, const std::vector<double>& eigenvalues, std::uint64_t seed,
                                          std::size_t count, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Goodness of fit and sample cumulants

struct KsResult {
  double statistic;
  double p_value;  ///< asymptotic Kolmogorov approximation
};

/// Kolmogorov tail probability Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// One-sample test against dist::cdf(batch.params).
KsResult ks_statistic(const SampleBatch& batch);
KsResult ks_statistic(const DistParams& reference, std::vector<double> values);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Unbiased k-statistics k1..k4 (index 0 unused).
std::vector<double> k_statistics(const std::vector<double>& values);

/// Large-sample standard errors of k1..k4 from population cumulants
/// kappa[1..8] (index 0 unused).
std::vector<double> k_statistic_stderr(const std::vector<double>& kappa, std::size_t count);

// ---------------------------------------------------------------------------
// Export

/// One `value` column, CRLF rows, 17 significant digits.
void write_csv(std::ostream& os, const std::vector<double>& values);
/// uint64 little-endian count followed by little-endian float64 values.
void write_binary(std::ostream& os, const std::vector<double>& values);
std::vector<double> read_binary(std::istream& is);

}  // namespace prodnorm::sampling
