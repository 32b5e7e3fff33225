#pragma once

// Distributional theory of Z_n, the mean of n independent copies of the
// product of two zero-mean correlated normals. Z_n ~ VG(n, rho s_n,
// s_n sqrt(1 - rho^2), 0). Every function validates its DistParams.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "prodnorm/params.hpp"

namespace prodnorm::dist {

// ---------------------------------------------------------------------------
// Density

/// Bessel-K form of the density. Throws SingularityError at (n = 1, x = 0).
double pdf(const DistParams& p, double x);

/// log pdf, finite far into both tails.
double log_pdf(const DistParams& p, double x);

/// Finite-sum elementary form; n must be even.
double pdf_elementary(const DistParams& p, double x);

/// One-term tail asymptote for the sign of x (x != 0).
double pdf_tail_asymptote(const DistParams& p, double x);

/// lim_{x -> 0} pdf for n >= 2.
double pdf_at_origin(const DistParams& p);

// ---------------------------------------------------------------------------
// Distribution function

enum class CdfMethod { automatic, struve, incomplete_gamma, quadrature };

struct CdfResult {
  double value = 0.0;
  double abs_err = 0.0;
  CdfMethod method = CdfMethod::automatic;
};

/// P(Z_n <= x). `automatic` picks the Struve form at rho = 0 and x >= 0, the
/// incomplete gamma form for even n and quadrature otherwise (the Struve form
/// cancels in the left tail). Forcing a closed-form
/// method outside its domain throws DomainError.
CdfResult cdf_detail(const DistParams& p, double x, CdfMethod method = CdfMethod::automatic);
double cdf(const DistParams& p, double x);

/// P(Z_n > x), computed without the 1 - cdf cancellation for x > 0.
CdfResult survival_detail(const DistParams& p, double x, CdfMethod method = CdfMethod::automatic);
double survival(const DistParams& p, double x);

/// Right-tail asymptote of the survival function (x > 0).
double survival_asymptote(const DistParams& p, double x);

/// Left-tail asymptote of the distribution function (x < 0).
double cdf_left_asymptote(const DistParams& p, double x);

struct SurvivalBound {
  double survival;
  double bound;  ///< s (1 + rho) f_Z(x)
  bool holds;
};

/// Upper bound on the n = 1 survival function, 0 <= rho < 1, x > 0.
SurvivalBound survival_bound_check(const DistParams& p, double x);

/// cdf at ascending points by integrating between neighbours outward from
/// the origin. Throws DomainError if xs is not sorted.
std::vector<double> cdf_many(const DistParams& p, const std::vector<double>& xs);

/// x with |cdf(x) - q| <= 1e-8, 0 < q < 1.
double quantile(const DistParams& p, double q);

// ---------------------------------------------------------------------------
// Generating functions

/// Exists for -1/(1 - rho) < s_n t < 1/(1 + rho); DomainError outside.
double mgf(const DistParams& p, double t);
double cgf(const DistParams& p, double t);
std::complex<double> cf(const DistParams& p, double t);
/// d/dt of the characteristic function.
std::complex<double> cf_derivative(const DistParams& p, double t);

// ---------------------------------------------------------------------------
// Moments

enum class MomentRoute { recursion, hypergeometric, cgf, kan, rho0 };

std::string to_string(MomentRoute r);

/// Vectors are indexed by order and have size order + 1:
/// raw[0] = 1, central[0] = 1, cumulants[0] = 0.
struct MomentSet {
  int order = 0;
  std::vector<double> raw;
  std::vector<double> central;
  std::vector<double> cumulants;
  MomentRoute route = MomentRoute::recursion;
};

/// Raw moments by the Stein recursion, central moments by its centred
/// analogue, cumulants by conversion from the raw moments.
MomentSet moments_recursive(const DistParams& p, int order);

/// Cumulants in closed form; raw and central moments by conversion.
MomentSet moments_from_cumulants(const DistParams& p, int order);

struct HypergeometricMoment {
  double raw;
  double absolute;
};

/// E[Z_n^k] and E|Z_n|^k from the 2F1 closed forms.
HypergeometricMoment moments_hypergeometric(const DistParams& p, int k);

/// E[Z^k] for n = 1 by the finite double-factorial sum.
double moments_kan_n1(const DistParams& p, int k);

/// E[Z_n^k] at rho = 0 from the normal-variance-mixture form.
double moment_rho0(const DistParams& p, int k);

/// Central moments mu_0..mu_K from the chi-square U-polynomial route.
std::vector<double> central_moments_chisq_route(const DistParams& p, int order);

/// kappa_0..kappa_K (kappa_0 = 0).
std::vector<double> cumulants(const DistParams& p, int order);

/// Conversions on order-indexed vectors.
std::vector<double> raw_to_cumulants(const std::vector<double>& raw);
std::vector<double> cumulants_to_raw(const std::vector<double>& kappa);
std::vector<double> raw_to_central(const std::vector<double>& raw);

struct Shape {
  double skewness;
  double kurtosis;
  double excess_kurtosis;
};

Shape shape(const DistParams& p);

// ---------------------------------------------------------------------------
// Mode and median

double mode(const DistParams& p);

/// Closed forms exist for n in {1, 2, 4, 6} and for rho = 0.
std::optional<double> mode_closed_form(const DistParams& p);

struct ModeRoot {
  double mode;
  int iterations;
  double bracket_lo;  ///< initial bracket in x, before applying sgn(rho)
  double bracket_hi;
};

/// Root of K_{(n-3)/2}(y) = |rho| K_{(n-1)/2}(y); requires n >= 3, rho != 0.
ModeRoot mode_by_root(const DistParams& p);

struct ModeBounds {
  double lower;        ///< rho s (1 - 3/n)
  double upper;        ///< rho s (1 - 2/n)
  double lower_sharp;  ///< n >= 4; NaN otherwise
};

/// Bounds for |mode| in terms of |rho|; requires n >= 3.
ModeBounds mode_bounds(const DistParams& p);

double median(const DistParams& p);

struct BoundCheck {
  std::string name;
  double lhs;
  double rhs;
  bool applicable;
  bool pass;
};

struct MedianAudit {
  DistParams params;
  double median;
  double mode;
  double mean;
  std::vector<BoundCheck> bounds;  ///< the four conjectured bounds
  bool mean_median_mode_order;     ///< mode < median < mean
  bool all_pass;
};

/// Evaluates the conjectured median bounds; requires rho > 0.
MedianAudit median_conjecture_audit(const DistParams& p);

// ---------------------------------------------------------------------------
// Limits and related distributions

struct VgParams {
  double r;
  double theta;
  double sigma;
  double mu;
};

VgParams vg_params(const DistParams& p);

struct LimitReport {
  std::vector<double> rho_grid;         ///< correlations approaching 1
  std::vector<double> chisq_cf_sup;     ///< sup_{|t|<=T} |cf - cf of s_n chi2_n|
  double t_max;
  std::vector<int> n_grid;
  std::vector<double> std_kappa3;       ///< kappa3 / kappa2^{3/2}
  std::vector<double> std_kappa4;       ///< kappa4 / kappa2^2
  VgParams vg;
};

LimitReport limit_checks(const DistParams& p, double t_max = 5.0);

/// sup over a uniform grid of |t| <= t_max of the distance between the cf
/// and that of s_n chi2_n (rho -> 1 limit).
double chisq_cf_distance(const DistParams& p, double t_max, int points = 2001);

// ---------------------------------------------------------------------------
// Non-zero means (n = 1)

struct SeriesResult {
  double value;
  double tail_est;
  int shells;
};

/// Double series for the density of XY with non-zero means. With adaptive
/// set, the shell count doubles from `trunc` until tail_est < 1e-9 value
/// (ConvergenceError past 200 shells). Throws SingularityError at x = 0.
SeriesResult pdf_nonzero_mean(const NonZeroMeanParams& q, double x, int trunc = 16, bool adaptive = true);

}  // namespace prodnorm::dist
