#pragma once

#include <functional>

namespace prodnorm::quad {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
  /// Throw ConvergenceError when the tolerance is not met (otherwise return
  /// the best estimate with its error).
  bool throw_on_failure = true;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b]. Never
/// evaluates the endpoints, so integrable endpoint singularities (log, power)
/// are handled by repeated bisection.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt = {});

/// Integral over [a, +inf) via x = a + scale * t / (1 - t). `scale` should
/// be of the order of the integrand's decay length.
QuadResult integrate_upper(const Integrand& f, double a, double scale, const QuadOptions& opt = {});

/// Integral over (-inf, b].
QuadResult integrate_lower(const Integrand& f, double b, double scale, const QuadOptions& opt = {});

/// Gauss-Legendre nodes and weights of order n on [-1, 1] (Newton on P_n).
void gauss_legendre(int n, double* nodes, double* weights);

}  // namespace prodnorm::quad
