#pragma once

#include <functional>

namespace prodnorm::roots {

struct RootResult {
  double root = 0.0;
  double f_root = 0.0;
  double lo = 0.0;  ///< final bracket
  double hi = 0.0;
  int iterations = 0;
};

/// Brent's method on a sign-changing bracket [a, b]. Stops when the bracket
/// half-width is below xtol + rtol * |x|. Throws DomainError if f(a), f(b)
/// have the same sign and ConvergenceError (estimate = best point) at the cap.
RootResult brent(const std::function<double(double)>& f, double a, double b, double xtol = 1e-14,
                 double rtol = 4e-16, int max_iter = 200);

}  // namespace prodnorm::roots
