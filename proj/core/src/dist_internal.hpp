#pragma once

#include "prodnorm/params.hpp"

namespace prodnorm::dist::detail {

/// Bessel argument scale s_n (1 - rho^2).
inline double bessel_scale(const DistParams& p) { return p.s_n() * (1.0 - p.rho * p.rho); }

/// Bessel order (n - 1)/2.
inline double bessel_order(const DistParams& p) { return 0.5 * (p.n - 1); }

/// Standard deviation sqrt(n s_n^2 (1 + rho^2)).
double stddev(const DistParams& p);

/// Integral of the density over [a, b] (a, b of the same sign) with an
/// adaptive rule; returns value and error.
struct Piece {
  double value;
  double err;
};
Piece integrate_pdf(const DistParams& p, double a, double b);
Piece integrate_pdf_lower(const DistParams& p, double b);  // (-inf, b], b <= 0
Piece integrate_pdf_upper(const DistParams& p, double a);  // [a, inf), a >= 0

}  // namespace prodnorm::dist::detail
