#pragma once

namespace prodnorm {

/// Z_n = mean of n independent copies of X*Y, (X, Y) zero-mean bivariate
/// normal with standard deviations sigma_x, sigma_y and correlation rho.
struct DistParams {
  int n = 1;
  double rho = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;

  double s() const { return sigma_x * sigma_y; }
  double s_n() const { return sigma_x * sigma_y / n; }

  /// Throws DomainError unless n >= 1, |rho| < 1, sigmas finite and > 0.
  void validate() const;

  /// Parameters with sigma_x = s, sigma_y = 1.
  static DistParams with_scale(int n, double rho, double s = 1.0);
};

struct NonZeroMeanParams {
  double mu_x = 0.0;
  double mu_y = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  double rho = 0.0;

  void validate() const;
};

}  // namespace prodnorm
