#pragma once

#include <cstdint>
#include <random>

namespace prodnorm {

/// SplitMix64 step; used only to expand (seed, stream) into engine state.
std::uint64_t splitmix64(std::uint64_t& state);

/// Reproducible variate source: std::mt19937_64 seeded from (seed, stream)
/// through SplitMix64 and std::seed_seq, both fully specified by the
/// standard. Uniforms take the top 53 bits; normals use Box-Muller; gamma
/// variates use Marsaglia-Tsang.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  /// Gamma(shape, 1), shape > 0.
  double gamma(double shape);
  double chi_square(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace prodnorm
