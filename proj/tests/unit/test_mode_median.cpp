#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"

using namespace prodnorm;
using namespace prodnorm::dist;

namespace {

// Golden-section refinement of a grid argmax of the density.
double argmax_pdf(const DistParams& p, double lo, double hi) {
  double best = lo, fbest = -1;
  const int m = 4000;
  for (int i = 0; i <= m; ++i) {
    const double x = lo + (hi - lo) * i / m;
    const double f = pdf(p, x);
    if (f > fbest) {
      fbest = f;
      best = x;
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("mode_median") {
  TEST_CASE("closed-form modes agree with the root finder") {
    for (int n : {4, 6}) {
      for (double rho : {-0.8, -0.2, 0.1, 0.5, 0.95}) {
        for (double s : {0.5, 1.0, 3.0}) {
          const auto p = DistParams::with_scale(n, rho, s);
          CAPTURE(n);
          CAPTURE(rho);
          CHECK_ABS(*mode_closed_form(p), mode_by_root(p).mode, 1e-9 * s);
        }
      }
    }
  }

  TEST_CASE("trivial modes") {
    CHECK(mode(DistParams::with_scale(1, 0.7)) == 0.0);
    CHECK(mode(DistParams::with_scale(2, -0.7)) == 0.0);
    CHECK(mode(DistParams::with_scale(9, 0.0)) == 0.0);
    CHECK_FALSE(mode_closed_form(DistParams::with_scale(5, 0.3)).has_value());
    CHECK_THROWS_AS(mode_by_root(DistParams::with_scale(2, 0.3)), DomainError);
    CHECK_THROWS_AS(mode_by_root(DistParams::with_scale(5, 0.0)), DomainError);
    CHECK_THROWS_AS(mode_bounds(DistParams::with_scale(2, 0.3)), DomainError);
  }

  TEST_CASE("mode bounds hold and the mode maximises the density") {
    for (int n = 3; n <= 12; ++n) {
      for (int i = 1; i <= 9; ++i) {
        const double rho = 0.1 * i;
        const auto p = DistParams::with_scale(n, rho, 1.0);
        const double m = mode(p);
        const auto b = mode_bounds(p);
        CAPTURE(n);
        CAPTURE(rho);
        CHECK(b.lower <= m);
        CHECK(m <= b.upper);
        if (n >= 4) {
          CHECK(b.lower_sharp <= m * (1 + 1e-12));
          CHECK(b.lower_sharp >= b.lower);
        }
        const double h = 1e-4;
        CHECK(pdf(p, m) >= pdf(p, m - h));
        CHECK(pdf(p, m) >= pdf(p, m + h));
        // Negative correlation mirrors the mode.
        CHECK_ABS(mode(DistParams::with_scale(n, -rho, 1.0)), -m, 1e-12);
      }
    }
  }

  TEST_CASE("grid argmax matches the mode for n = 8 and 10") {
    for (int n : {8, 10}) {
      for (double rho : {0.3, 0.7}) {
        const auto p = DistParams::with_scale(n, rho, 1.0);
        const auto b = mode_bounds(p);
        // Grid spacing (upper - lower)/4000 < 1e-4; the mode lies within one cell.
        const double x = argmax_pdf(p, b.lower, b.upper);
        CHECK_ABS(x, mode(p), (b.upper - b.lower) / 4000);
      }
    }
  }

  TEST_CASE("medians match the reference grid") {
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const auto p = DistParams::with_scale(oracle::kMedianN[i], oracle::kMedianRho[j], 1.0);
        CAPTURE(p.n);
        CAPTURE(p.rho);
        CHECK_REL(median(p), oracle::kMedian[i][j], 2e-8);
      }
    }
  }

  TEST_CASE("median special cases") {
    CHECK(median(DistParams::with_scale(3, 0.0)) == 0.0);
    for (double rho : {-0.6, 0.4}) {
      const auto p = DistParams::with_scale(2, rho, 1.7);
      CHECK_ABS(cdf(p, median(p)), 0.5, 1e-14);
    }
    const auto p = DistParams::with_scale(5, 0.3, 2.0);
    auto m = p;
    m.rho = -0.3;
    CHECK_ABS(median(m), -median(p), 1e-9);
  }

  TEST_CASE("conjectured median bounds on the reference grid") {
    for (int n : oracle::kMedianN) {
      for (double rho : oracle::kMedianRho) {
        const auto a = median_conjecture_audit(DistParams::with_scale(n, rho, 1.0));
        CAPTURE(n);
        CAPTURE(rho);
        REQUIRE(a.bounds.size() == 4);
        CHECK(a.all_pass);
        CHECK(a.mean_median_mode_order);
        CHECK(a.bounds[3].applicable == (n >= 2));
        CHECK_REL(a.mean, rho, 1e-15);
      }
    }
    CHECK_THROWS_AS(median_conjecture_audit(DistParams::with_scale(3, 0.0)), DomainError);
    CHECK_THROWS_AS(median_conjecture_audit(DistParams::with_scale(3, -0.2)), DomainError);
  }
}
