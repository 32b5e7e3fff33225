#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/quadrature.hpp"

using namespace prodnorm;
using namespace prodnorm::dist;

TEST_SUITE("moments") {
  TEST_CASE("raw moments from every route match the generating-function reference") {
    for (const auto& c : oracle::kRawMoments) {
      const auto p = DistParams::with_scale(c.n, c.rho, c.s);
      const auto rec = moments_recursive(p, 8);
      const auto cum = moments_from_cumulants(p, 8);
      CHECK(rec.route == MomentRoute::recursion);
      CHECK(cum.route == MomentRoute::cgf);
      REQUIRE(rec.raw.size() == 9);
      CHECK(rec.raw[0] == 1.0);
      for (int k = 1; k <= 8; ++k) {
        CAPTURE(c.n);
        CAPTURE(k);
        CHECK_REL(rec.raw[k], c.raw[k], 1e-12);
        CHECK_REL(cum.raw[k], c.raw[k], 1e-12);
        CHECK_REL(moments_hypergeometric(p, k).raw, c.raw[k], 1e-10);
        if (c.n == 1) CHECK_REL(moments_kan_n1(p, k), c.raw[k], 1e-12);
      }
    }
  }

  TEST_CASE("central moments: recursion, conversion and the chi-square route agree") {
    for (auto p : {DistParams::with_scale(3, 0.6, 2.0), DistParams::with_scale(1, -0.3), DistParams::with_scale(6, 0.0, 0.7)}) {
      const auto rec = moments_recursive(p, 8);
      const auto conv = raw_to_central(rec.raw);
      const auto chi = central_moments_chisq_route(p, 8);
      CHECK(rec.central[1] == 0.0);
      for (int k = 2; k <= 8; ++k) {
        CHECK_REL(rec.central[k], conv[k], 1e-11);
        CHECK_REL(chi[k], conv[k], 1e-11);
      }
    }
  }

  TEST_CASE("rho = 0 moments") {
    for (int n : {1, 2, 5}) {
      const auto p = DistParams::with_scale(n, 0.0, 1.5);
      const auto rec = moments_recursive(p, 8);
      for (int k = 1; k <= 8; ++k) CHECK_ABS(moment_rho0(p, k), rec.raw[k], 1e-12 * std::fabs(rec.raw[k]) + 1e-15);
    }
    // n = 1: E[X^4 Y^4] = E[X^4] E[Y^4] = 9 s^4 for independent normals.
    CHECK_REL(moments_recursive(DistParams::with_scale(1, 0.0, 2.0), 4).raw[4], 9 * 16.0, 1e-14);
    CHECK_THROWS_AS(moment_rho0(DistParams::with_scale(1, 0.2), 2), DomainError);
  }

  TEST_CASE("absolute moments") {
    const auto p = DistParams::with_scale(3, 0.4, 1.0);
    const auto h = moments_hypergeometric(p, 3);
    CHECK_REL(h.raw, 0.80888888888888889, 1e-12);
    CHECK_REL(h.absolute, 0.847974422381889, 1e-12);
    auto f = [&](double x) { return std::pow(std::fabs(x), 3) * pdf(p, x); };
    const double q = quad::integrate_lower(f, 0, 1).value + quad::integrate_upper(f, 0, 1).value;
    CHECK_REL(h.absolute, q, 1e-10);
    for (int k : {2, 4, 6}) CHECK_REL(moments_hypergeometric(p, k).absolute, moments_hypergeometric(p, k).raw, 1e-12);
    CHECK_REL(moments_hypergeometric(DistParams::with_scale(1, 0.3), 2).raw, 1.18, 1e-12);
  }

  TEST_CASE("cumulant closed form and conversions") {
    const auto p = DistParams::with_scale(3, 0.6, 2.0);
    const auto k = cumulants(p, 6);
    CHECK(k[0] == 0.0);
    CHECK_REL(k[1], 1.2, 1e-15);
    CHECK_REL(k[2], 4.0 * 1.36 / 3.0, 1e-15);
    const auto raw = cumulants_to_raw(k);
    const auto back = raw_to_cumulants(raw);
    for (int j = 1; j <= 6; ++j) CHECK_REL(back[j], k[j], 1e-12);
    // Cumulants scale like s^k and, at fixed s, kappa_k is n^{1-k} times the n = 1 value.
    const auto k1 = cumulants(DistParams::with_scale(1, 0.6, 2.0), 6);
    for (int j = 1; j <= 6; ++j) CHECK_REL(k[j], k1[j] * std::pow(3.0, 1 - j), 1e-13);
    CHECK_THROWS_AS(moments_recursive(p, 0), DomainError);
    CHECK_THROWS_AS(moments_kan_n1(p, 2), DomainError);
  }

  TEST_CASE("shape coefficients") {
    for (auto p : {DistParams::with_scale(3, 0.6, 2.0), DistParams::with_scale(1, -0.8), DistParams::with_scale(9, 0.0)}) {
      const auto k = cumulants(p, 4);
      const auto sh = shape(p);
      CHECK_REL(sh.skewness, k[3] / std::pow(k[2], 1.5), 1e-13);
      CHECK_REL(sh.excess_kurtosis, k[4] / (k[2] * k[2]), 1e-13);
      CHECK_REL(sh.kurtosis, 3 + sh.excess_kurtosis, 1e-15);
    }
    CHECK(shape(DistParams::with_scale(4, 0.0)).skewness == 0.0);
  }
}
