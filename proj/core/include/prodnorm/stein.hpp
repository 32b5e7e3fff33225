#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "prodnorm/params.hpp"

namespace prodnorm::stein {

enum class Method { monte_carlo, quadrature };

std::string to_string(Method m);

struct TestFunction {
  std::string name;
  std::function<double(double)> g;
  std::function<double(double)> dg;
  std::function<double(double)> d2g;
};

TestFunction monomial(int k);
/// x^0..x^6, sin, cos, exp(-x^2) and the C-infinity bump on (-1, 1).
std::vector<TestFunction> default_suite();

/// (A g)(w) = s_n^2(1-rho^2) w g''(w) + (n s_n^2(1-rho^2) + 2 rho s_n w) g'(w) + (rho s - w) g(w).
/// Its expectation vanishes for every admissible g iff W ~ Z_n.
double apply_operator(const DistParams& p, const TestFunction& g, double w);

struct SteinReport {
  std::string test_function;
  double residual = 0.0;
  double error = 0.0;  ///< Monte-Carlo standard error or quadrature error bound
  Method method = Method::quadrature;
};

struct McOptions {
  std::uint64_t seed = 0;
  std::size_t count = 100000;
};

/// E[(A g)(W)] for W ~ Z_n(p). Quadrature throws DomainError when the
/// integrand has not decayed far in the tails (growth violation).
SteinReport stein_residual(const DistParams& p, const TestFunction& g, Method method = Method::quadrature,
                           const McOptions& mc = {});

/// Sample mean and standard error of (A_p g)(w) over the given draws.
SteinReport stein_residual_on_sample(const DistParams& p, const TestFunction& g, const std::vector<double>& draws);

struct Discrimination {
  std::vector<SteinReport> reports;  ///< operator of `params`, draws from `wrong_params`
  bool flagged = false;
  std::string flagged_by;            ///< first g with |residual| > 5 stderr
};

Discrimination stein_discriminates(const DistParams& params, const DistParams& wrong_params,
                                   const std::vector<TestFunction>& suite, const McOptions& mc = {});

/// max over t of |ODE residual| for the characteristic function of
/// cf_params plugged into the ODE of ode_params (s = 1 units, u = s t).
double cf_ode_residual(const DistParams& ode_params, const DistParams& cf_params, const std::vector<double>& t_grid);
double cf_ode_residual(const DistParams& p, const std::vector<double>& t_grid);

/// E[A x^k] from closed-form moments, relative to the largest term.
double polynomial_residual(const DistParams& p, int k);

std::string to_json(const SteinReport& r);
std::string to_json(const std::vector<SteinReport>& rs);

}  // namespace prodnorm::stein
