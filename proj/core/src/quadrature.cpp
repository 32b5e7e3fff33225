#include "prodnorm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "prodnorm/errors.hpp"

namespace prodnorm::quad {
namespace {

// QUADPACK qk21 abscissae (descending) and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067909669, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// 10-point Gauss weights for kXgk[1], kXgk[3], ..., kXgk[9].
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = std::fabs(resk);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double y1 = f(center - dx);
    const double y2 = f(center + dx);
    f1[j] = y1;
    f2[j] = y2;
    resk += kWgk[j] * (y1 + y2);
    resabs += kWgk[j] * (std::fabs(y1) + std::fabs(y2));
    if (j % 2 == 1) resg += kWg[j / 2] * (y1 + y2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - reskh);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::fabs(f1[j] - reskh) + std::fabs(f2[j] - reskh));

  const double result = resk * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, result, err};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt) {
  QuadResult out;
  if (a == b) return out;
  std::priority_queue<Segment> heap;
  Segment first = gk21(f, a, b);
  out.evaluations = 21;
  double total = first.value;
  double total_err = first.err;
  heap.push(first);
  int intervals = 1;
  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };

  while (total_err > tolerance() && intervals < opt.max_intervals) {
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;  // cannot split further
    heap.pop();
    const Segment left = gk21(f, worst.a, mid);
    const Segment right = gk21(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Re-sum to shed drift from the incremental updates.
  double sum = 0.0;
  double err = 0.0;
  for (auto h = heap; !h.empty(); h.pop()) {
    sum += h.top().value;
    err += h.top().err;
  }
  out.value = sum;
  out.abs_err = err;
  out.intervals = intervals;
  if (!std::isfinite(sum)) throw ConvergenceError("integrate: non-finite integrand", sum, err);
  if (err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(sum)) && opt.throw_on_failure) {
    throw ConvergenceError("integrate: tolerance not reached", sum, err);
  }
  return out;
}

QuadResult integrate_upper(const Integrand& f, double a, double scale, const QuadOptions& opt) {
  auto g = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = a + scale * t / one_minus;
    const double jac = scale / (one_minus * one_minus);
    const double v = f(x);
    return v == 0.0 ? 0.0 : v * jac;
  };
  return integrate(g, 0.0, 1.0, opt);
}

QuadResult integrate_lower(const Integrand& f, double b, double scale, const QuadOptions& opt) {
  auto g = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = b - scale * t / one_minus;
    const double jac = scale / (one_minus * one_minus);
    const double v = f(x);
    return v == 0.0 ? 0.0 : v * jac;
  };
  return integrate(g, 0.0, 1.0, opt);
}

void gauss_legendre(int n, double* nodes, double* weights) {
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

}  // namespace prodnorm::quad
