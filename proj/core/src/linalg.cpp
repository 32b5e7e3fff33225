#include "prodnorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prodnorm/errors.hpp"

namespace prodnorm::linalg {

EigenResult jacobi_eigen(const Matrix& sym, bool want_vectors, double tol, int max_sweeps) {
  const std::size_t n = sym.n;
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      a(i, j) = sym(i, j);
      a(j, i) = sym(i, j);
    }
  }
  Matrix v;
  if (want_vectors) {
    v = Matrix(n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
  }
  double frob2 = 0.0;
  for (double x : a.a) frob2 += x * x;
  const double target = tol * tol * frob2;

  EigenResult out;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (2.0 * off <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotation annihilating a(p,q), computed in the stable small-angle form.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double np = arp - s * (arq + tau * arp);
          const double nq = arq + s * (arp - tau * arq);
          a(r, p) = np;
          a(p, r) = np;
          a(r, q) = nq;
          a(q, r) = nq;
        }
        if (want_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            const double vrp = v(r, p);
            const double vrq = v(r, q);
            v(r, p) = vrp - s * (vrq + tau * vrp);
            v(r, q) = vrq + s * (vrp - tau * vrq);
          }
        }
      }
    }
  }
  if (sweep >= max_sweeps) {
    throw ConvergenceError("jacobi_eigen: sweep cap reached", static_cast<double>(sweep), 0.0);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]);
  if (want_vectors) {
    out.vectors = Matrix(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
  }
  out.sweeps = sweep;
  return out;
}

std::vector<double> symmetric_eigenvalues(const Matrix& sym) {
  const int n = static_cast<int>(sym.n);
  std::vector<double> d(n, 0.0), e(n, 0.0);
  if (n == 0) return d;
  Matrix a = sym;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i);
  }
  // Householder reduction of rows n-1..1; a(i, 0..i-1) holds the reflector.
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    if (l == 0) {
      e[i] = a(i, l);
      continue;
    }
    double scale = 0.0;
    for (int k = 0; k <= l; ++k) scale += std::fabs(a(i, k));
    if (scale == 0.0) {
      e[i] = a(i, l);
      continue;
    }
    double h = 0.0;
    for (int k = 0; k <= l; ++k) {
      a(i, k) /= scale;
      h += a(i, k) * a(i, k);
    }
    double f = a(i, l);
    double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    e[i] = scale * g;
    h -= f * g;
    a(i, l) = f - g;
    f = 0.0;
    for (int j = 0; j <= l; ++j) {
      g = 0.0;
      for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
      for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
      e[j] = g / h;
      f += e[j] * a(i, j);
    }
    const double hh = f / (h + h);
    for (int j = 0; j <= l; ++j) {
      f = a(i, j);
      g = e[j] - hh * f;
      e[j] = g;
      for (int k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
    }
  }
  for (int i = 0; i < n; ++i) d[i] = a(i, i);
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  constexpr double kEps = 2.220446049250313e-16;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= kEps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw ConvergenceError("symmetric_eigenvalues: QL iteration cap", l, std::fabs(e[l]));
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i;
      for (i = m - 1; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          // Deflation: the subdiagonal underflowed inside the sweep.
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

bool cholesky(Matrix& m) {
  const std::size_t n = m.n;
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= m(j, k) * m(j, k);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    m(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= m(i, k) * m(j, k);
      m(i, j) = s / ljj;
    }
    for (std::size_t i = 0; i < j; ++i) m(i, j) = 0.0;
  }
  return true;
}

Matrix congruence(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.n;
  Matrix ba(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double bik = b(i, k);
      if (bik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) ba(i, j) += bik * a(k, j);
    }
  }
  Matrix c(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double aki = a(k, i);
      if (aki == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aki * ba(k, j);
    }
  }
  return c;
}

}  // namespace prodnorm::linalg
