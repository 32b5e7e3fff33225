#pragma once

#include <cstddef>
#include <vector>

namespace prodnorm::linalg {

/// Dense row-major square matrix.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(std::size_t size) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct EigenResult {
  std::vector<double> values;  ///< ascending
  Matrix vectors;              ///< column j is the eigenvector of values[j]; empty unless requested
  int sweeps = 0;
};

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Only the upper
/// triangle is read. Throws ConvergenceError if the off-diagonal mass is not
/// below tol * ||A||_F after max_sweeps.
EigenResult jacobi_eigen(const Matrix& sym, bool want_vectors = false, double tol = 1e-15, int max_sweeps = 60);

/// Eigenvalues only (ascending) by Householder tridiagonalisation and
/// implicit QL with Wilkinson shifts. O(n^3) with a small constant; the
/// lower triangle is read.
std::vector<double> symmetric_eigenvalues(const Matrix& sym);

/// In-place lower Cholesky factor (upper triangle zeroed). Returns false if
/// a non-positive pivot is met; the matrix is then left partially factored.
bool cholesky(Matrix& m);

/// C = A^T B A for square A, symmetric B.
Matrix congruence(const Matrix& a, const Matrix& b);

}  // namespace prodnorm::linalg
