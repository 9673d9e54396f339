#pragma once

#include <stdexcept>
#include <vector>

#include "liebundle/matrix.hpp"

namespace liebundle {

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

struct MatrixInverse {
  Matrix inverse;
  double det = 0.0;
  double rcond = 0.0;  // 1 / (norm_inf(A) * norm_inf(A^-1))
};

double norm_inf(const Matrix& a);

/// LU inverse with partial pivoting. Throws SingularMatrixError when a pivot
/// vanishes relative to the matrix scale; callers enforce their own rcond
/// thresholds beyond that.
MatrixInverse invert(const Matrix& a);

/// Solve a x = b for a single right-hand side.
std::vector<double> solve(const Matrix& a, std::span<const double> b);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns, same order as values
};

/// Cyclic Jacobi rotations; the input is symmetrized before iterating.
/// Converges when the off-diagonal Frobenius norm drops below 1e-13 of its
/// initial value.
SymmetricEigen jacobi_eigensolve(const Matrix& sym);

/// Singular values by one-sided Jacobi orthogonalization, descending.
/// Accurate to roundoff relative to the largest value, which keeps rank-gap
/// measurements meaningful far below the matrix scale.
std::vector<double> singular_values(const Matrix& a);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int near_zero = 0;
};

/// Counts signs of eigenvalues; |v| < rel_tol * max|v| counts as near zero.
Inertia inertia_of(const std::vector<double>& eigenvalues, double rel_tol);

}  // namespace liebundle
