#include "liebundle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace liebundle {

double norm_inf(const Matrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
    m = std::max(m, row);
  }
  return m;
}

namespace {

struct Lu {
  Matrix lu;
  std::vector<int> perm;
  int sign = 1;
};

Lu lu_factor(const Matrix& a) {
  if (!a.square()) throw std::invalid_argument("lu_factor: square matrix required");
  const int n = a.rows();
  Lu f{a, std::vector<int>(n), 1};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  const double scale = a.max_abs();
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(f.lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= scale * 1e-300 || best == 0.0) throw SingularMatrixError("invert: matrix is singular to working precision");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    for (int i = k + 1; i < n; ++i) {
      f.lu(i, k) /= f.lu(k, k);
      const double lik = f.lu(i, k);
      if (lik == 0.0) continue;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
    }
  }
  return f;
}

void lu_solve_inplace(const Lu& f, std::vector<double>& x) {
  const int n = f.lu.rows();
  // forward with unit lower factor
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
}

}  // namespace

MatrixInverse invert(const Matrix& a) {
  const Lu f = lu_factor(a);
  const int n = a.rows();
  MatrixInverse out{Matrix(n, n), static_cast<double>(f.sign), 0.0};
  for (int i = 0; i < n; ++i) out.det *= f.lu(i, i);
  std::vector<double> col(n);
  for (int c = 0; c < n; ++c) {
    std::fill(col.begin(), col.end(), 0.0);
    for (int i = 0; i < n; ++i)
      if (f.perm[i] == c) col[i] = 1.0;
    lu_solve_inplace(f, col);
    for (int i = 0; i < n; ++i) out.inverse(i, c) = col[i];
  }
  const double na = norm_inf(a);
  const double ni = norm_inf(out.inverse);
  out.rcond = (na > 0.0 && ni > 0.0) ? 1.0 / (na * ni) : 0.0;
  return out;
}

std::vector<double> solve(const Matrix& a, std::span<const double> b) {
  if (a.rows() != static_cast<int>(b.size())) throw std::invalid_argument("solve: size mismatch");
  const Lu f = lu_factor(a);
  std::vector<double> x(b.size());
  for (int i = 0; i < a.rows(); ++i) x[i] = b[static_cast<std::size_t>(f.perm[i])];
  lu_solve_inplace(f, x);
  return x;
}

SymmetricEigen jacobi_eigensolve(const Matrix& sym) {
  if (!sym.square()) throw std::invalid_argument("jacobi_eigensolve: square matrix required");
  const int n = sym.rows();
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (sym(i, j) + sym(j, i));
  Matrix v = Matrix::identity(n);

  auto offdiag = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const double initial = std::max(offdiag(), 1e-300);
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps && offdiag() > 1e-13 * initial; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.values.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] > diag[y]; });
  out.vectors = Matrix(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = diag[order[c]];
    for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  Matrix b = (a.rows() >= a.cols()) ? a : a.transpose();
  const int m = b.rows(), n = b.cols();
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < m; ++i) {
          app += b(i, p) * b(i, p);
          aqq += b(i, q) * b(i, q);
          apq += b(i, p) * b(i, q);
        }
        if (std::abs(apq) <= 1e-16 * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < m; ++i) {
          const double bip = b(i, p), biq = b(i, q);
          b(i, p) = c * bip - s * biq;
          b(i, q) = s * bip + c * biq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += b(i, j) * b(i, j);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

Inertia inertia_of(const std::vector<double>& eigenvalues, double rel_tol) {
  double top = 0.0;
  for (double v : eigenvalues) top = std::max(top, std::abs(v));
  Inertia out;
  for (double v : eigenvalues) {
    if (std::abs(v) < rel_tol * top || v == 0.0)
      ++out.near_zero;
    else if (v > 0.0)
      ++out.positive;
    else
      ++out.negative;
  }
  return out;
}

}  // namespace liebundle
