#include "liebundle/algebra.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "liebundle/linalg.hpp"

namespace liebundle {

namespace {

Matrix diag_from(const std::vector<double>& d) {
  return Matrix::diagonal(std::span<const double>(d));
}

}  // namespace

StructureMatrices build_structure(const DeformationParams& p) {
  const int n = p.n();
  StructureMatrices s;
  s.boundaries = p.boundaries();
  const int blocks = static_cast<int>(s.boundaries.size()) - 1;  // N + 1

  for (int i = 0; i < blocks; ++i) {
    const int k = s.boundaries[static_cast<std::size_t>(i)];
    std::vector<double> dl(n, 0.0), pr(n, 0.0), io(n, 0.0);
    for (int r = k; r < n; ++r) {
      dl[static_cast<std::size_t>(r)] = p.coeff(k, r);
      pr[static_cast<std::size_t>(r)] = 1.0;
    }
    const int next = s.boundaries[static_cast<std::size_t>(i) + 1];
    for (int r = k; r < next; ++r) {
      // every a in this window is nonzero, so the entry cannot vanish
      assert(dl[static_cast<std::size_t>(r)] != 0.0);
      io[static_cast<std::size_t>(r)] = 1.0 / dl[static_cast<std::size_t>(r)];
    }
    s.delta_l.push_back(diag_from(dl));
    s.proj.push_back(diag_from(pr));
    s.iota.push_back(diag_from(io));
  }
  s.proj.push_back(Matrix(n, n));  // P_n = 0
  s.delta = s.delta_l.front();
  return s;
}

std::vector<double> SkewElement::coords() const {
  const int n = params_->n();
  std::vector<double> v(static_cast<std::size_t>(skew_dim(n)));
  for (int r = 1; r < n; ++r)
    for (int c = 0; c < r; ++c) v[static_cast<std::size_t>(lower_coord_index(r, c))] = m_(r, c);
  return v;
}

std::vector<double> SymElement::coords() const {
  const int n = params_->n();
  std::vector<double> v(static_cast<std::size_t>(sym_dim(n)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c <= r; ++c) v[static_cast<std::size_t>(lower_diag_coord_index(r, c))] = m_(r, c);
  return v;
}

std::vector<double> DualPoint::coords() const {
  const int n = params_->n();
  std::vector<double> v(static_cast<std::size_t>(skew_dim(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v[static_cast<std::size_t>(upper_coord_index(n, i, j))] = rho_(i, j);
  return v;
}

SkewElement skew_from_coords(ParamsPtr params, std::span<const double> lower) {
  const int n = params->n();
  if (static_cast<int>(lower.size()) != skew_dim(n)) throw std::invalid_argument("skew_from_coords: expected n(n-1)/2 coordinates");
  Matrix m(n, n);
  for (int r = 1; r < n; ++r) {
    for (int c = 0; c < r; ++c) {
      const double v = lower[static_cast<std::size_t>(lower_coord_index(r, c))];
      m(r, c) = v;
      m(c, r) = -params->coeff(c, r) * v;
    }
  }
  return SkewElement(std::move(params), std::move(m), unchecked);
}

SymElement sym_from_coords(ParamsPtr params, std::span<const double> lower_diag) {
  const int n = params->n();
  if (static_cast<int>(lower_diag.size()) != sym_dim(n)) throw std::invalid_argument("sym_from_coords: expected n(n+1)/2 coordinates");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= r; ++c) {
      const double v = lower_diag[static_cast<std::size_t>(lower_diag_coord_index(r, c))];
      m(r, c) = v;
      if (c < r) m(c, r) = params->coeff(c, r) * v;
    }
  }
  return SymElement(std::move(params), std::move(m), unchecked);
}

DualPoint dual_from_coords(ParamsPtr params, std::span<const double> upper) {
  const int n = params->n();
  if (static_cast<int>(upper.size()) != skew_dim(n)) throw std::invalid_argument("dual_from_coords: expected n(n-1)/2 coordinates");
  Matrix rho(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rho(i, j) = upper[static_cast<std::size_t>(upper_coord_index(n, i, j))];
  return DualPoint(std::move(params), std::move(rho), unchecked);
}

SkewElement skew_from_matrix(ParamsPtr params, Matrix m, double rel_tol) {
  if (m.rows() != params->n() || m.cols() != params->n()) throw std::invalid_argument("skew_from_matrix: wrong shape");
  if (!is_member_skew(*params, m, rel_tol)) throw std::invalid_argument("skew_from_matrix: matrix violates membership relations");
  return SkewElement(std::move(params), std::move(m), unchecked);
}

SymElement sym_from_matrix(ParamsPtr params, Matrix m, double rel_tol) {
  if (m.rows() != params->n() || m.cols() != params->n()) throw std::invalid_argument("sym_from_matrix: wrong shape");
  if (!is_member_sym(*params, m, rel_tol)) throw std::invalid_argument("sym_from_matrix: matrix violates membership relations");
  return SymElement(std::move(params), std::move(m), unchecked);
}

DualPoint dual_from_matrix(ParamsPtr params, Matrix rho) {
  const int n = params->n();
  if (rho.rows() != n || rho.cols() != n) throw std::invalid_argument("dual_from_matrix: wrong shape");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (rho(i, j) != 0.0) throw std::invalid_argument("dual_from_matrix: matrix is not strictly upper-triangular");
  return DualPoint(std::move(params), std::move(rho), unchecked);
}

std::vector<SkewElement> skew_basis(const ParamsPtr& params) {
  const int dim = skew_dim(params->n());
  std::vector<SkewElement> basis;
  basis.reserve(static_cast<std::size_t>(dim));
  std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
  for (int k = 0; k < dim; ++k) {
    e[static_cast<std::size_t>(k)] = 1.0;
    basis.push_back(skew_from_coords(params, e));
    e[static_cast<std::size_t>(k)] = 0.0;
  }
  return basis;
}

std::vector<DualPoint> dual_basis(const ParamsPtr& params) {
  const int dim = skew_dim(params->n());
  std::vector<DualPoint> basis;
  basis.reserve(static_cast<std::size_t>(dim));
  std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
  for (int k = 0; k < dim; ++k) {
    e[static_cast<std::size_t>(k)] = 1.0;
    basis.push_back(dual_from_coords(params, e));
    e[static_cast<std::size_t>(k)] = 0.0;
  }
  return basis;
}

namespace {

MembershipReport membership_impl(const DeformationParams& p, const Matrix& m, double sign) {
  // sign = +1 tests the skew relations, -1 the symmetric ones
  const int n = p.n();
  MembershipReport rep;
  rep.scale = m.max_abs();
  for (int i = 0; i < n; ++i) {
    if (sign > 0.0) rep.entrywise = std::max(rep.entrywise, std::abs(m(i, i)));
    for (int j = i + 1; j < n; ++j)
      rep.entrywise = std::max(rep.entrywise, std::abs(m(i, j) + sign * p.coeff(i, j) * m(j, i)));
  }

  const StructureMatrices s = build_structure(p);
  const Matrix mt = m.transpose();
  for (std::size_t i = 0; i + 1 < s.boundaries.size(); ++i) {
    const Matrix lhs = s.delta_l[i] * m * s.proj[i];
    const Matrix rhs = s.proj[i] * mt * s.delta_l[i];
    // normalized by the delta_l scale so the two forms stay comparable even
    // for tiny parameter magnitudes
    const double dscale = std::max(s.delta_l[i].max_abs(), 1e-300);
    rep.projector = std::max(rep.projector, (sign > 0.0 ? lhs + rhs : lhs - rhs).max_abs() / dscale);
  }
  return rep;
}

}  // namespace

MembershipReport skew_membership(const DeformationParams& p, const Matrix& m) { return membership_impl(p, m, 1.0); }
MembershipReport sym_membership(const DeformationParams& p, const Matrix& m) { return membership_impl(p, m, -1.0); }

bool is_member_skew(const DeformationParams& p, const Matrix& m, double rel_tol) {
  return skew_membership(p, m).entrywise_rel() <= rel_tol;
}

bool is_member_sym(const DeformationParams& p, const Matrix& m, double rel_tol) {
  return sym_membership(p, m).entrywise_rel() <= rel_tol;
}

void require_same_params(const ParamsPtr& a, const ParamsPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_as(*b)) throw std::invalid_argument("deformation parameters mismatch");
}

SkewElement bracket(const SkewElement& x, const SkewElement& y, const SymElement& s) {
  require_same_params(x.params(), y.params());
  require_same_params(x.params(), s.params());
  Matrix m = x.matrix() * s.matrix() * y.matrix() - y.matrix() * s.matrix() * x.matrix();
  return SkewElement(x.params(), std::move(m), unchecked);
}

SkewElement skew_part(const ParamsPtr& params, const Matrix& a) {
  if (a.rows() != params->n() || a.cols() != params->n()) throw std::invalid_argument("skew_part: wrong shape");
  const StructureMatrices s = build_structure(*params);
  const Matrix at = a.transpose();
  Matrix out = a;
  const std::size_t blocks = s.delta_l.size();
  for (std::size_t i = 0; i < blocks; ++i) out -= s.iota[i] * at * s.delta_l[i];
  for (std::size_t i = 1; i < blocks; ++i) out -= (s.proj[i - 1] - s.proj[i]) * a * s.proj[i];
  return SkewElement(params, std::move(out), unchecked);
}

DualPoint pi_project(const ParamsPtr& params, const Matrix& m) {
  if (m.rows() != params->n() || m.cols() != params->n()) throw std::invalid_argument("pi_project: wrong shape");
  const StructureMatrices s = build_structure(*params);
  const Matrix mt = m.transpose();
  Matrix corrected = m;
  for (std::size_t i = 0; i < s.delta_l.size(); ++i) corrected -= s.iota[i] * mt * s.delta_l[i];
  const int n = params->n();
  Matrix upper(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) upper(i, j) = corrected(i, j);
  return DualPoint(params, std::move(upper), unchecked);
}

double trace_pair(const DualPoint& rho, const SkewElement& x) {
  require_same_params(rho.params(), x.params());
  const int n = rho.params()->n();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += rho.matrix()(i, j) * x.matrix()(j, i);
  return s;
}

double ProductMembershipReport::max_residual() const {
  return std::max(std::max(skew_odd, skew_even), std::max(sym_odd, sym_even));
}

ProductMembershipReport product_membership_check(const SkewElement& x, const SymElement& s, int k) {
  require_same_params(x.params(), s.params());
  if (k < 1) throw std::invalid_argument("product_membership_check: k must be >= 1");
  const DeformationParams& p = *x.params();
  const Matrix& xm = x.matrix();
  const Matrix& sm = s.matrix();
  const Matrix xs = xm * sm;
  const Matrix sx = sm * xm;

  // roundoff lives at the scale of the largest intermediate, so the
  // residuals are measured against it rather than the (possibly cancelled)
  // final products
  double scale = std::max({1.0, xm.max_abs(), sm.max_abs()});
  Matrix xs_pow = Matrix::identity(p.n());
  Matrix sx_pow = Matrix::identity(p.n());
  Matrix xs_odd_pow = xs_pow;
  Matrix sx_odd_pow = sx_pow;
  for (int i = 1; i <= 2 * k; ++i) {
    xs_pow = xs_pow * xs;
    sx_pow = sx_pow * sx;
    scale = std::max({scale, xs_pow.max_abs(), sx_pow.max_abs()});
    if (i == 2 * k - 1) {
      xs_odd_pow = xs_pow;
      sx_odd_pow = sx_pow;
    }
  }

  const Matrix s_xs_odd = sm * xs_odd_pow;   // in A
  const Matrix x_sx_even = xm * sx_pow;      // in A
  const Matrix x_sx_odd = xm * sx_odd_pow;   // in S
  const Matrix s_xs_even = sm * xs_pow;      // in S
  scale = std::max({scale, s_xs_odd.max_abs(), x_sx_even.max_abs(), x_sx_odd.max_abs(), s_xs_even.max_abs()});

  ProductMembershipReport rep;
  rep.skew_odd = skew_membership(p, s_xs_odd).entrywise / scale;
  rep.skew_even = skew_membership(p, x_sx_even).entrywise / scale;
  rep.sym_odd = sym_membership(p, x_sx_odd).entrywise / scale;
  rep.sym_even = sym_membership(p, s_xs_even).entrywise / scale;
  return rep;
}

namespace {

InverseMembershipReport inverse_check_impl(const DeformationParams& p, const Matrix& m, bool skew) {
  MatrixInverse inv = invert(m);
  if (inv.rcond < 1e-10) throw SingularMatrixError("inverse_membership_check: reciprocal condition number below 1e-10");
  InverseMembershipReport rep;
  rep.det = inv.det;
  rep.rcond = inv.rcond;
  rep.residual_rel = skew ? skew_membership(p, inv.inverse).entrywise_rel() : sym_membership(p, inv.inverse).entrywise_rel();
  return rep;
}

}  // namespace

InverseMembershipReport inverse_membership_check(const SkewElement& x) {
  return inverse_check_impl(*x.params(), x.matrix(), true);
}

InverseMembershipReport inverse_membership_check(const SymElement& s) {
  return inverse_check_impl(*s.params(), s.matrix(), false);
}

SkewElement random_skew(const ParamsPtr& params, Rng& rng, double half_width) {
  std::vector<double> v(static_cast<std::size_t>(skew_dim(params->n())));
  for (double& c : v) c = rng.uniform(-half_width, half_width);
  return skew_from_coords(params, v);
}

SymElement random_sym(const ParamsPtr& params, Rng& rng, double half_width) {
  std::vector<double> v(static_cast<std::size_t>(sym_dim(params->n())));
  for (double& c : v) c = rng.uniform(-half_width, half_width);
  return sym_from_coords(params, v);
}

DualPoint random_dual(const ParamsPtr& params, Rng& rng, double half_width) {
  std::vector<double> v(static_cast<std::size_t>(skew_dim(params->n())));
  for (double& c : v) c = rng.uniform(-half_width, half_width);
  return dual_from_coords(params, v);
}

}  // namespace liebundle
