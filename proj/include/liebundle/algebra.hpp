#pragma once

#include <span>
#include <vector>

#include "liebundle/matrix.hpp"
#include "liebundle/params.hpp"
#include "liebundle/rng.hpp"

namespace liebundle {

inline constexpr double kMembershipTol = 1e-12;

inline int skew_dim(int n) { return n * (n - 1) / 2; }
inline int sym_dim(int n) { return n * (n + 1) / 2; }

/// Strictly-lower coordinates, row-major over pairs (r, c) with r > c.
inline int lower_coord_index(int r, int c) { return r * (r - 1) / 2 + c; }

/// Lower-plus-diagonal coordinates, row-major over pairs (r, c) with r >= c.
inline int lower_diag_coord_index(int r, int c) { return r * (r + 1) / 2 + c; }

/// Strictly-upper coordinates, row-major over pairs (i, j) with i < j.
inline int upper_coord_index(int n, int i, int j) { return i * (n - 1) - i * (i - 1) / 2 + (j - i - 1); }

/// The diagonal matrices attached to a deformation sequence: delta, the
/// family delta_{k_i} below each zero, the projectors P_{k_i}, and the
/// windowed pseudoinverses iota(delta_{k_i}) with
/// iota(delta_{k_i}) delta_{k_i} = P_{k_i} - P_{k_{i+1}}.
struct StructureMatrices {
  Matrix delta;
  std::vector<int> boundaries;  // {0, k_1, ..., k_N, n}
  std::vector<Matrix> delta_l;  // i = 0..N
  std::vector<Matrix> proj;     // i = 0..N+1, last one is the zero matrix
  std::vector<Matrix> iota;     // i = 0..N
};

StructureMatrices build_structure(const DeformationParams& p);

struct unchecked_t {};
inline constexpr unchecked_t unchecked{};

/// Element of the deformed skew-symmetric space: m_ij = -(a_i...a_{j-1}) m_ji
/// above the diagonal, zeros on it. Immutable after construction.
class SkewElement {
 public:
  SkewElement(ParamsPtr params, Matrix m, unchecked_t) : params_(std::move(params)), m_(std::move(m)) {}

  const Matrix& matrix() const { return m_; }
  const ParamsPtr& params() const { return params_; }

  /// Strictly-lower entries, row-major. Round-trips with skew_from_coords.
  std::vector<double> coords() const;

 private:
  ParamsPtr params_;
  Matrix m_;
};

/// Element of the deformed symmetric space: m_ij = (a_i...a_{j-1}) m_ji above
/// the diagonal, diagonal unconstrained.
class SymElement {
 public:
  SymElement(ParamsPtr params, Matrix m, unchecked_t) : params_(std::move(params)), m_(std::move(m)) {}

  const Matrix& matrix() const { return m_; }
  const ParamsPtr& params() const { return params_; }

  std::vector<double> coords() const;  // lower plus diagonal, row-major

 private:
  ParamsPtr params_;
  Matrix m_;
};

/// Phase-space point: strictly upper-triangular matrix.
class DualPoint {
 public:
  DualPoint(ParamsPtr params, Matrix rho, unchecked_t) : params_(std::move(params)), rho_(std::move(rho)) {}

  const Matrix& matrix() const { return rho_; }
  const ParamsPtr& params() const { return params_; }

  std::vector<double> coords() const;  // strictly-upper entries, row-major

 private:
  ParamsPtr params_;
  Matrix rho_;
};

SkewElement skew_from_coords(ParamsPtr params, std::span<const double> lower);
SymElement sym_from_coords(ParamsPtr params, std::span<const double> lower_diag);
DualPoint dual_from_coords(ParamsPtr params, std::span<const double> upper);

/// Validating constructors; throw std::invalid_argument when the matrix is
/// not a member at the given relative tolerance.
SkewElement skew_from_matrix(ParamsPtr params, Matrix m, double rel_tol = kMembershipTol);
SymElement sym_from_matrix(ParamsPtr params, Matrix m, double rel_tol = kMembershipTol);
DualPoint dual_from_matrix(ParamsPtr params, Matrix rho);

std::vector<SkewElement> skew_basis(const ParamsPtr& params);
std::vector<DualPoint> dual_basis(const ParamsPtr& params);

/// Residuals of the two equivalent membership tests. `entrywise` is the
/// worst violation of the coefficient relations, `projector` the worst
/// entry of the delta_l / P_l system. Both are reported in absolute terms
/// together with the matrix scale.
struct MembershipReport {
  double entrywise = 0.0;
  double projector = 0.0;
  double scale = 0.0;

  double entrywise_rel() const { return scale > 0.0 ? entrywise / scale : entrywise; }
  double projector_rel() const { return scale > 0.0 ? projector / scale : projector; }
};

MembershipReport skew_membership(const DeformationParams& p, const Matrix& m);
MembershipReport sym_membership(const DeformationParams& p, const Matrix& m);

bool is_member_skew(const DeformationParams& p, const Matrix& m, double rel_tol = kMembershipTol);
bool is_member_sym(const DeformationParams& p, const Matrix& m, double rel_tol = kMembershipTol);

/// [X, Y]_S = X S Y - Y S X. Bilinear in (X, Y), linear in S; the result
/// stays in the skew space.
SkewElement bracket(const SkewElement& x, const SkewElement& y, const SymElement& s);

/// Projection of an arbitrary matrix onto the skew space:
/// A - sum_i iota(delta_{k_i}) A^T delta_{k_i} - sum_{i>=1} (P_{k_{i-1}} - P_{k_i}) A P_{k_i}.
/// When no parameter vanishes this is A - delta^{-1} A^T delta and maps a
/// member X to 2X.
SkewElement skew_part(const ParamsPtr& params, const Matrix& a);

/// pi(A) = strict-upper truncation of A - sum_i iota(delta_{k_i}) A^T delta_{k_i}.
/// Preserves the pairing: Tr(pi(A) Y) = Tr(A Y) for every member Y.
DualPoint pi_project(const ParamsPtr& params, const Matrix& m);

/// <rho, X> = Tr(rho X) = sum_{i<j} rho_ij X_ji.
double trace_pair(const DualPoint& rho, const SkewElement& x);

struct ProductMembershipReport {
  double skew_odd = 0.0;   // S(XS)^{2k-1} against the skew space
  double skew_even = 0.0;  // X(SX)^{2k}
  double sym_odd = 0.0;    // X(SX)^{2k-1} against the symmetric space
  double sym_even = 0.0;   // S(XS)^{2k}

  double max_residual() const;
};

ProductMembershipReport product_membership_check(const SkewElement& x, const SymElement& s, int k);

struct InverseMembershipReport {
  double det = 0.0;
  double rcond = 0.0;
  double residual_rel = 0.0;
};

/// Inverts and tests membership of the inverse in the same space. Throws
/// SingularMatrixError when rcond < 1e-10.
InverseMembershipReport inverse_membership_check(const SkewElement& x);
InverseMembershipReport inverse_membership_check(const SymElement& s);

SkewElement random_skew(const ParamsPtr& params, Rng& rng, double half_width = 1.0);
SymElement random_sym(const ParamsPtr& params, Rng& rng, double half_width = 1.0);
DualPoint random_dual(const ParamsPtr& params, Rng& rng, double half_width = 1.0);

void require_same_params(const ParamsPtr& a, const ParamsPtr& b);

}  // namespace liebundle
