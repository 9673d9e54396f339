#include "liebundle/isomorphisms.hpp"

#include <cmath>

#include "liebundle/linalg.hpp"

namespace liebundle {

namespace {

ParamsPtr ones_params(int n) { return make_params(std::vector<double>(static_cast<std::size_t>(n) - 1, 1.0)); }

Matrix delta_matrix(const DeformationParams& p) {
  const int n = p.n();
  Matrix d(n, n);
  for (int r = 0; r < n; ++r) d(r, r) = p.coeff(0, r);
  return d;
}

void require_nonzero(const DeformationParams& p, const char* where) {
  if (!p.all_nonzero()) throw std::invalid_argument(std::string(where) + ": zero deformation parameter");
}

}  // namespace

Matrix IsoMap::coordinate_matrix() const {
  const int dim = skew_dim(source.params->n());
  Matrix f(dim, dim);
  const std::vector<SkewElement> basis = skew_basis(source.params);
  for (int c = 0; c < dim; ++c) {
    const SkewElement image(target.params, forward(basis[static_cast<std::size_t>(c)].matrix()), unchecked);
    const std::vector<double> coords = image.coords();
    for (int r = 0; r < dim; ++r) f(r, c) = coords[static_cast<std::size_t>(r)];
  }
  return f;
}

double IsoMap::invertibility_ratio() const {
  const std::vector<double> sv = singular_values(coordinate_matrix());
  return sv.front() > 0.0 ? sv.back() / sv.front() : 0.0;
}

double IsoMap::homomorphism_residual(Rng& rng, int trials) const {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SkewElement x = random_skew(source.params, rng);
    const SkewElement y = random_skew(source.params, rng);
    const Matrix lhs = forward(bracket(x, y, source.bracket_matrix).matrix());
    const SkewElement fx(target.params, forward(x.matrix()), unchecked);
    const SkewElement fy(target.params, forward(y.matrix()), unchecked);
    const Matrix rhs = bracket(fx, fy, target.bracket_matrix).matrix();
    const double scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
    worst = std::max(worst, max_abs_diff(lhs, rhs) / scale);
  }
  return worst;
}

double IsoMap::image_membership_residual(Rng& rng, int trials) const {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SkewElement x = random_skew(source.params, rng);
    worst = std::max(worst, skew_membership(*target.params, forward(x.matrix())).entrywise_rel());
  }
  return worst;
}

IsoMap iso_delta(const ParamsPtr& params, const SymElement& s) {
  require_same_params(params, s.params());
  require_nonzero(*params, "iso_delta");
  const int n = params->n();
  const Matrix d = delta_matrix(*params);
  Matrix dinv(n, n);
  for (int r = 0; r < n; ++r) dinv(r, r) = 1.0 / d(r, r);

  const ParamsPtr tgt = ones_params(n);
  return IsoMap{IsoKind::DeltaMap,
                BundleSpace{params, s},
                BundleSpace{tgt, SymElement(tgt, s.matrix() * dinv, unchecked)},
                [d](const Matrix& x) { return d * x; }};
}

IsoMap iso_conjugation(const ParamsPtr& params, const SymElement& s, const Matrix& c) {
  require_same_params(params, s.params());
  const int n = params->n();
  if (c.rows() != n || c.cols() != n) throw std::invalid_argument("iso_conjugation: C has wrong shape");
  const MatrixInverse cinv = invert(c);
  if (cinv.rcond < 1e-10) throw SingularMatrixError("iso_conjugation: C is numerically singular");

  const StructureMatrices sm = build_structure(*params);
  Matrix d = sm.delta_l.front();
  if (!params->all_nonzero()) {
    // tilde-delta = sum of the delta_{k_i}; C must respect the block split
    for (std::size_t i = 1; i < sm.delta_l.size(); ++i) d += sm.delta_l[i];
    const double scale = std::max(1.0, c.max_abs());
    for (std::size_t i = 1; i + 1 < sm.boundaries.size(); ++i) {
      const Matrix one = Matrix::identity(n);
      const Matrix upper = sm.proj[i] * c * (one - sm.proj[i]);
      const Matrix lower = (one - sm.proj[i]) * c * sm.proj[i];
      if (upper.max_abs() > 1e-12 * scale || lower.max_abs() > 1e-12 * scale)
        throw std::invalid_argument("iso_conjugation: C is not block-diagonal for the zero pattern");
    }
  }

  const Matrix ct = c.transpose();
  return IsoMap{IsoKind::Conjugation,
                BundleSpace{params, SymElement(params, ct * d * s.matrix() * c * d, unchecked)},
                BundleSpace{params, s},
                [c, d, ct](const Matrix& x) { return c * d * x * ct * d; }};
}

IsoMap iso_a1_zero(const ParamsPtr& params, const SymElement& s) {
  require_same_params(params, s.params());
  if (params->zero_set() != std::vector<int>{1})
    throw std::invalid_argument("iso_a1_zero: requires a_1 = 0 and all other parameters nonzero");
  const int n = params->n();
  const StructureMatrices sm = build_structure(*params);
  const Matrix d1 = sm.delta_l[1];
  const Matrix iota1 = sm.iota[1];

  const ParamsPtr tgt = ones_params(n);
  return IsoMap{IsoKind::A1Zero,
                BundleSpace{params, s},
                BundleSpace{tgt, SymElement(tgt, s.matrix() * iota1, unchecked)},
                [d1](const Matrix& x) { return 0.5 * (d1 * x - x.transpose() * d1); }};
}

Signature classify_signature(const ParamsPtr& params, const SymElement& s, double degeneracy_tol) {
  require_same_params(params, s.params());
  require_nonzero(*params, "classify_signature");
  const int n = params->n();
  Matrix dinv(n, n);
  for (int r = 0; r < n; ++r) dinv(r, r) = 1.0 / params->coeff(0, r);
  const Matrix m = s.matrix() * dinv;
  // S delta^-1 is symmetric whenever S is a member; a large asymmetry means
  // the input was not one
  if (max_abs_diff(m, m.transpose()) > 1e-8 * std::max(1.0, m.max_abs()))
    throw std::invalid_argument("classify_signature: S delta^-1 is not symmetric; S is not a member");
  const SymmetricEigen eig = jacobi_eigensolve(m);
  const Inertia in = inertia_of(eig.values, degeneracy_tol);
  if (in.near_zero > 0) throw DegenerateClassificationError("classify_signature: near-zero eigenvalue of S delta^-1");
  return Signature{in.positive, in.negative};
}

std::string so_name(const Signature& sig) {
  const int hi = std::max(sig.p, sig.q);
  const int lo = std::min(sig.p, sig.q);
  if (lo == 0) return "so(" + std::to_string(hi) + ")";
  return "so(" + std::to_string(hi) + "," + std::to_string(lo) + ")";
}

IsoMap so_pq_certificate(const ParamsPtr& params, const SymElement& s) {
  require_same_params(params, s.params());
  require_nonzero(*params, "so_pq_certificate");
  const int n = params->n();
  const Matrix d = delta_matrix(*params);
  Matrix dinv(n, n);
  for (int r = 0; r < n; ++r) dinv(r, r) = 1.0 / d(r, r);
  const Matrix m = s.matrix() * dinv;

  const SymmetricEigen eig = jacobi_eigensolve(m);  // descending: positives first
  Matrix cc(n, n);
  Matrix dpm(n, n);
  for (int c = 0; c < n; ++c) {
    const double lam = eig.values[static_cast<std::size_t>(c)];
    if (lam == 0.0) throw DegenerateClassificationError("so_pq_certificate: singular S delta^-1");
    const double scale = 1.0 / std::sqrt(std::abs(lam));
    for (int r = 0; r < n; ++r) cc(r, c) = eig.vectors(r, c) * scale;
    dpm(c, c) = lam > 0.0 ? 1.0 : -1.0;
  }
  // C^T (S delta^-1) C = diag(+-1); map X -> C^-1 delta X C^-T
  const Matrix cinv = invert(cc).inverse;
  const Matrix cinv_t = cinv.transpose();

  const ParamsPtr tgt = ones_params(n);
  return IsoMap{IsoKind::Composed,
                BundleSpace{params, s},
                BundleSpace{tgt, SymElement(tgt, dpm, unchecked)},
                [cinv, d, cinv_t](const Matrix& x) { return cinv * d * x * cinv_t; }};
}

SemidirectBlocks semidirect_split(const SkewElement& x, int k) {
  const ParamsPtr& params = x.params();
  const int n = params->n();
  bool k_is_zero = false;
  for (int z : params->zero_set()) k_is_zero = k_is_zero || z == k;
  if (!k_is_zero) throw std::invalid_argument("semidirect_split: a_k must be zero");

  const std::vector<double>& a = params->a();
  const ParamsPtr prefix = make_params(std::vector<double>(a.begin(), a.begin() + (k - 1)));
  const ParamsPtr suffix = make_params(std::vector<double>(a.begin() + k, a.end()));

  Matrix ab(k, k), cb(n - k, n - k), bb(n - k, k);
  const Matrix& m = x.matrix();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) ab(i, j) = m(i, j);
  for (int i = 0; i < n - k; ++i)
    for (int j = 0; j < n - k; ++j) cb(i, j) = m(k + i, k + j);
  for (int i = 0; i < n - k; ++i)
    for (int j = 0; j < k; ++j) bb(i, j) = m(k + i, j);
  return SemidirectBlocks{SkewElement(prefix, std::move(ab), unchecked), SkewElement(suffix, std::move(cb), unchecked),
                          std::move(bb)};
}

SkewElement semidirect_join(const ParamsPtr& params, int k, const SemidirectBlocks& blocks) {
  const int n = params->n();
  Matrix m(n, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = blocks.a_block.matrix()(i, j);
  for (int i = 0; i < n - k; ++i)
    for (int j = 0; j < n - k; ++j) m(k + i, k + j) = blocks.c_block.matrix()(i, j);
  for (int i = 0; i < n - k; ++i)
    for (int j = 0; j < k; ++j) m(k + i, j) = blocks.b_block(i, j);
  return SkewElement(params, std::move(m), unchecked);
}

SemidirectBlocks semidirect_triple_bracket(const SemidirectBlocks& l, const SemidirectBlocks& r) {
  require_same_params(l.a_block.params(), r.a_block.params());
  require_same_params(l.c_block.params(), r.c_block.params());
  const Matrix& la = l.a_block.matrix();
  const Matrix& lc = l.c_block.matrix();
  const Matrix& ra = r.a_block.matrix();
  const Matrix& rc = r.c_block.matrix();
  Matrix a = la * ra - ra * la;
  Matrix c = lc * rc - rc * lc;
  Matrix b = l.b_block * ra + lc * r.b_block - r.b_block * la - rc * l.b_block;
  return SemidirectBlocks{SkewElement(l.a_block.params(), std::move(a), unchecked),
                          SkewElement(l.c_block.params(), std::move(c), unchecked), std::move(b)};
}

}  // namespace liebundle
