#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "liebundle/isomorphisms.hpp"
#include "liebundle/linalg.hpp"

using namespace liebundle;

TEST_CASE("iso_delta") {
  Rng rng(1);
  SUBCASE("trivial parameters give the identity map") {
    const ParamsPtr p = make_params({1.0, 1.0, 1.0});
    const SymElement s = random_sym(p, rng);
    const IsoMap m = iso_delta(p, s);
    const SkewElement x = random_skew(p, rng);
    CHECK(max_abs_diff(m.forward(x.matrix()), x.matrix()) == 0.0);
    CHECK(max_abs_diff(m.target.bracket_matrix.matrix(), s.matrix()) == 0.0);
  }
  SUBCASE("n=2, a=(-1), S=I lands in diag(1,-1)") {
    const ParamsPtr p = make_params({-1.0});
    const SymElement s(p, Matrix::identity(2), unchecked);
    const IsoMap m = iso_delta(p, s);
    CHECK(m.target.bracket_matrix.matrix()(0, 0) == 1.0);
    CHECK(m.target.bracket_matrix.matrix()(1, 1) == -1.0);
  }
  SUBCASE("homomorphism and invertibility on random instances") {
    const ParamsPtr p = make_params({2.0, -1.0, 3.0});
    const SymElement s = random_sym(p, rng);
    const IsoMap m = iso_delta(p, s);
    CHECK(m.homomorphism_residual(rng, 100) < 1e-10);
    CHECK(m.image_membership_residual(rng, 50) < 1e-12);
    CHECK(m.invertibility_ratio() > 1e-10);
    // target bracket matrix is symmetric
    const Matrix& t = m.target.bracket_matrix.matrix();
    CHECK(max_abs_diff(t, t.transpose()) < 1e-14);
  }
  SUBCASE("zero parameter is rejected") {
    const ParamsPtr p = make_params({0.0, 1.0});
    const SymElement s = random_sym(p, rng);
    CHECK_THROWS_AS(iso_delta(p, s), std::invalid_argument);
  }
}

TEST_CASE("iso_conjugation") {
  Rng rng(2);
  const ParamsPtr p = make_params({2.0, -1.0, 3.0});
  const SymElement s = random_sym(p, rng);

  SUBCASE("identity C maps X to delta X delta") {
    const IsoMap m = iso_conjugation(p, s, Matrix::identity(4));
    const SkewElement x = random_skew(p, rng);
    Matrix d(4, 4);
    for (int r = 0; r < 4; ++r) d(r, r) = p->coeff(0, r);
    CHECK(max_abs_diff(m.forward(x.matrix()), d * x.matrix() * d) == 0.0);
    CHECK(max_abs_diff(m.source.bracket_matrix.matrix(), d * s.matrix() * d) < 1e-14);
  }
  SUBCASE("random C") {
    Matrix c(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) c(i, j) = rng.uniform(-1, 1);
      c(i, i) += 2.5;
    }
    const IsoMap m = iso_conjugation(p, s, c);
    CHECK(m.homomorphism_residual(rng, 100) < 1e-10);
    CHECK(m.image_membership_residual(rng, 50) < 1e-12);
    CHECK(m.invertibility_ratio() > 1e-10);
    CHECK(sym_membership(*p, m.source.bracket_matrix.matrix()).entrywise_rel() < 1e-13);
  }
  SUBCASE("eigenvector C diagonalizes the source bracket matrix") {
    Matrix d(4, 4);
    for (int r = 0; r < 4; ++r) d(r, r) = p->coeff(0, r);
    const SymmetricEigen eig = jacobi_eigensolve(d * s.matrix());
    const IsoMap m = iso_conjugation(p, s, eig.vectors);
    const Matrix& src = m.source.bracket_matrix.matrix();
    double offdiag = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) offdiag = std::max(offdiag, std::abs(src(i, j)));
    CHECK(offdiag < 1e-13 * src.max_abs());
    CHECK(m.homomorphism_residual(rng, 50) < 1e-10);
  }
  SUBCASE("singular C is rejected") {
    CHECK_THROWS_AS(iso_conjugation(p, s, Matrix(4, 4)), SingularMatrixError);
  }
  SUBCASE("block-diagonal C required at a contraction") {
    const ParamsPtr pz = make_params({1.0, 0.0, 2.0});
    const SymElement sz = random_sym(pz, rng);
    Matrix full(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) full(i, j) = rng.uniform(-1, 1);
      full(i, i) += 2.5;
    }
    CHECK_THROWS_AS(iso_conjugation(pz, sz, full), std::invalid_argument);

    Matrix blocked(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        blocked(i, j) = rng.uniform(-1, 1);
        blocked(2 + i, 2 + j) = rng.uniform(-1, 1);
      }
    blocked(0, 0) += 2.0;
    blocked(1, 1) += 2.0;
    blocked(2, 2) += 2.0;
    blocked(3, 3) += 2.0;
    const IsoMap m = iso_conjugation(pz, sz, blocked);
    CHECK(m.homomorphism_residual(rng, 100) < 1e-10);
    CHECK(m.image_membership_residual(rng, 50) < 1e-12);
  }
}

TEST_CASE("iso_a1_zero") {
  Rng rng(3);
  SUBCASE("n=2 hand example") {
    const ParamsPtr p = make_params({0.0});
    const SymElement s(p, Matrix::identity(2), unchecked);
    const IsoMap m = iso_a1_zero(p, s);
    const std::vector<double> c{3.0};
    const Matrix img = m.forward(skew_from_coords(p, c).matrix());
    CHECK(img(1, 0) == 1.5);
    CHECK(img(0, 1) == -1.5);
  }
  SUBCASE("zero maps to zero") {
    const ParamsPtr p = make_params({0.0, 2.0, -1.0});
    const SymElement s = random_sym(p, rng);
    const IsoMap m = iso_a1_zero(p, s);
    CHECK(m.forward(Matrix(4, 4)).max_abs() == 0.0);
  }
  SUBCASE("homomorphism and injectivity at n=4, a=(0,2,-1)") {
    const ParamsPtr p = make_params({0.0, 2.0, -1.0});
    const SymElement s = random_sym(p, rng);
    const IsoMap m = iso_a1_zero(p, s);
    CHECK(m.homomorphism_residual(rng, 100) < 1e-10);
    CHECK(m.image_membership_residual(rng, 50) < 1e-12);
    CHECK(m.invertibility_ratio() > 1e-10);
  }
  SUBCASE("precondition violations") {
    const SymElement s1 = random_sym(make_params({1.0, 2.0}), rng);
    CHECK_THROWS_AS(iso_a1_zero(s1.params(), s1), std::invalid_argument);
    const SymElement s2 = random_sym(make_params({0.0, 0.0}), rng);
    CHECK_THROWS_AS(iso_a1_zero(s2.params(), s2), std::invalid_argument);
  }
}

TEST_CASE("classify_signature reproduces the n=4 table") {
  const auto classify = [](std::vector<double> a) {
    const ParamsPtr p = make_params(std::move(a));
    const SymElement s(p, Matrix::identity(4), unchecked);
    return classify_signature(p, s);
  };
  const Signature so4 = classify({1.0, 1.0, 1.0});
  CHECK(so4.p == 4);
  CHECK(so4.q == 0);
  CHECK(so_name(so4) == "so(4)");

  const Signature so31 = classify({-1.0, 1.0, 1.0});
  CHECK(so31.p == 1);
  CHECK(so31.q == 3);
  CHECK(so_name(so31) == "so(3,1)");

  const Signature so22 = classify({-1.0, 1.0, -1.0});
  CHECK(so22.p == 2);
  CHECK(so22.q == 2);
  CHECK(so_name(so22) == "so(2,2)");
}

TEST_CASE("signature is a congruence invariant") {
  Rng rng(4);
  const ParamsPtr p = make_params({1.3, -0.6, 2.1});
  for (int trial = 0; trial < 20; ++trial) {
    SymElement s = random_sym(p, rng);
    s = SymElement(p, s.matrix() + 2.0 * Matrix::identity(4), unchecked);
    const Signature base = classify_signature(p, s);

    Matrix dinv(4, 4);
    for (int r = 0; r < 4; ++r) dinv(r, r) = 1.0 / p->coeff(0, r);
    const Matrix m = s.matrix() * dinv;
    Matrix c(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) c(i, j) = rng.uniform(-1, 1);
      c(i, i) += 2.0;
    }
    const SymmetricEigen eig = jacobi_eigensolve(c.transpose() * m * c);
    const Inertia in = inertia_of(eig.values, 1e-10);
    CHECK(in.positive == base.p);
    CHECK(in.negative == base.q);
  }
}

TEST_CASE("degenerate classification is refused") {
  const ParamsPtr p = make_params({1.0, 1.0, 1.0});
  std::vector<double> d{1.0, 1.0, 1.0, 0.0};
  const SymElement s(p, Matrix::diagonal(d), unchecked);
  CHECK_THROWS_AS(classify_signature(p, s), DegenerateClassificationError);
}

TEST_CASE("so(p,q) certificate verifies end to end") {
  Rng rng(5);
  const ParamsPtr p = make_params({0.7, -1.2, 1.9});
  SymElement s = random_sym(p, rng);
  s = SymElement(p, s.matrix() + 2.0 * Matrix::identity(4), unchecked);
  const IsoMap cert = so_pq_certificate(p, s);
  CHECK(cert.homomorphism_residual(rng, 100) < 1e-10);
  CHECK(cert.image_membership_residual(rng, 50) < 1e-10);
  CHECK(cert.invertibility_ratio() > 1e-10);
  const Signature sig = classify_signature(p, s);
  int plus = 0, minus = 0;
  for (int i = 0; i < 4; ++i) (cert.target.bracket_matrix.matrix()(i, i) > 0.0 ? plus : minus)++;
  CHECK(plus == sig.p);
  CHECK(minus == sig.q);
}

namespace {

// standard basis oracle: for A_pq = E_pq - E_qp,
// [A_pq, A_rs] = d_qr A_ps + d_ps A_qr - d_pr A_qs - d_qs A_pr
Matrix so_basis_element(int n, int r, int c) {
  Matrix m(n, n);
  m(r, c) = 1.0;
  m(c, r) = -1.0;
  return m;
}

Matrix so_commutator_oracle(int n, int p, int q, int r, int s) {
  Matrix out(n, n);
  const auto add = [&](double coeff, int i, int j) {
    if (coeff == 0.0 || i == j) return;
    out += coeff * so_basis_element(n, i, j);
  };
  add(q == r ? 1.0 : 0.0, p, s);
  add(p == s ? 1.0 : 0.0, q, r);
  add(p == r ? -1.0 : 0.0, q, s);
  add(q == s ? -1.0 : 0.0, p, r);
  return out;
}

}  // namespace

TEST_CASE("trivial deformation matches so(4) structure constants") {
  const ParamsPtr p = make_params({1.0, 1.0, 1.0});
  const SymElement s(p, Matrix::identity(4), unchecked);
  const std::vector<SkewElement> basis = skew_basis(p);
  // basis element k corresponds to the lower pair (r, c), i.e. A_rc
  std::vector<std::pair<int, int>> pairs;
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < r; ++c) pairs.emplace_back(r, c);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Matrix lhs = bracket(basis[i], basis[j], s).matrix();
      const Matrix rhs = so_commutator_oracle(4, pairs[i].first, pairs[i].second, pairs[j].first, pairs[j].second);
      CHECK(max_abs_diff(lhs, rhs) == 0.0);
    }
  }
}

TEST_CASE("semidirect split") {
  Rng rng(6);
  SUBCASE("euclidean shape at a=(0,1,1)") {
    const ParamsPtr p = make_params({0.0, 1.0, 1.0});
    const SkewElement x = random_skew(p, rng);
    const SemidirectBlocks blocks = semidirect_split(x, 1);
    CHECK(blocks.a_block.matrix().rows() == 1);
    CHECK(blocks.a_block.matrix().max_abs() == 0.0);
    CHECK(blocks.c_block.matrix().rows() == 3);
    CHECK(blocks.c_block.params()->a() == std::vector<double>{1.0, 1.0});
    CHECK(is_member_skew(*blocks.c_block.params(), blocks.c_block.matrix()));
    CHECK(blocks.b_block.rows() == 3);
    CHECK(blocks.b_block.cols() == 1);
    CHECK(semidirect_join(p, 1, blocks).matrix() == x.matrix());
  }
  SUBCASE("zero element splits to zero blocks") {
    const ParamsPtr p = make_params({1.0, 0.0, 1.0});
    const SkewElement x(p, Matrix(4, 4), unchecked);
    const SemidirectBlocks blocks = semidirect_split(x, 2);
    CHECK(blocks.a_block.matrix().max_abs() == 0.0);
    CHECK(blocks.c_block.matrix().max_abs() == 0.0);
    CHECK(blocks.b_block.max_abs() == 0.0);
  }
  SUBCASE("nonzero split position is rejected") {
    const ParamsPtr p = make_params({1.0, 0.0, 1.0});
    const SkewElement x = random_skew(p, rng);
    CHECK_THROWS_AS(semidirect_split(x, 1), std::invalid_argument);
  }
  SUBCASE("triple bracket matches the matrix bracket at n=5, k=2") {
    const ParamsPtr p = make_params({1.4, 0.0, -0.9, 2.2});
    const SymElement identity(p, Matrix::identity(5), unchecked);
    for (int trial = 0; trial < 50; ++trial) {
      const SkewElement x = random_skew(p, rng);
      const SkewElement y = random_skew(p, rng);
      const SemidirectBlocks direct = semidirect_split(bracket(x, y, identity), 2);
      const SemidirectBlocks triple = semidirect_triple_bracket(semidirect_split(x, 2), semidirect_split(y, 2));
      CHECK(max_abs_diff(direct.a_block.matrix(), triple.a_block.matrix()) < 1e-12);
      CHECK(max_abs_diff(direct.c_block.matrix(), triple.c_block.matrix()) < 1e-12);
      CHECK(max_abs_diff(direct.b_block, triple.b_block) < 1e-12);
    }
  }
}
