#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "liebundle/algebra.hpp"
#include "liebundle/linalg.hpp"
#include "liebundle/rng.hpp"

using namespace liebundle;

TEST_CASE("skew_from_coords") {
  SUBCASE("zero coordinates give the zero matrix") {
    const ParamsPtr p = make_params({1.0, -2.0});
    const std::vector<double> c(3, 0.0);
    CHECK(skew_from_coords(p, c).matrix().max_abs() == 0.0);
  }
  SUBCASE("n=2 standard skew") {
    const ParamsPtr p = make_params({1.0});
    const std::vector<double> c{1.0};
    const Matrix m = skew_from_coords(p, c).matrix();
    CHECK(m(1, 0) == 1.0);
    CHECK(m(0, 1) == -1.0);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(1, 1) == 0.0);
  }
  SUBCASE("n=3 a=(0,2) forces the upper entries") {
    const ParamsPtr p = make_params({0.0, 2.0});
    const std::vector<double> c{1.0, 1.0, 1.0};  // x21, x31, x32
    const Matrix m = skew_from_coords(p, c).matrix();
    CHECK(m(0, 1) == 0.0);
    CHECK(m(0, 2) == 0.0);
    CHECK(m(1, 2) == -2.0);
  }
  SUBCASE("length mismatch") {
    const ParamsPtr p = make_params({1.0, 1.0});
    CHECK_THROWS_AS(skew_from_coords(p, std::vector<double>{1.0}), std::invalid_argument);
  }
}

TEST_CASE("sym_from_coords") {
  SUBCASE("identity coordinates give the identity") {
    const ParamsPtr p = make_params({0.0, -3.0});
    std::vector<double> c(6, 0.0);
    for (int r = 0; r < 3; ++r) c[static_cast<std::size_t>(lower_diag_coord_index(r, r))] = 1.0;
    CHECK(sym_from_coords(p, c).matrix() == Matrix::identity(3));
  }
  SUBCASE("n=3 a=(2,3), s21=1") {
    const ParamsPtr p = make_params({2.0, 3.0});
    std::vector<double> c(6, 0.0);
    c[static_cast<std::size_t>(lower_diag_coord_index(1, 0))] = 1.0;
    const Matrix m = sym_from_coords(p, c).matrix();
    CHECK(m(0, 1) == 2.0);
    CHECK(m(1, 0) == 1.0);
  }
  SUBCASE("n=3 a=(0,1), s31=7 kills the forced entry") {
    const ParamsPtr p = make_params({0.0, 1.0});
    std::vector<double> c(6, 0.0);
    c[static_cast<std::size_t>(lower_diag_coord_index(2, 0))] = 7.0;
    const Matrix m = sym_from_coords(p, c).matrix();
    CHECK(m(0, 2) == 0.0);
    CHECK(m(2, 0) == 7.0);
  }
}

TEST_CASE("membership") {
  SUBCASE("zero matrix is a member of both spaces") {
    const ParamsPtr p = make_params({0.0, 2.0, -1.0});
    CHECK(is_member_skew(*p, Matrix(4, 4)));
    CHECK(is_member_sym(*p, Matrix(4, 4)));
  }
  SUBCASE("symmetric is not skew") {
    const ParamsPtr p = make_params({1.0});
    Matrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    CHECK_FALSE(is_member_skew(*p, m));
    CHECK(is_member_sym(*p, m));
  }
  SUBCASE("construction guarantees membership") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const ParamsPtr p = make_params({rng.uniform(-2, 2), 0.0, rng.uniform(-2, 2), rng.uniform(-2, 2)});
      CHECK(is_member_skew(*p, random_skew(p, rng).matrix()));
      CHECK(is_member_sym(*p, random_sym(p, rng).matrix()));
    }
  }
  SUBCASE("entrywise and projector forms agree") {
    Rng rng(12);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const ParamsPtr p = make_params({rng.signed_magnitude(0.4, 1.6), trial % 3 ? 0.0 : rng.signed_magnitude(0.4, 1.6)});
      Matrix m(3, 3);
      if (trial % 2) {
        m = random_skew(p, rng).matrix();
      } else {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(-1, 1);
      }
      const MembershipReport rep = skew_membership(*p, m);
      CHECK((rep.entrywise_rel() <= kMembershipTol) == (rep.projector_rel() <= kMembershipTol));
      ++checked;
    }
    CHECK(checked == 1000);
  }
}

TEST_CASE("bracket") {
  Rng rng(13);
  SUBCASE("antisymmetry: [X,X]_S = 0") {
    const ParamsPtr p = make_params({1.0, 0.0, 2.0});
    const SkewElement x = random_skew(p, rng);
    const SymElement s = random_sym(p, rng);
    CHECK(bracket(x, x, s).matrix().max_abs() == 0.0);
  }
  SUBCASE("ones with identity reduces to the plain commutator") {
    const ParamsPtr p = make_params({1.0, 1.0, 1.0});
    const SkewElement x = random_skew(p, rng);
    const SkewElement y = random_skew(p, rng);
    const SymElement s(p, Matrix::identity(4), unchecked);
    const Matrix commutator = x.matrix() * y.matrix() - y.matrix() * x.matrix();
    CHECK(max_abs_diff(bracket(x, y, s).matrix(), commutator) == 0.0);
  }
  SUBCASE("closure at n=5 with zeros") {
    const ParamsPtr p = make_params({1.0, 0.0, -2.0, 0.0});
    for (int trial = 0; trial < 100; ++trial) {
      const SkewElement x = random_skew(p, rng);
      const SkewElement y = random_skew(p, rng);
      const SymElement s = random_sym(p, rng);
      CHECK(skew_membership(*p, bracket(x, y, s).matrix()).entrywise_rel() < 1e-12);
    }
  }
  SUBCASE("params mismatch") {
    const ParamsPtr p = make_params({1.0});
    const ParamsPtr q = make_params({2.0});
    const SkewElement x = random_skew(p, rng);
    const SkewElement y = random_skew(q, rng);
    const SymElement s = random_sym(p, rng);
    CHECK_THROWS_AS(bracket(x, y, s), std::invalid_argument);
  }
  SUBCASE("Jacobi identity across parameter regimes") {
    for (int trial = 0; trial < 200; ++trial) {
      const ParamsPtr p = make_params({rng.signed_magnitude(0.4, 1.6), trial % 2 ? 0.0 : rng.signed_magnitude(0.4, 1.6),
                                       rng.signed_magnitude(0.4, 1.6)});
      const SkewElement x = random_skew(p, rng);
      const SkewElement y = random_skew(p, rng);
      const SkewElement z = random_skew(p, rng);
      const SymElement s = random_sym(p, rng);
      const Matrix sum = bracket(bracket(x, y, s), z, s).matrix() + bracket(bracket(y, z, s), x, s).matrix() +
                         bracket(bracket(z, x, s), y, s).matrix();
      CHECK(sum.max_abs() < 1e-10);
    }
  }
  SUBCASE("linearity in S") {
    const ParamsPtr p = make_params({0.0, 1.5, -0.5});
    const SkewElement x = random_skew(p, rng);
    const SkewElement y = random_skew(p, rng);
    const SymElement s = random_sym(p, rng);
    const SymElement t = random_sym(p, rng);
    const SymElement combo(p, 2.5 * s.matrix() - 0.75 * t.matrix(), unchecked);
    const Matrix rhs = 2.5 * bracket(x, y, s).matrix() - 0.75 * bracket(x, y, t).matrix();
    CHECK(max_abs_diff(bracket(x, y, combo).matrix(), rhs) < 1e-13);
  }
}

TEST_CASE("skew_part") {
  Rng rng(14);
  SUBCASE("member maps to twice itself when no parameter vanishes") {
    const ParamsPtr p = make_params({1.3, -0.7});
    const SkewElement x = random_skew(p, rng);
    CHECK(max_abs_diff(skew_part(p, x.matrix()).matrix(), 2.0 * x.matrix()) < 1e-14);
  }
  SUBCASE("identity collapses to zero") {
    const ParamsPtr p = make_params({1.0, 1.0});
    CHECK(skew_part(p, Matrix::identity(3)).matrix().max_abs() == 0.0);
  }
  SUBCASE("projection lands in the space for degenerate parameters") {
    const ParamsPtr p = make_params({0.0, 3.0});
    for (int trial = 0; trial < 50; ++trial) {
      Matrix a(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = rng.uniform(-1, 1);
      CHECK(skew_membership(*p, skew_part(p, a).matrix()).entrywise_rel() < 1e-12);
    }
  }
}

TEST_CASE("pi_project") {
  Rng rng(15);
  SUBCASE("zero maps to zero") {
    const ParamsPtr p = make_params({1.0, 2.0});
    CHECK(pi_project(p, Matrix(3, 3)).matrix().max_abs() == 0.0);
  }
  SUBCASE("strictly upper input is unchanged when every parameter vanishes") {
    const ParamsPtr p = make_params({0.0, 0.0, 0.0});
    Matrix m(4, 4);
    m(0, 1) = 1.5;
    m(0, 3) = -2.0;
    m(2, 3) = 0.25;
    CHECK(max_abs_diff(pi_project(p, m).matrix(), m) == 0.0);
  }
  SUBCASE("duality against a full basis") {
    for (const auto& a : std::vector<std::vector<double>>{{1.0, 1.0, 1.0}, {0.0, 2.0, -1.0}, {0.5, 0.0, 0.0}}) {
      const ParamsPtr p = make_params(a);
      for (int trial = 0; trial < 20; ++trial) {
        Matrix m(4, 4);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) m(i, j) = rng.uniform(-1, 1);
        const DualPoint projected = pi_project(p, m);
        for (const SkewElement& y : skew_basis(p)) {
          CHECK(trace_pair(projected, y) == doctest::Approx((m * y.matrix()).trace()).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("symmetric input with trivial parameters still pairs correctly") {
    const ParamsPtr p = make_params({1.0, 1.0, 1.0});
    Matrix m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) m(i, j) = m(j, i) = rng.uniform(-1, 1);
    const DualPoint projected = pi_project(p, m);
    for (const SkewElement& y : skew_basis(p))
      CHECK(trace_pair(projected, y) == doctest::Approx((m * y.matrix()).trace()).epsilon(1e-12));
  }
}

TEST_CASE("trace_pair") {
  Rng rng(16);
  SUBCASE("zero point pairs to zero") {
    const ParamsPtr p = make_params({2.0});
    const DualPoint rho(p, Matrix(2, 2), unchecked);
    const SkewElement x = random_skew(p, rng);
    CHECK(trace_pair(rho, x) == 0.0);
  }
  SUBCASE("n=2 single-term sum") {
    const ParamsPtr p = make_params({-1.0});
    Matrix r(2, 2);
    r(0, 1) = 3.0;
    const DualPoint rho(p, std::move(r), unchecked);
    const std::vector<double> c{2.0};
    CHECK(trace_pair(rho, skew_from_coords(p, c)) == 6.0);
  }
  SUBCASE("Tr(SX) vanishes") {
    for (const auto& a : std::vector<std::vector<double>>{{1.0, 1.0}, {0.0, -2.0}, {1e-6, 3.0}}) {
      const ParamsPtr p = make_params(a);
      for (int trial = 0; trial < 50; ++trial) {
        const SymElement s = random_sym(p, rng);
        const SkewElement x = random_skew(p, rng);
        CHECK(std::abs((s.matrix() * x.matrix()).trace()) < 1e-13);
      }
    }
  }
  SUBCASE("pairing is nondegenerate") {
    const ParamsPtr p = make_params({0.0, 2.0, 0.0});
    const std::vector<DualPoint> duals = dual_basis(p);
    const std::vector<SkewElement> skews = skew_basis(p);
    Matrix gram(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) gram(i, j) = trace_pair(duals[static_cast<std::size_t>(i)], skews[static_cast<std::size_t>(j)]);
    const std::vector<double> sv = singular_values(gram);
    CHECK(sv.back() > 0.5);
  }
}

TEST_CASE("coordinate round-trips") {
  Rng rng(17);
  const ParamsPtr p = make_params({0.0, 1.7, -0.3, 0.0});
  const SkewElement x = random_skew(p, rng);
  CHECK(skew_from_coords(p, x.coords()).matrix() == x.matrix());
  const SymElement s = random_sym(p, rng);
  CHECK(sym_from_coords(p, s.coords()).matrix() == s.matrix());
  const DualPoint rho = random_dual(p, rng);
  CHECK(dual_from_coords(p, rho.coords()).matrix() == rho.matrix());
}

TEST_CASE("block structure at zero parameters") {
  Rng rng(18);
  const ParamsPtr p = make_params({1.0, 0.0, -2.0, 0.0, 0.5});
  const StructureMatrices sm = build_structure(*p);
  const Matrix one = Matrix::identity(6);
  for (int trial = 0; trial < 20; ++trial) {
    const SkewElement x = random_skew(p, rng);
    const SymElement s = random_sym(p, rng);
    for (std::size_t i = 1; i + 1 < sm.boundaries.size(); ++i) {
      CHECK(((one - sm.proj[i]) * x.matrix() * sm.proj[i]).max_abs() == 0.0);
      CHECK(((one - sm.proj[i]) * s.matrix() * sm.proj[i]).max_abs() == 0.0);
      CHECK(max_abs_diff(sm.proj[i] * x.matrix() * sm.proj[i], x.matrix() * sm.proj[i]) == 0.0);
    }
  }
}

TEST_CASE("product membership") {
  Rng rng(19);
  SUBCASE("k=1 with identity bracket matrix is X itself") {
    const ParamsPtr p = make_params({1.0, 1.0});
    const SkewElement x = random_skew(p, rng);
    const SymElement s(p, Matrix::identity(3), unchecked);
    const Matrix sxs = s.matrix() * x.matrix() * s.matrix();
    CHECK(max_abs_diff(sxs, x.matrix()) == 0.0);
    CHECK(product_membership_check(x, s, 1).max_residual() < 1e-14);
  }
  SUBCASE("random n=4 instance with a zero parameter") {
    const ParamsPtr p = make_params({1.2, 0.0, -0.8});
    for (int trial = 0; trial < 50; ++trial) {
      const SkewElement x = random_skew(p, rng);
      const SymElement s = random_sym(p, rng);
      CHECK(product_membership_check(x, s, 1).max_residual() < 1e-10);
      CHECK(product_membership_check(x, s, 2).max_residual() < 1e-10);
    }
  }
  SUBCASE("zero element is trivially closed") {
    const ParamsPtr p = make_params({2.0, 3.0});
    const SkewElement x(p, Matrix(3, 3), unchecked);
    const SymElement s = random_sym(p, rng);
    CHECK(product_membership_check(x, s, 1).max_residual() == 0.0);
  }
}

TEST_CASE("inverse membership") {
  Rng rng(20);
  SUBCASE("identity") {
    const ParamsPtr p = make_params({0.0, 1.0});
    const SymElement s(p, Matrix::identity(3), unchecked);
    const InverseMembershipReport rep = inverse_membership_check(s);
    CHECK(rep.residual_rel == 0.0);
    CHECK(rep.det == doctest::Approx(1.0));
  }
  SUBCASE("n=2 skew inverse") {
    const ParamsPtr p = make_params({1.0});
    const std::vector<double> c{2.0};
    const SkewElement x = skew_from_coords(p, c);
    const InverseMembershipReport rep = inverse_membership_check(x);
    CHECK(rep.residual_rel < 1e-14);
    const Matrix inv = invert(x.matrix()).inverse;
    CHECK(inv(1, 0) == doctest::Approx(-0.5));
  }
  SUBCASE("block-triangular inverse matches the block formula") {
    // n=3 with a_2 = 0: S = [[A~, 0], [B~, C~]] with 2x2 A~ and 1x1 C~
    const ParamsPtr p = make_params({1.5, 0.0});
    Rng local(21);
    SymElement s = random_sym(p, local);
    Matrix m = s.matrix() + 3.0 * Matrix::identity(3);
    s = SymElement(p, m, unchecked);
    REQUIRE(is_member_sym(*p, m));
    const Matrix inv = invert(m).inverse;

    Matrix a_block(2, 2), c_block(1, 1), b_block(1, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a_block(i, j) = m(i, j);
    c_block(0, 0) = m(2, 2);
    b_block(0, 0) = m(2, 0);
    b_block(0, 1) = m(2, 1);
    const Matrix a_inv = invert(a_block).inverse;
    const Matrix c_inv = invert(c_block).inverse;
    const Matrix b_inv = (-1.0) * (c_inv * b_block * a_inv);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(inv(i, j) == doctest::Approx(a_inv(i, j)).epsilon(1e-12));
    CHECK(inv(2, 2) == doctest::Approx(c_inv(0, 0)).epsilon(1e-12));
    CHECK(inv(0, 2) == doctest::Approx(0.0));
    CHECK(inv(1, 2) == doctest::Approx(0.0));
    CHECK(inv(2, 0) == doctest::Approx(b_inv(0, 0)).epsilon(1e-12));
    CHECK(inv(2, 1) == doctest::Approx(b_inv(0, 1)).epsilon(1e-12));
    CHECK(inverse_membership_check(s).residual_rel < 1e-12);
  }
  SUBCASE("near-singular input is refused") {
    const ParamsPtr p = make_params({1.0});
    Matrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 1.0 + 1e-14;
    const SymElement s(p, std::move(m), unchecked);
    CHECK_THROWS_AS(inverse_membership_check(s), SingularMatrixError);
  }
}
