#include "liebundle/verify.hpp"

#include <cmath>
#include <functional>

#include "liebundle/linalg.hpp"
#include "liebundle/poisson.hpp"

namespace liebundle {

namespace {

double nonzero_draw(Rng& rng) { return rng.signed_magnitude(0.4, 1.6); }

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace

std::vector<double> Regime::draw_a(int n, Rng& rng) const {
  std::vector<double> a(static_cast<std::size_t>(n) - 1);
  for (double& v : a) v = nonzero_draw(rng);
  if (name == "one_zero") {
    a[a.size() / 2] = 0.0;
  } else if (name == "two_adjacent_zeros") {
    const std::size_t m = a.size() >= 2 ? (a.size() - 2) / 2 : 0;
    a[m] = 0.0;
    if (m + 1 < a.size()) a[m + 1] = 0.0;
  } else if (name == "two_separated_zeros") {
    a.front() = 0.0;
    a.back() = 0.0;
  } else if (name == "mixed_signs") {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(a[i]) * (i % 2 ? -1.0 : 1.0);
  } else if (name == "tiny_magnitude") {
    for (double& v : a) v = v < 0.0 ? -1e-6 : 1e-6;
  }
  return a;
}

const std::vector<Regime>& standard_regimes() {
  static const std::vector<Regime> regimes = {
      {"all_nonzero", false, false},      {"one_zero", true, false},
      {"two_adjacent_zeros", true, false}, {"two_separated_zeros", true, false},
      {"mixed_signs", false, false},      {"tiny_magnitude", false, false},
      {"diagonal_s", false, true},        {"dense_s", false, false},
  };
  return regimes;
}

SymElement draw_regime_sym(const Regime& regime, const ParamsPtr& params, Rng& rng) {
  if (regime.diagonal_s) {
    std::vector<double> coords(static_cast<std::size_t>(sym_dim(params->n())), 0.0);
    for (int r = 0; r < params->n(); ++r) coords[static_cast<std::size_t>(lower_diag_coord_index(r, r))] = nonzero_draw(rng);
    return sym_from_coords(params, coords);
  }
  return random_sym(params, rng);
}

namespace {

SymElement draw_invertible_sym(const Regime& regime, const ParamsPtr& params, Rng& rng) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    SymElement s = draw_regime_sym(regime, params, rng);
    try {
      if (invert(s.matrix()).rcond >= 1e-2) return s;
    } catch (const SingularMatrixError&) {
    }
  }
  // diagonally load as a last resort; identity is always a member
  SymElement s = draw_regime_sym(regime, params, rng);
  return SymElement(params, s.matrix() + 3.0 * Matrix::identity(params->n()), unchecked);
}

using ItemFn = std::function<double(const ParamsPtr&, const SymElement&, Rng&)>;
using RegimeFilter = std::function<bool(const Regime&)>;

struct SweepSpec {
  std::uint64_t salt = 0;
  bool include_configured = true;
  RegimeFilter filter;           // null accepts every regime
  std::vector<int> sizes;        // empty -> options sizes
};

SuiteResult run_sweep(const std::string& name, double tolerance, const VerifyOptions& opt,
                      const std::optional<std::pair<ParamsPtr, SymElement>>& configured, const SweepSpec& spec,
                      const ItemFn& item) {
  SuiteResult result{name, 0, 0.0, tolerance, false};
  const std::vector<int>& sizes = spec.sizes.empty() ? opt.sizes : spec.sizes;
  const std::size_t draws = static_cast<std::size_t>(opt.draws);

  const std::vector<Regime>& regimes = standard_regimes();
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const int n = sizes[si];
    for (std::size_t ri = 0; ri < regimes.size(); ++ri) {
      const Regime& regime = regimes[ri];
      if (spec.filter && !spec.filter(regime)) continue;
      if (regime.has_zeros && n < 3) continue;
      const std::uint64_t seed = mix(mix(mix(opt.seed, spec.salt), static_cast<std::uint64_t>(n)), ri);
      const double worst = batch_max(draws, seed, opt.policy, [&](std::size_t, Rng& rng) {
        const ParamsPtr params = make_params(regime.draw_a(n, rng));
        const SymElement s = draw_regime_sym(regime, params, rng);
        return item(params, s, rng);
      });
      result.max_residual = std::max(result.max_residual, worst);
      result.cases += draws;
    }
  }

  if (spec.include_configured && configured) {
    const std::uint64_t seed = mix(mix(opt.seed, spec.salt), 0xC0FFEEULL);
    const double worst = batch_max(draws, seed, opt.policy,
                                   [&](std::size_t, Rng& rng) { return item(configured->first, configured->second, rng); });
    result.max_residual = std::max(result.max_residual, worst);
    result.cases += draws;
  }

  result.pass = result.max_residual <= tolerance;
  return result;
}

RegimeFilter zeros_only() {
  return [](const Regime& r) { return r.has_zeros; };
}
RegimeFilter nonzeros_only() {
  return [](const Regime& r) { return !r.has_zeros; };
}
RegimeFilter nonzeros_no_tiny() {
  return [](const Regime& r) { return !r.has_zeros && r.name != "tiny_magnitude"; };
}

double closure_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const SkewElement x = random_skew(params, rng);
  const SkewElement y = random_skew(params, rng);
  const Matrix xsy = x.matrix() * s.matrix() * y.matrix();
  const Matrix ysx = y.matrix() * s.matrix() * x.matrix();
  const double scale = std::max({1.0, xsy.max_abs(), ysx.max_abs()});
  return skew_membership(*params, xsy - ysx).entrywise / scale;
}

double jacobi_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const SkewElement x = random_skew(params, rng);
  const SkewElement y = random_skew(params, rng);
  const SkewElement z = random_skew(params, rng);
  const Matrix sum = bracket(bracket(x, y, s), z, s).matrix() + bracket(bracket(y, z, s), x, s).matrix() +
                     bracket(bracket(z, x, s), y, s).matrix();
  const double scale =
      std::max({1.0, x.matrix().max_abs(), y.matrix().max_abs(), z.matrix().max_abs(), s.matrix().max_abs()});
  return sum.max_abs() / (scale * scale * scale);
}

double linearity_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const SkewElement x = random_skew(params, rng);
  const SkewElement y = random_skew(params, rng);
  const SymElement t = random_sym(params, rng);
  const double alpha = rng.uniform(-2.0, 2.0);
  const double beta = rng.uniform(-2.0, 2.0);
  const SymElement combo(params, alpha * s.matrix() + beta * t.matrix(), unchecked);
  const Matrix lhs = bracket(x, y, combo).matrix();
  const Matrix rhs = alpha * bracket(x, y, s).matrix() + beta * bracket(x, y, t).matrix();
  return max_abs_diff(lhs, rhs) / std::max({1.0, lhs.max_abs(), rhs.max_abs()});
}

double agreement_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  (void)s;
  const int n = params->n();
  double disagreements = 0.0;

  const SkewElement member = random_skew(params, rng);
  if (is_member_skew(*params, member.matrix()) != (skew_membership(*params, member.matrix()).projector_rel() <= kMembershipTol))
    disagreements += 1.0;
  const SymElement smember = random_sym(params, rng);
  if (is_member_sym(*params, smember.matrix()) != (sym_membership(*params, smember.matrix()).projector_rel() <= kMembershipTol))
    disagreements += 1.0;

  Matrix noise(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) noise(i, j) = rng.uniform(-1.0, 1.0);
  const MembershipReport skew_rep = skew_membership(*params, noise);
  if ((skew_rep.entrywise_rel() <= kMembershipTol) != (skew_rep.projector_rel() <= kMembershipTol)) disagreements += 1.0;
  const MembershipReport sym_rep = sym_membership(*params, noise);
  if ((sym_rep.entrywise_rel() <= kMembershipTol) != (sym_rep.projector_rel() <= kMembershipTol)) disagreements += 1.0;
  return disagreements;
}

double block_structure_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const SkewElement x = random_skew(params, rng);
  const StructureMatrices sm = build_structure(*params);
  const Matrix one = Matrix::identity(params->n());
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < sm.boundaries.size(); ++i) {
    worst = std::max(worst, ((one - sm.proj[i]) * x.matrix() * sm.proj[i]).max_abs());
    worst = std::max(worst, ((one - sm.proj[i]) * s.matrix() * sm.proj[i]).max_abs());
  }
  const double scale = std::max({1.0, x.matrix().max_abs(), s.matrix().max_abs()});
  return worst / scale;
}

double skew_part_item(const ParamsPtr& params, const SymElement&, Rng& rng) {
  const int n = params->n();
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  const SkewElement projected = skew_part(params, a);
  double residual = skew_membership(*params, projected.matrix()).entrywise_rel();
  if (params->all_nonzero()) {
    const SkewElement x = random_skew(params, rng);
    const Matrix twice = skew_part(params, x.matrix()).matrix();
    residual = std::max(residual, max_abs_diff(twice, 2.0 * x.matrix()) / std::max(1.0, x.matrix().max_abs()));
  }
  return residual;
}

double pi_duality_item(const ParamsPtr& params, const SymElement&, Rng& rng) {
  const int n = params->n();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  const DualPoint projected = pi_project(params, m);
  double worst = 0.0;
  for (const SkewElement& y : skew_basis(params)) {
    const double lhs = trace_pair(projected, y);
    const double rhs = (m * y.matrix()).trace();
    const double scale = std::max(1.0, m.max_abs() * y.matrix().max_abs() * n);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double coadjoint_duality_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const SkewElement x = random_skew(params, rng);
  const DualPoint rho = random_dual(params, rng);
  const DualPoint ad = coadjoint(x, rho, s);
  double worst = 0.0;
  for (const SkewElement& y : skew_basis(params)) {
    const double lhs = trace_pair(ad, y);
    const double rhs = trace_pair(rho, bracket(x, y, s));
    const double scale = std::max(
        1.0, rho.matrix().max_abs() * x.matrix().max_abs() * s.matrix().max_abs() * y.matrix().max_abs() * params->n());
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double trace_sx_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const SkewElement x = random_skew(params, rng);
  const double scale = std::max(1.0, s.matrix().max_abs() * x.matrix().max_abs() * params->n());
  return std::abs((s.matrix() * x.matrix()).trace()) / scale;
}

double roundtrip_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const SkewElement x = random_skew(params, rng);
  double residual = max_abs_diff(skew_from_coords(params, x.coords()).matrix(), x.matrix());
  const SkewElement y = random_skew(params, rng);
  const SkewElement b = bracket(x, y, s);
  const double scale = std::max(1.0, b.matrix().max_abs());
  residual = std::max(residual, max_abs_diff(skew_from_coords(params, b.coords()).matrix(), b.matrix()) / scale);
  const DualPoint rho = random_dual(params, rng);
  residual = std::max(residual, max_abs_diff(dual_from_coords(params, rho.coords()).matrix(), rho.matrix()));
  return residual;
}

double product_membership_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const SkewElement x = random_skew(params, rng);
  double worst = 0.0;
  for (int k = 1; k <= 2; ++k) worst = std::max(worst, product_membership_check(x, s, k).max_residual());
  return worst;
}

double inverse_membership_item(const ParamsPtr& params, const SymElement&, Rng& rng) {
  double worst = 0.0;
  for (int attempt = 0; attempt < 16; ++attempt) {
    SymElement s = random_sym(params, rng);
    try {
      worst = std::max(worst, inverse_membership_check(s).residual_rel);
      break;
    } catch (const SingularMatrixError&) {
    }
  }
  if (params->n() % 2 == 0) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      SkewElement x = random_skew(params, rng);
      try {
        worst = std::max(worst, inverse_membership_check(x).residual_rel);
        break;
      } catch (const SingularMatrixError&) {
      }
    }
  }
  return worst;
}

double pencil_item(const ParamsPtr& params, const SymElement& s1, Rng& rng) {
  const SymElement s2 = random_sym(params, rng);
  const int dim = skew_dim(params->n());
  const ScalarField f = coordinate_field(params, rng.uniform_int(0, dim - 1));
  const ScalarField g = coordinate_field(params, rng.uniform_int(0, dim - 1));
  const DualPoint rho = random_dual(params, rng);
  double worst = 0.0;
  for (double lambda : {-1.0, 0.5, 3.0}) {
    const SymElement combo(params, s1.matrix() + lambda * s2.matrix(), unchecked);
    const double split = lie_poisson_bracket(f, g, rho, s1) + lambda * lie_poisson_bracket(f, g, rho, s2);
    const double joint = lie_poisson_bracket(f, g, rho, combo);
    worst = std::max(worst, std::abs(joint - split) / std::max(1.0, std::abs(joint) + std::abs(split)));
  }
  return worst;
}

ScalarField derived_bracket_field(const ScalarField& f, const ScalarField& g,
                                  const SymElement& s, const DualPoint& probe) {
  // {f, g}_S for fields with constant gradients is linear; its gradient is
  // the constant bracket of the two gradients
  const SkewElement k = bracket(gradient(f, probe), gradient(g, probe), s);
  ScalarField out;
  out.name = "{" + f.name + "," + g.name + "}";
  out.eval = [k](const DualPoint& rho) { return trace_pair(rho, k); };
  out.grad = [k](const DualPoint&) { return k; };
  return out;
}

double poisson_axioms_item(const ParamsPtr& params, const SymElement& s, Rng& rng) {
  const int dim = skew_dim(params->n());
  const DualPoint rho = random_dual(params, rng);
  const int ia = rng.uniform_int(0, dim - 1);
  const int ib = rng.uniform_int(0, dim - 1);
  const int ic = rng.uniform_int(0, dim - 1);
  const ScalarField fa = coordinate_field(params, ia);
  const ScalarField fb = coordinate_field(params, ib);
  const ScalarField fc = coordinate_field(params, ic);

  double worst = std::abs(lie_poisson_bracket(fa, fb, rho, s) + lie_poisson_bracket(fb, fa, rho, s));

  // Leibniz with the product field xi_a * xi_b
  const ScalarField prod = quadratic_field(params, "prod", {{ia, ib, 1.0}});
  const std::vector<double> xi = rho.coords();
  const double leibniz = lie_poisson_bracket(prod, fc, rho, s) -
                         xi[static_cast<std::size_t>(ia)] * lie_poisson_bracket(fb, fc, rho, s) -
                         xi[static_cast<std::size_t>(ib)] * lie_poisson_bracket(fa, fc, rho, s);
  worst = std::max(worst, std::abs(leibniz));

  // Jacobi through exact derived-bracket fields
  const ScalarField bc = derived_bracket_field(fb, fc, s, rho);
  const ScalarField ca = derived_bracket_field(fc, fa, s, rho);
  const ScalarField ab = derived_bracket_field(fa, fb, s, rho);
  const double jac = lie_poisson_bracket(fa, bc, rho, s) + lie_poisson_bracket(fb, ca, rho, s) +
                     lie_poisson_bracket(fc, ab, rho, s);
  worst = std::max(worst, std::abs(jac));

  const double m = std::max(1.0, s.matrix().max_abs());
  const double r = std::max(1.0, rho.matrix().max_abs());
  return worst / (m * m * r * r);
}

double casimir_property_item(const ParamsPtr& params, const SymElement& regime_s, Rng& rng, bool degenerate) {
  const Regime dense{"dense_s", false, false};
  const SymElement s = params->all_nonzero() && !degenerate
                           ? [&] {
                               try {
                                 invert(regime_s.matrix());
                                 return regime_s;
                               } catch (const SingularMatrixError&) {
                                 return draw_invertible_sym(dense, params, rng);
                               }
                             }()
                           : draw_invertible_sym(dense, params, rng);
  const DualPoint rho = random_dual(params, rng);
  double worst = 0.0;
  for (int l = 1; l <= 2; ++l) {
    const SkewElement grad = degenerate ? casimir_degenerate_gradient(l, rho, s) : casimir_gradient(l, rho, s);
    const double scale =
        std::max(1.0, grad.matrix().max_abs() * rho.matrix().max_abs() * s.matrix().max_abs() * params->n());
    const DualPoint flow = coadjoint(grad, rho, s);
    worst = std::max(worst, flow.matrix().max_abs() / scale);
    // coordinatewise form of the same statement
    for (const SkewElement& y : skew_basis(params)) {
      const double v = trace_pair(rho, bracket(grad, y, s));
      worst = std::max(worst, std::abs(v) / scale);
    }
  }
  return worst;
}

double gradient_fd_item(const ParamsPtr& params, const SymElement&, Rng& rng, bool generic_family) {
  const Regime dense{"dense_s", false, false};
  const SymElement s = draw_invertible_sym(dense, params, rng);
  const DualPoint rho = random_dual(params, rng);
  double worst = 0.0;
  if (generic_family) {
    for (int l = 1; l <= 2; ++l) {
      const ScalarField f = casimir_field(l, s);
      const double diff = max_abs_diff(f.grad(rho).matrix(), fd_gradient(f.eval, rho).matrix());
      worst = std::max(worst, diff / std::max(1.0, f.grad(rho).matrix().max_abs()));
    }
  } else {
    const ScalarField ft = casimir_degenerate_field(1, s);
    const double diff = max_abs_diff(ft.grad(rho).matrix(), fd_gradient(ft.eval, rho).matrix());
    worst = std::max(worst, diff / std::max(1.0, ft.grad(rho).matrix().max_abs()));
  }
  return worst;
}

double poisson_rank_item(const ParamsPtr& params, const SymElement&, Rng& rng) {
  const Regime dense{"dense_s", false, false};
  const SymElement s = draw_invertible_sym(dense, params, rng);
  const DualPoint rho = random_dual(params, rng);
  const std::vector<double> sv = singular_values(poisson_tensor(rho, s));
  if (sv[3] <= 1e-10 * sv[0]) return 1.0;  // rank below 4
  return sv[4] / sv[3];
}

double closed_forms_item(const ParamsPtr& params, const SymElement&, Rng& rng) {
  // n = 4, diagonal S with reciprocal entries s_i
  std::array<double, 4> s{};
  for (double& v : s) v = nonzero_draw(rng);
  Matrix smat(4, 4);
  for (int i = 0; i < 4; ++i) smat(i, i) = 1.0 / s[static_cast<std::size_t>(i)];
  const SymElement sym(params, std::move(smat), unchecked);
  const DualPoint rho = random_dual(params, rng);
  const std::vector<double> c = rho.coords();
  const double x1 = c[0], x2 = c[1], x3 = c[2], y3 = c[3], y2 = -c[4], y1 = c[5];
  const std::vector<double>& a = params->a();
  const double a1 = a[0], a2 = a[1], a3 = a[2];

  const double c1_closed = -(1.0 / (a1 * a2 * a3)) *
                           (s[0] * s[1] * a2 * a3 * x1 * x1 + s[0] * s[2] * a3 * x2 * x2 + s[0] * s[3] * x3 * x3 +
                            s[2] * s[3] * a1 * a2 * y1 * y1 + s[1] * s[3] * a1 * y2 * y2 + s[1] * s[2] * a1 * a3 * y3 * y3);
  const double cross = x2 * y2 + x3 * y3 + a2 * x1 * y1;
  // the quartic closed form, in the 1/(2l) trace normalization
  const double c2_closed = 0.5 * c1_closed * c1_closed -
                           (s[0] * s[1] * s[2] * s[3] / (a1 * a2 * a2 * a3)) * cross * cross;

  const double c1 = casimir_value(1, rho, sym);
  const double c2 = casimir_value(2, rho, sym);
  double worst = std::abs(c1 - c1_closed) / std::max(1.0, std::abs(c1_closed));
  worst = std::max(worst, std::abs(c2 - c2_closed) / std::max(1.0, std::abs(c2_closed)));
  return worst;
}

double degenerate_consistency_item(const ParamsPtr& params, const SymElement&, Rng& rng) {
  const Regime dense{"dense_s", false, false};
  const SymElement s = draw_invertible_sym(dense, params, rng);
  const DualPoint rho = random_dual(params, rng);
  const double full = params->full_product();
  double worst = 0.0;
  for (int l = 1; l <= 2; ++l) {
    const double lhs = casimir_degenerate_value(l, rho, s);
    const double rhs = std::pow(full, static_cast<double>(l)) * casimir_value(l, rho, s);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
  }
  return worst;
}

}  // namespace

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const SuiteResult& r : results)
    if (!r.pass) return false;
  return true;
}

std::vector<SuiteResult> run_verify_suites(const VerifyOptions& options,
                                           const std::optional<std::pair<ParamsPtr, SymElement>>& configured) {
  std::vector<SuiteResult> out;

  if (configured) {
    SuiteResult member{"s_membership", 1, sym_membership(*configured->first, configured->second.matrix()).entrywise_rel(),
                       kMembershipTol, false};
    member.pass = member.max_residual <= member.tolerance;
    out.push_back(member);
  }

  std::uint64_t salt = 1;
  const auto add = [&](const std::string& name, double tol, SweepSpec spec, const ItemFn& item) {
    spec.salt = salt++;
    out.push_back(run_sweep(name, tol, options, configured, spec, item));
  };

  add("closure", 1e-12, {}, closure_item);
  add("jacobi", 1e-10, {}, jacobi_item);
  add("bracket_linearity", 1e-12, {}, linearity_item);
  add("membership_agreement", 0.5, {}, agreement_item);
  add("block_structure", 1e-14, {0, false, zeros_only(), {}}, block_structure_item);
  add("skew_part", 1e-12, {}, skew_part_item);
  add("pi_duality", 1e-12, {}, pi_duality_item);
  add("coadjoint_duality", 1e-12, {}, coadjoint_duality_item);
  add("trace_sx", 1e-12, {}, trace_sx_item);
  add("coords_roundtrip", 1e-12, {}, roundtrip_item);
  add("product_membership", 1e-9, {}, product_membership_item);
  add("inverse_membership", 1e-9, {0, false, nonzeros_no_tiny(), {}}, inverse_membership_item);
  add("pencil_compatibility", 1e-11, {}, pencil_item);
  add("poisson_axioms", 1e-9, {}, poisson_axioms_item);
  add("casimir_property", 1e-9, {0, false, nonzeros_no_tiny(), {}},
      [](const ParamsPtr& p, const SymElement& s, Rng& rng) { return casimir_property_item(p, s, rng, false); });
  add("casimir_degenerate_property", 1e-9, {0, false, zeros_only(), {}},
      [](const ParamsPtr& p, const SymElement& s, Rng& rng) { return casimir_property_item(p, s, rng, true); });
  add("gradient_fd", 1e-6, {0, false, nonzeros_no_tiny(), {}},
      [](const ParamsPtr& p, const SymElement& s, Rng& rng) { return gradient_fd_item(p, s, rng, true); });
  add("gradient_fd_degenerate", 1e-6, {0, false, nullptr, {}},
      [](const ParamsPtr& p, const SymElement& s, Rng& rng) { return gradient_fd_item(p, s, rng, false); });
  add("poisson_tensor_rank", 1e-6, {0, false, nonzeros_no_tiny(), {4}}, poisson_rank_item);
  add("casimir_closed_forms", 1e-10, {0, false, nonzeros_only(), {4}}, closed_forms_item);
  add("degenerate_consistency", 1e-10, {0, false, nonzeros_no_tiny(), {}}, degenerate_consistency_item);
  return out;
}

}  // namespace liebundle
