#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "liebundle/algebra.hpp"

namespace liebundle {

/// Smooth function on the phase space L_+. `grad`, when present, returns the
/// derivative as a member of the skew space (lower entries are the partials
/// with respect to the upper coordinates); otherwise central finite
/// differences are used.
struct ScalarField {
  std::string name;
  std::function<double(const DualPoint&)> eval;
  std::function<SkewElement(const DualPoint&)> grad;
};

/// Builds the skew element whose lower entry at (j, i) is the partial with
/// respect to rho_ij; partials are given in upper-coordinate order.
SkewElement gradient_from_partials(const ParamsPtr& params, std::span<const double> upper_partials);

/// Central differences with step (machine epsilon)^(1/3) * (1 + |coordinate|).
SkewElement fd_gradient(const std::function<double(const DualPoint&)>& eval, const DualPoint& rho);

SkewElement gradient(const ScalarField& f, const DualPoint& rho);

/// {f, g}_S(rho) = Tr(rho [Df, Dg]_S).
double lie_poisson_bracket(const ScalarField& f, const ScalarField& g, const DualPoint& rho, const SymElement& s);

/// ad*_X rho = pi(rho X S - S X rho).
DualPoint coadjoint(const SkewElement& x, const DualPoint& rho, const SymElement& s);

/// C_l(rho) = Tr(((rho - delta^-1 rho^T delta) S^-1)^(2l)) / (2l).
/// Requires every deformation parameter nonzero and S invertible.
double casimir_value(int l, const DualPoint& rho, const SymElement& s);
SkewElement casimir_gradient(int l, const DualPoint& rho, const SymElement& s);
ScalarField casimir_field(int l, const SymElement& s);

/// Degenerate-safe Casimir family. Evaluates the division-free expansion of
/// (a_1...a_{n-1})^l C_l, every term of which stays finite when parameters
/// vanish; for nonzero parameters the value equals (a_1...a_{n-1})^l C_l
/// exactly. Requires S invertible only.
double casimir_degenerate_value(int l, const DualPoint& rho, const SymElement& s);
SkewElement casimir_degenerate_gradient(int l, const DualPoint& rho, const SymElement& s);
ScalarField casimir_degenerate_field(int l, const SymElement& s);

struct PencilSpec {
  SymElement s1;
  SymElement s2;
};

/// Coefficients of the lambda-expansion of C_l for the pencil S1 + lambda S2,
/// computed through the truncated Neumann series of (S1 + lambda S2)^-1.
/// Entry 0 is C_l for S1; entry m is the m-th expansion coefficient. All
/// returned fields carry exact gradients.
std::vector<ScalarField> pencil_integrals(const PencilSpec& pencil, int l, int order);

ScalarField coordinate_field(const ParamsPtr& params, int upper_index);

/// Quadratic form sum c * xi_i * xi_j over upper coordinates, with exact
/// gradient. Terms with i == j contribute c * xi_i^2.
ScalarField quadratic_field(const ParamsPtr& params, std::string name,
                            std::vector<std::tuple<int, int, double>> terms);

ScalarField scaled_field(std::string name, double factor, ScalarField f);

/// Matrix of coordinate brackets {rho_a, rho_b}_S, dimension n(n-1)/2.
Matrix poisson_tensor(const DualPoint& rho, const SymElement& s);

}  // namespace liebundle
