#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "liebundle/poisson.hpp"

namespace liebundle {

/// Hamiltonian flow d(rho)/dt = ad*_{DH} rho in the bracket given by S.
/// Monitors are evaluated at every accepted step; they always include H.
struct HamiltonianSystem {
  ParamsPtr params;
  SymElement s;
  ScalarField hamiltonian;
  std::vector<ScalarField> monitors;
};

struct StepControl {
  enum class Kind { FixedRk4, AdaptiveRk45 };
  Kind kind = Kind::FixedRk4;
  double h = 1e-3;
  double rtol = 1e-10;
  double atol = 1e-12;

  static StepControl rk4(double h) { return {Kind::FixedRk4, h, 0.0, 0.0}; }
  static StepControl rk45(double rtol, double atol) { return {Kind::AdaptiveRk45, 0.0, rtol, atol}; }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DualPoint> states;
  std::vector<std::string> monitor_names;
  std::vector<std::vector<double>> monitor_log;  // [monitor][step]
  bool blew_up = false;
  double last_valid_time = 0.0;

  /// max |m(t) - m(0)| / max(|m(0)|, floor) over the run.
  double max_relative_drift(std::size_t monitor, double floor = 1e-12) const;
};

DualPoint vector_field(const HamiltonianSystem& sys, const DualPoint& rho);

Trajectory integrate(const HamiltonianSystem& sys, const DualPoint& rho0, double t_end, const StepControl& ctl);

struct CommutativityReport {
  double involution_residual = 0.0;  // |{H1, H2}_S| at rho0
  bool involution_ok = false;
  double discrepancy = 0.0;  // max-abs coordinate gap between the two compositions
};

/// Runs flow1 then flow2 for time t against the opposite order and measures
/// the gap. Both systems must share params and S; the involution precheck is
/// reported, not fatal.
CommutativityReport flow_commutativity(const HamiltonianSystem& sys1, const HamiltonianSystem& sys2,
                                       const DualPoint& rho0, double t, const StepControl& ctl,
                                       double involution_tol = 1e-8);

/// n = 4 phase-space point in vector form:
/// x = (rho_12, rho_13, rho_14), y = (rho_34, -rho_24, rho_23).
struct N4State {
  std::array<double, 3> x{};
  std::array<double, 3> y{};
};

N4State n4_from_dual(const DualPoint& rho);
DualPoint n4_to_dual(const ParamsPtr& params, const N4State& state);

/// Right side of the deformed rigid-body equations in vector form. s and w
/// are the reciprocals of the diagonal entries of S and W, as in the closed
/// formulas. Requires s1 != 0 and every w nonzero.
N4State rigid_body_rhs(const N4State& state, const std::array<double, 3>& a,
                       const std::array<double, 4>& s, const std::array<double, 4>& w);

/// Clebsch-type contraction: a1 = 0 and the first W slot removed
/// (W = diag(0, 1/w2, 1/w3, 1/w4)). s1 must be nonzero.
N4State clebsch_rhs(const N4State& state, const std::array<double, 3>& a,
                    const std::array<double, 4>& s, const std::array<double, 3>& w_tail);

/// Built-in systems. Brackets use S = diag(1/s_i); the rigid-body Hamiltonian
/// is the first Casimir of W = diag(1/w_i) rescaled by -a1 a2 a3 / 2, with
/// monitors {H, C1, C2, I}. The Clebsch variant requires a1 = 0, uses
/// H = (w2 a2 a3 x1^2 + w3 a3 x2^2 + w4 x3^2) / 2 and monitors {H, Ctilde1}.
HamiltonianSystem rigid_body_system(const ParamsPtr& params, const std::array<double, 4>& s,
                                    const std::array<double, 4>& w);
HamiltonianSystem clebsch_system(const ParamsPtr& params, const std::array<double, 4>& s,
                                 const std::array<double, 3>& w_tail);

}  // namespace liebundle
