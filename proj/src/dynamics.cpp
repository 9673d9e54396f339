#include "liebundle/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace liebundle {

double Trajectory::max_relative_drift(std::size_t monitor, double floor) const {
  if (monitor >= monitor_log.size() || monitor_log[monitor].empty()) return 0.0;
  const std::vector<double>& log = monitor_log[monitor];
  const double ref = log.front();
  double drift = 0.0;
  for (double v : log) drift = std::max(drift, std::abs(v - ref));
  return drift / std::max(std::abs(ref), floor);
}

DualPoint vector_field(const HamiltonianSystem& sys, const DualPoint& rho) {
  return coadjoint(gradient(sys.hamiltonian, rho), rho, sys.s);
}

namespace {

std::vector<double> rhs_coords(const HamiltonianSystem& sys, const std::vector<double>& u) {
  return vector_field(sys, dual_from_coords(sys.params, u)).coords();
}

bool finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void record(Trajectory& out, const HamiltonianSystem& sys, double t, const std::vector<double>& u) {
  const DualPoint state = dual_from_coords(sys.params, u);
  out.times.push_back(t);
  for (std::size_t m = 0; m < sys.monitors.size(); ++m) out.monitor_log[m].push_back(sys.monitors[m].eval(state));
  out.states.push_back(state);
  out.last_valid_time = t;
}

Trajectory integrate_rk4(const HamiltonianSystem& sys, const DualPoint& rho0, double t_end, double h) {
  Trajectory out;
  out.monitor_log.resize(sys.monitors.size());
  for (const ScalarField& m : sys.monitors) out.monitor_names.push_back(m.name);

  std::vector<double> u = rho0.coords();
  double t = 0.0;
  record(out, sys, t, u);
  while (t < t_end) {
    const double step = std::min(h, t_end - t);
    const std::vector<double> k1 = rhs_coords(sys, u);
    std::vector<double> tmp = u;
    axpy(tmp, 0.5 * step, k1);
    const std::vector<double> k2 = rhs_coords(sys, tmp);
    tmp = u;
    axpy(tmp, 0.5 * step, k2);
    const std::vector<double> k3 = rhs_coords(sys, tmp);
    tmp = u;
    axpy(tmp, step, k3);
    const std::vector<double> k4 = rhs_coords(sys, tmp);

    std::vector<double> next = u;
    axpy(next, step / 6.0, k1);
    axpy(next, step / 3.0, k2);
    axpy(next, step / 3.0, k3);
    axpy(next, step / 6.0, k4);
    if (!finite(next)) {
      out.blew_up = true;
      return out;
    }
    u = std::move(next);
    t += step;
    record(out, sys, t, u);
  }
  return out;
}

// Dormand-Prince 5(4) embedded pair
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 5179.0 / 57600, kE3 = 7571.0 / 16695, kE4 = 393.0 / 640, kE5 = -92097.0 / 339200,
                 kE6 = 187.0 / 2100, kE7 = 1.0 / 40;

Trajectory integrate_rk45(const HamiltonianSystem& sys, const DualPoint& rho0, double t_end, double rtol, double atol) {
  Trajectory out;
  out.monitor_log.resize(sys.monitors.size());
  for (const ScalarField& m : sys.monitors) out.monitor_names.push_back(m.name);

  std::vector<double> u = rho0.coords();
  const std::size_t dim = u.size();
  double t = 0.0;
  record(out, sys, t, u);

  double h = t_end > 0.0 ? std::min(1e-2, t_end) : 0.0;
  const double h_min = t_end * 1e-14;
  std::size_t rejected_in_row = 0;
  while (t < t_end) {
    h = std::min(h, t_end - t);

    const std::vector<double> k1 = rhs_coords(sys, u);
    std::vector<double> tmp = u;
    axpy(tmp, h * kA21, k1);
    const std::vector<double> k2 = rhs_coords(sys, tmp);
    tmp = u;
    axpy(tmp, h * kA31, k1);
    axpy(tmp, h * kA32, k2);
    const std::vector<double> k3 = rhs_coords(sys, tmp);
    tmp = u;
    axpy(tmp, h * kA41, k1);
    axpy(tmp, h * kA42, k2);
    axpy(tmp, h * kA43, k3);
    const std::vector<double> k4 = rhs_coords(sys, tmp);
    tmp = u;
    axpy(tmp, h * kA51, k1);
    axpy(tmp, h * kA52, k2);
    axpy(tmp, h * kA53, k3);
    axpy(tmp, h * kA54, k4);
    const std::vector<double> k5 = rhs_coords(sys, tmp);
    tmp = u;
    axpy(tmp, h * kA61, k1);
    axpy(tmp, h * kA62, k2);
    axpy(tmp, h * kA63, k3);
    axpy(tmp, h * kA64, k4);
    axpy(tmp, h * kA65, k5);
    const std::vector<double> k6 = rhs_coords(sys, tmp);

    std::vector<double> u5 = u;
    axpy(u5, h * kB1, k1);
    axpy(u5, h * kB3, k3);
    axpy(u5, h * kB4, k4);
    axpy(u5, h * kB5, k5);
    axpy(u5, h * kB6, k6);
    const std::vector<double> k7 = rhs_coords(sys, u5);

    std::vector<double> u4 = u;
    axpy(u4, h * kE1, k1);
    axpy(u4, h * kE3, k3);
    axpy(u4, h * kE4, k4);
    axpy(u4, h * kE5, k5);
    axpy(u4, h * kE6, k6);
    axpy(u4, h * kE7, k7);

    if (!finite(u5) || !finite(u4)) {
      out.blew_up = true;
      return out;
    }

    double err = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double sc = atol + rtol * std::max(std::abs(u[i]), std::abs(u5[i]));
      const double e = (u5[i] - u4[i]) / sc;
      err += e * e;
    }
    err = std::sqrt(err / static_cast<double>(dim));

    if (err <= 1.0 || h <= h_min) {
      t += h;
      u = std::move(u5);
      record(out, sys, t, u);
      rejected_in_row = 0;
    } else if (++rejected_in_row > 64) {
      out.blew_up = true;
      return out;
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, factor));
  }
  return out;
}

}  // namespace

Trajectory integrate(const HamiltonianSystem& sys, const DualPoint& rho0, double t_end, const StepControl& ctl) {
  require_same_params(sys.params, rho0.params());
  if (t_end < 0.0) throw std::invalid_argument("integrate: t_end must be >= 0");
  if (ctl.kind == StepControl::Kind::FixedRk4) {
    if (ctl.h <= 0.0) throw std::invalid_argument("integrate: step must be positive");
    return integrate_rk4(sys, rho0, t_end, ctl.h);
  }
  return integrate_rk45(sys, rho0, t_end, ctl.rtol, ctl.atol);
}

CommutativityReport flow_commutativity(const HamiltonianSystem& sys1, const HamiltonianSystem& sys2,
                                       const DualPoint& rho0, double t, const StepControl& ctl,
                                       double involution_tol) {
  require_same_params(sys1.params, sys2.params);
  CommutativityReport rep;
  rep.involution_residual = std::abs(lie_poisson_bracket(sys1.hamiltonian, sys2.hamiltonian, rho0, sys1.s));
  rep.involution_ok = rep.involution_residual <= involution_tol;

  const auto flow = [&](const HamiltonianSystem& sys, const DualPoint& from) {
    Trajectory tr = integrate(sys, from, t, ctl);
    if (tr.blew_up) throw std::runtime_error("flow_commutativity: trajectory blew up");
    return tr.states.back();
  };
  const DualPoint a = flow(sys2, flow(sys1, rho0));
  const DualPoint b = flow(sys1, flow(sys2, rho0));
  rep.discrepancy = max_abs_diff(a.matrix(), b.matrix());
  return rep;
}

N4State n4_from_dual(const DualPoint& rho) {
  if (rho.params()->n() != 4) throw std::invalid_argument("n4_from_dual: n must be 4");
  const Matrix& r = rho.matrix();
  N4State s;
  s.x = {r(0, 1), r(0, 2), r(0, 3)};
  s.y = {r(2, 3), -r(1, 3), r(1, 2)};
  return s;
}

DualPoint n4_to_dual(const ParamsPtr& params, const N4State& state) {
  if (params->n() != 4) throw std::invalid_argument("n4_to_dual: n must be 4");
  Matrix r(4, 4);
  r(0, 1) = state.x[0];
  r(0, 2) = state.x[1];
  r(0, 3) = state.x[2];
  r(2, 3) = state.y[0];
  r(1, 3) = -state.y[1];
  r(1, 2) = state.y[2];
  return DualPoint(params, std::move(r), unchecked);
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 cwise(const Vec3& d, const Vec3& v) { return {d[0] * v[0], d[1] * v[1], d[2] * v[2]}; }

}  // namespace

N4State rigid_body_rhs(const N4State& state, const std::array<double, 3>& a,
                       const std::array<double, 4>& s, const std::array<double, 4>& w) {
  if (s[0] == 0.0) throw std::invalid_argument("rigid_body_rhs: s1 must be nonzero");
  for (double wi : w)
    if (wi == 0.0) throw std::invalid_argument("rigid_body_rhs: w entries must be nonzero");
  const Vec3 delta_t = {a[0], a[0] * a[1], a[0] * a[1] * a[2]};
  const Vec3 w_tail_inv = {w[1], w[2], w[3]};                       // entries of W~^-1
  const Vec3 ws = {w[1] / s[1], w[2] / s[2], w[3] / s[3]};          // W~^-1 S~
  const Vec3 a_diag = {a[1], 1.0, 1.0};                             // A
  const Vec3 b_diag = {1.0, 1.0, a[2]};                             // B
  const double shift = w[0] / s[0];

  N4State out;
  const Vec3 cx = cross(cwise(w_tail_inv, state.x), cwise(b_diag, state.y));
  for (int i = 0; i < 3; ++i) out.x[i] = delta_t[i] * (ws[i] - shift) * cx[i];

  // x-piece carries A^-1 only; the B^-1 factor belongs to the y-piece alone
  const Vec3 term1 = cross(state.x, cwise(ws, state.x));
  const Vec3 term2 = cross(state.y, cwise(ws, state.y));
  for (int i = 0; i < 3; ++i)
    out.y[i] = a[1] * a[2] * (w[0] * term1[i] / a_diag[i] - a[0] * w_tail_inv[i] * term2[i] / (a_diag[i] * b_diag[i]));
  return out;
}

N4State clebsch_rhs(const N4State& state, const std::array<double, 3>& a,
                    const std::array<double, 4>& s, const std::array<double, 3>& w_tail) {
  if (a[0] != 0.0) throw std::invalid_argument("clebsch_rhs: a1 must be zero");
  if (s[0] == 0.0) throw std::invalid_argument("clebsch_rhs: s1 must be nonzero");
  const Vec3 delta_t = {a[0], a[0] * a[1], a[0] * a[1] * a[2]};
  const Vec3 w_tail_inv = {w_tail[0], w_tail[1], w_tail[2]};
  const Vec3 ws = {w_tail[0] / s[1], w_tail[1] / s[2], w_tail[2] / s[3]};
  const Vec3 a_diag = {a[1], 1.0, 1.0};
  const Vec3 b_diag = {1.0, 1.0, a[2]};

  N4State out;
  const Vec3 cx = cross(cwise(w_tail_inv, state.x), cwise(b_diag, state.y));
  for (int i = 0; i < 3; ++i) out.x[i] = -delta_t[i] / s[0] * cx[i];

  const Vec3 cy = cross(state.x, cwise(ws, state.x));
  for (int i = 0; i < 3; ++i) out.y[i] = a[1] * a[2] / a_diag[i] * cy[i];
  return out;
}

namespace {

SymElement diag_sym(const ParamsPtr& params, const std::array<double, 4>& entries) {
  Matrix m(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return SymElement(params, std::move(m), unchecked);
}

}  // namespace

HamiltonianSystem rigid_body_system(const ParamsPtr& params, const std::array<double, 4>& s,
                                    const std::array<double, 4>& w) {
  if (params->n() != 4) throw std::invalid_argument("rigid_body_system: n must be 4");
  if (!params->all_nonzero()) throw std::invalid_argument("rigid_body_system: parameters must be nonzero");
  for (int i = 0; i < 4; ++i)
    if (s[static_cast<std::size_t>(i)] == 0.0 || w[static_cast<std::size_t>(i)] == 0.0)
      throw std::invalid_argument("rigid_body_system: s and w entries must be nonzero");

  const SymElement s_mat = diag_sym(params, {1.0 / s[0], 1.0 / s[1], 1.0 / s[2], 1.0 / s[3]});
  const SymElement w_mat = diag_sym(params, {1.0 / w[0], 1.0 / w[1], 1.0 / w[2], 1.0 / w[3]});

  const double a_full = params->full_product();
  HamiltonianSystem sys{params, s_mat, scaled_field("H", -a_full / 2.0, casimir_field(1, w_mat)), {}};
  sys.monitors.push_back(sys.hamiltonian);
  sys.monitors.push_back(casimir_field(1, s_mat));
  sys.monitors.push_back(casimir_field(2, s_mat));
  std::vector<ScalarField> pencil = pencil_integrals(PencilSpec{s_mat, w_mat}, 1, 1);
  pencil[1].name = "I";
  sys.monitors.push_back(pencil[1]);
  return sys;
}

HamiltonianSystem clebsch_system(const ParamsPtr& params, const std::array<double, 4>& s,
                                 const std::array<double, 3>& w_tail) {
  if (params->n() != 4) throw std::invalid_argument("clebsch_system: n must be 4");
  if (params->a()[0] != 0.0) throw std::invalid_argument("clebsch_system: a1 must be zero");
  for (double si : s)
    if (si == 0.0) throw std::invalid_argument("clebsch_system: s entries must be nonzero");

  const SymElement s_mat = diag_sym(params, {1.0 / s[0], 1.0 / s[1], 1.0 / s[2], 1.0 / s[3]});
  const double a2 = params->a()[1], a3 = params->a()[2];
  // H = (w2 a2 a3 x1^2 + w3 a3 x2^2 + w4 x3^2) / 2 over coordinates
  // (x1, x2, x3) = (rho_12, rho_13, rho_14)
  std::vector<std::tuple<int, int, double>> terms = {
      {0, 0, 0.5 * w_tail[0] * a2 * a3},
      {1, 1, 0.5 * w_tail[1] * a3},
      {2, 2, 0.5 * w_tail[2]},
  };
  HamiltonianSystem sys{params, s_mat, quadratic_field(params, "H", std::move(terms)), {}};
  sys.monitors.push_back(sys.hamiltonian);
  sys.monitors.push_back(casimir_degenerate_field(1, s_mat));
  return sys;
}

}  // namespace liebundle
