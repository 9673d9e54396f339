#include "liebundle/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "liebundle/dynamics.hpp"
#include "liebundle/io.hpp"
#include "liebundle/linalg.hpp"
#include "liebundle/isomorphisms.hpp"
#include "liebundle/verify.hpp"

namespace liebundle {

namespace {

using nlohmann::json;

std::string out_path(const std::string& out_dir, const std::string& name) {
  return (std::filesystem::path(out_dir) / name).string();
}

}  // namespace

int cmd_verify(const RunConfig& config, const std::string& out_dir, std::ostream& out) {
  const SymElement s = realize_sym(config.params, config.s_spec, /*validate=*/false, config.membership_tol);

  VerifyOptions options;
  options.sizes = config.verify.sizes;
  options.draws = config.verify.draws;
  options.seed = config.seed;
  const std::vector<SuiteResult> results =
      run_verify_suites(options, std::make_optional(std::make_pair(config.params, s)));

  json report;
  report["seed"] = config.seed;
  json suites = json::array();
  for (const SuiteResult& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    for (std::size_t pad = r.name.size(); pad < 30; ++pad) out << ' ';
    out << " cases=" << r.cases << "  max_residual=" << format_double(r.max_residual)
        << "  tol=" << format_double(r.tolerance) << "\n";
    suites.push_back({{"name", r.name},
                      {"cases", r.cases},
                      {"max_residual", r.max_residual},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}});
  }
  report["suites"] = suites;
  const bool ok = all_passed(results);
  report["all_passed"] = ok;
  std::filesystem::create_directories(out_dir);
  write_text_file(out_path(out_dir, "verify_report.json"), report.dump(2) + "\n");
  out << (ok ? "all suites passed" : "suite failures detected") << "\n";
  return ok ? kExitOk : kExitPropertyFailure;
}

int cmd_classify(const RunConfig& config, std::ostream& out) {
  const ParamsPtr& params = config.params;
  if (!params->all_nonzero()) {
    // contraction case: report the block decomposition
    const std::vector<int>& b = params->boundaries();
    std::string factors;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      if (i) factors += " × ";
      factors += "A_{(";
      for (int t = b[i]; t < b[i + 1] - 1; ++t) {
        if (t > b[i]) factors += ",";
        factors += format_double(params->a()[static_cast<std::size_t>(t)]);
      }
      factors += ")}";
    }
    std::vector<std::string> stars;
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        stars.push_back("Mat_{" + std::to_string(b[i + 1] - b[i]) + "×" + std::to_string(b[j + 1] - b[j]) + "}");
    std::string star_part;
    if (stars.size() == 1) {
      star_part = stars.front();
    } else {
      star_part = "(";
      for (std::size_t i = 0; i < stars.size(); ++i) {
        if (i) star_part += " ⊕ ";
        star_part += stars[i];
      }
      star_part += ")";
    }
    out << "semidirect decomposition: " << factors << " ⋉ " << star_part << "\n";
    std::string dims;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      if (i) dims += ", ";
      dims += std::to_string(b[i + 1] - b[i]);
    }
    out << "diagonal block sizes: " << dims << "\n";
    return kExitOk;
  }

  const SymElement s = realize_sym(params, config.s_spec, /*validate=*/true, config.membership_tol);
  try {
    const Signature sig = classify_signature(params, s);
    out << so_name(sig) << "\n";
    out << "signature (p,q) = (" << sig.p << "," << sig.q << ")\n";
  } catch (const DegenerateClassificationError& e) {
    out << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  }
  return kExitOk;
}

namespace {

std::vector<double> default_rho0(int dim) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k)
    v[static_cast<std::size_t>(k)] = (k % 2 ? -1.0 : 1.0) * (0.3 + 0.4 * (k + 1) / static_cast<double>(dim));
  return v;
}

std::array<double, 4> reciprocal_diagonal(const MatrixSpec& spec, const char* which) {
  if (spec.kind != MatrixSpec::Kind::Diagonal)
    throw ConfigError(std::string("config error at $.") + which + ": built-in n=4 systems require a diagonal spec");
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const double v = spec.values[static_cast<std::size_t>(i)];
    if (v == 0.0) throw ConfigError(std::string("config error at $.") + which + ": zero diagonal entry");
    out[static_cast<std::size_t>(i)] = 1.0 / v;
  }
  return out;
}

HamiltonianSystem build_system(const RunConfig& config) {
  const SimulateSpec& sim = *config.simulate;
  const ParamsPtr& params = config.params;

  if (sim.system == "rigid_body_n4") {
    if (params->n() != 4) throw ConfigError("config error at $.params.n: rigid_body_n4 requires n=4");
    if (!config.w_spec) throw ConfigError("config error at $.W: rigid_body_n4 requires W");
    return rigid_body_system(params, reciprocal_diagonal(config.s_spec, "S"), reciprocal_diagonal(*config.w_spec, "W"));
  }

  if (sim.system == "clebsch_n4") {
    if (params->n() != 4) throw ConfigError("config error at $.params.n: clebsch_n4 requires n=4");
    if (params->a()[0] != 0.0) throw ConfigError("config error at $.params.a: clebsch_n4 requires a_1 = 0");
    if (!config.w_spec) throw ConfigError("config error at $.W: clebsch_n4 requires W");
    if (config.w_spec->kind != MatrixSpec::Kind::Diagonal)
      throw ConfigError("config error at $.W: clebsch_n4 requires a diagonal spec");
    if (config.w_spec->values[0] != 0.0)
      throw ConfigError("config error at $.W.diagonal: clebsch_n4 requires the first entry to be 0");
    std::array<double, 3> w_tail{};
    for (int i = 1; i < 4; ++i) {
      const double v = config.w_spec->values[static_cast<std::size_t>(i)];
      if (v == 0.0) throw ConfigError("config error at $.W.diagonal: tail entries must be nonzero");
      w_tail[static_cast<std::size_t>(i - 1)] = 1.0 / v;
    }
    return clebsch_system(params, reciprocal_diagonal(config.s_spec, "S"), w_tail);
  }

  // custom quadratic Hamiltonian
  const SymElement s = realize_sym(params, config.s_spec, /*validate=*/true, config.membership_tol);
  try {
    invert(s.matrix());
  } catch (const SingularMatrixError&) {
    throw ConfigError("config error at $.S: matrix must be invertible for simulation monitors");
  }
  HamiltonianSystem sys{params, s, quadratic_field(params, "H", sim.quadratic), {}};
  sys.monitors.push_back(sys.hamiltonian);
  for (int l : sim.casimir_orders) {
    if (params->all_nonzero())
      sys.monitors.push_back(casimir_field(l, s));
    else
      sys.monitors.push_back(casimir_degenerate_field(l, s));
  }
  if (config.w_spec && params->all_nonzero() && sim.pencil_order >= 1) {
    const SymElement w = realize_sym(params, *config.w_spec, /*validate=*/true, config.membership_tol);
    std::vector<ScalarField> pencil = pencil_integrals(PencilSpec{s, w}, 1, sim.pencil_order);
    for (int m = 1; m <= sim.pencil_order; ++m) sys.monitors.push_back(pencil[static_cast<std::size_t>(m)]);
  }
  return sys;
}

}  // namespace

int cmd_simulate(const RunConfig& config, const std::string& out_dir, std::ostream& out) {
  if (!config.simulate) throw ConfigError("config error at $.simulate: required for the simulate command");
  const SimulateSpec& sim = *config.simulate;
  const ParamsPtr& params = config.params;
  const int dim = skew_dim(params->n());

  const HamiltonianSystem sys = build_system(config);
  const std::vector<double> rho0_coords = sim.rho0 ? *sim.rho0 : default_rho0(dim);
  const DualPoint rho0 = dual_from_coords(params, rho0_coords);
  const StepControl ctl = sim.step.adaptive ? StepControl::rk45(sim.step.rtol, sim.step.atol) : StepControl::rk4(sim.step.h);

  const auto t0 = std::chrono::steady_clock::now();
  const Trajectory traj = integrate(sys, rho0, sim.t_end, ctl);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // one row per accepted step: t, coordinates, monitors
  std::string csv;
  {
    std::vector<std::string> header{"t"};
    for (int i = 0; i < params->n(); ++i)
      for (int j = i + 1; j < params->n(); ++j)
        header.push_back("rho_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    for (const std::string& name : traj.monitor_names) header.push_back(name);
    csv += join_csv_row(header);
    for (std::size_t row = 0; row < traj.times.size(); ++row) {
      std::vector<std::string> cells{format_double(traj.times[row])};
      for (double c : traj.states[row].coords()) cells.push_back(format_double(c));
      for (const auto& log : traj.monitor_log) cells.push_back(format_double(log[row]));
      csv += join_csv_row(cells);
    }
  }
  std::filesystem::create_directories(out_dir);
  write_text_file(out_path(out_dir, "trajectory.csv"), csv);

  json summary;
  summary["config"] = config.echo;
  summary["rows"] = traj.times.size();
  summary["final_time"] = traj.last_valid_time;
  summary["blow_up"] = traj.blew_up;
  json monitors = json::object();
  for (std::size_t m = 0; m < traj.monitor_names.size(); ++m) {
    monitors[traj.monitor_names[m]] = {{"initial", traj.monitor_log[m].empty() ? 0.0 : traj.monitor_log[m].front()},
                                       {"max_rel_drift", traj.max_relative_drift(m)}};
  }
  summary["monitors"] = monitors;
  summary["wall_time_s"] = wall;
  write_text_file(out_path(out_dir, "summary.json"), summary.dump(2) + "\n");

  out << "system " << sim.system << ", rows=" << traj.times.size() << ", final_time=" << format_double(traj.last_valid_time)
      << "\n";
  for (std::size_t m = 0; m < traj.monitor_names.size(); ++m)
    out << "monitor " << traj.monitor_names[m] << " max_rel_drift=" << format_double(traj.max_relative_drift(m)) << "\n";
  if (traj.blew_up) {
    out << "blow-up detected; trajectory truncated\n";
    return kExitBlowUp;
  }
  return kExitOk;
}

}  // namespace liebundle
