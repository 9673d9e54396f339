#include "liebundle/config.hpp"

#include <algorithm>
#include <fstream>

namespace liebundle {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
  throw ConfigError("config error at " + path + ": " + reason);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }) == allowed.end())
      fail(path + "." + key, "unknown key");
  }
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !v.is_number_integer()) fail(path, "expected a non-negative integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) fail(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_double_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

MatrixSpec parse_matrix_spec(const json& v, const std::string& path, int n) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"diagonal", "coords", "matrix"});
  if (v.size() != 1) fail(path, "exactly one of diagonal/coords/matrix must be given");
  MatrixSpec spec;
  if (v.contains("diagonal")) {
    spec.kind = MatrixSpec::Kind::Diagonal;
    spec.values = as_double_array(v["diagonal"], path + ".diagonal");
    if (static_cast<int>(spec.values.size()) != n) fail(path + ".diagonal", "expected n entries");
  } else if (v.contains("coords")) {
    spec.kind = MatrixSpec::Kind::Coords;
    spec.values = as_double_array(v["coords"], path + ".coords");
    if (static_cast<int>(spec.values.size()) != sym_dim(n)) fail(path + ".coords", "expected n(n+1)/2 entries");
  } else {
    spec.kind = MatrixSpec::Kind::FullMatrix;
    spec.values = as_double_array(v["matrix"], path + ".matrix");
    if (static_cast<int>(spec.values.size()) != n * n) fail(path + ".matrix", "expected n*n entries (row-major)");
  }
  return spec;
}

json spec_to_json(const MatrixSpec& spec) {
  json out = json::object();
  const char* key = spec.kind == MatrixSpec::Kind::Diagonal  ? "diagonal"
                    : spec.kind == MatrixSpec::Kind::Coords ? "coords"
                                                            : "matrix";
  out[key] = spec.values;
  return out;
}

StepSpec parse_step(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  StepSpec step;
  const std::string type = as_string(require(v, "type", path), path + ".type");
  if (type == "rk4") {
    check_keys(v, path, {"type", "h"});
    step.adaptive = false;
    if (v.contains("h")) step.h = as_double(v["h"], path + ".h");
    if (step.h <= 0.0) fail(path + ".h", "step must be positive");
  } else if (type == "rk45") {
    check_keys(v, path, {"type", "rtol", "atol"});
    step.adaptive = true;
    if (v.contains("rtol")) step.rtol = as_double(v["rtol"], path + ".rtol");
    if (v.contains("atol")) step.atol = as_double(v["atol"], path + ".atol");
    if (step.rtol <= 0.0 || step.atol <= 0.0) fail(path, "tolerances must be positive");
  } else {
    fail(path + ".type", "expected rk4 or rk45");
  }
  return step;
}

SimulateSpec parse_simulate(const json& v, const std::string& path, int n) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"system", "rho0", "t_end", "step", "casimir_orders", "pencil_order", "hamiltonian"});
  SimulateSpec sim;
  sim.system = as_string(require(v, "system", path), path + ".system");
  if (sim.system != "rigid_body_n4" && sim.system != "clebsch_n4" && sim.system != "custom")
    fail(path + ".system", "expected rigid_body_n4, clebsch_n4 or custom");
  if (v.contains("rho0")) {
    sim.rho0 = as_double_array(v["rho0"], path + ".rho0");
    if (static_cast<int>(sim.rho0->size()) != skew_dim(n)) fail(path + ".rho0", "expected n(n-1)/2 coordinates");
  }
  if (v.contains("t_end")) {
    sim.t_end = as_double(v["t_end"], path + ".t_end");
    if (sim.t_end < 0.0) fail(path + ".t_end", "must be >= 0");
  }
  if (v.contains("step")) sim.step = parse_step(v["step"], path + ".step");
  if (v.contains("casimir_orders")) {
    sim.casimir_orders.clear();
    const json& orders = v["casimir_orders"];
    if (!orders.is_array()) fail(path + ".casimir_orders", "expected an array");
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const int l = as_int(orders[i], path + ".casimir_orders[" + std::to_string(i) + "]");
      if (l < 1) fail(path + ".casimir_orders", "orders must be >= 1");
      sim.casimir_orders.push_back(l);
    }
    std::sort(sim.casimir_orders.begin(), sim.casimir_orders.end());
    sim.casimir_orders.erase(std::unique(sim.casimir_orders.begin(), sim.casimir_orders.end()),
                             sim.casimir_orders.end());
  }
  if (v.contains("pencil_order")) {
    sim.pencil_order = as_int(v["pencil_order"], path + ".pencil_order");
    if (sim.pencil_order < 0) fail(path + ".pencil_order", "must be >= 0");
  }
  if (sim.system == "custom") {
    const json& ham = require(v, "hamiltonian", path);
    if (!ham.is_object()) fail(path + ".hamiltonian", "expected an object");
    check_keys(ham, path + ".hamiltonian", {"quadratic"});
    const json& quad = require(ham, "quadratic", path + ".hamiltonian");
    if (!quad.is_array()) fail(path + ".hamiltonian.quadratic", "expected an array of [i, j, c] triples");
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const std::string tpath = path + ".hamiltonian.quadratic[" + std::to_string(i) + "]";
      if (!quad[i].is_array() || quad[i].size() != 3) fail(tpath, "expected [i, j, c]");
      const int a = as_int(quad[i][0], tpath + "[0]");
      const int b = as_int(quad[i][1], tpath + "[1]");
      const double c = as_double(quad[i][2], tpath + "[2]");
      const int dim = skew_dim(n);
      if (a < 0 || a >= dim || b < 0 || b >= dim) fail(tpath, "coordinate index out of range");
      sim.quadratic.emplace_back(a, b, c);
    }
  } else if (v.contains("hamiltonian")) {
    fail(path + ".hamiltonian", "only valid for the custom system");
  }
  return sim;
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) fail("$", "expected a JSON object");
  check_keys(j, "$", {"seed", "params", "S", "W", "tolerances", "verify", "simulate"});

  RunConfig cfg;
  if (j.contains("seed")) cfg.seed = as_u64(j["seed"], "$.seed");

  const json& params = require(j, "params", "$");
  if (!params.is_object()) fail("$.params", "expected an object");
  check_keys(params, "$.params", {"n", "a"});
  const int n = as_int(require(params, "n", "$.params"), "$.params.n");
  if (n < 2) fail("$.params.n", "n must be >= 2");
  std::vector<double> a = as_double_array(require(params, "a", "$.params"), "$.params.a");
  if (static_cast<int>(a.size()) != n - 1) fail("$.params.a", "expected n-1 entries");
  cfg.params = make_params(std::move(a));

  cfg.s_spec = parse_matrix_spec(require(j, "S", "$"), "$.S", n);
  if (j.contains("W")) cfg.w_spec = parse_matrix_spec(j["W"], "$.W", n);

  if (j.contains("tolerances")) {
    const json& tol = j["tolerances"];
    if (!tol.is_object()) fail("$.tolerances", "expected an object");
    check_keys(tol, "$.tolerances", {"membership"});
    if (tol.contains("membership")) {
      cfg.membership_tol = as_double(tol["membership"], "$.tolerances.membership");
      if (cfg.membership_tol <= 0.0) fail("$.tolerances.membership", "must be positive");
    }
  }

  if (j.contains("verify")) {
    const json& v = j["verify"];
    if (!v.is_object()) fail("$.verify", "expected an object");
    check_keys(v, "$.verify", {"sizes", "draws"});
    if (v.contains("sizes")) {
      cfg.verify.sizes.clear();
      const json& sizes = v["sizes"];
      if (!sizes.is_array() || sizes.empty()) fail("$.verify.sizes", "expected a non-empty array");
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        const int size = as_int(sizes[i], "$.verify.sizes[" + std::to_string(i) + "]");
        if (size < 2) fail("$.verify.sizes", "sizes must be >= 2");
        cfg.verify.sizes.push_back(size);
      }
    }
    if (v.contains("draws")) {
      cfg.verify.draws = as_int(v["draws"], "$.verify.draws");
      if (cfg.verify.draws < 1) fail("$.verify.draws", "must be >= 1");
    }
  }

  if (j.contains("simulate")) cfg.simulate = parse_simulate(j["simulate"], "$.simulate", n);

  // normalized echo with defaults made explicit
  json echo;
  echo["seed"] = cfg.seed;
  echo["params"] = {{"n", n}, {"a", cfg.params->a()}};
  echo["S"] = spec_to_json(cfg.s_spec);
  if (cfg.w_spec) echo["W"] = spec_to_json(*cfg.w_spec);
  echo["tolerances"] = {{"membership", cfg.membership_tol}};
  echo["verify"] = {{"sizes", cfg.verify.sizes}, {"draws", cfg.verify.draws}};
  if (cfg.simulate) {
    json sim;
    sim["system"] = cfg.simulate->system;
    if (cfg.simulate->rho0) sim["rho0"] = *cfg.simulate->rho0;
    sim["t_end"] = cfg.simulate->t_end;
    if (cfg.simulate->step.adaptive)
      sim["step"] = {{"type", "rk45"}, {"rtol", cfg.simulate->step.rtol}, {"atol", cfg.simulate->step.atol}};
    else
      sim["step"] = {{"type", "rk4"}, {"h", cfg.simulate->step.h}};
    sim["casimir_orders"] = cfg.simulate->casimir_orders;
    sim["pencil_order"] = cfg.simulate->pencil_order;
    if (cfg.simulate->system == "custom") {
      json quad = json::array();
      for (const auto& [i, k, c] : cfg.simulate->quadratic) quad.push_back({i, k, c});
      sim["hamiltonian"] = {{"quadratic", quad}};
    }
    echo["simulate"] = sim;
  }
  cfg.echo = std::move(echo);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  return parse_config(j);
}

SymElement realize_sym(const ParamsPtr& params, const MatrixSpec& spec, bool validate, double tol) {
  const int n = params->n();
  switch (spec.kind) {
    case MatrixSpec::Kind::Diagonal: {
      Matrix m(n, n);
      for (int i = 0; i < n; ++i) m(i, i) = spec.values[static_cast<std::size_t>(i)];
      return SymElement(params, std::move(m), unchecked);
    }
    case MatrixSpec::Kind::Coords:
      return sym_from_coords(params, spec.values);
    case MatrixSpec::Kind::FullMatrix:
    default: {
      Matrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = spec.values[static_cast<std::size_t>(i) * n + j];
      if (validate && !is_member_sym(*params, m, tol))
        throw ConfigError("config error at $.S.matrix: matrix is not a member of the symmetric space");
      return SymElement(params, std::move(m), unchecked);
    }
  }
}

}  // namespace liebundle
