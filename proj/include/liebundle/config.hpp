#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "liebundle/algebra.hpp"

namespace liebundle {

/// Parse or validation failure; the message names the offending key path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct MatrixSpec {
  enum class Kind { Diagonal, Coords, FullMatrix };
  Kind kind = Kind::Diagonal;
  std::vector<double> values;
};

struct StepSpec {
  bool adaptive = false;
  double h = 1e-3;
  double rtol = 1e-10;
  double atol = 1e-12;
};

struct SimulateSpec {
  std::string system;  // rigid_body_n4 | clebsch_n4 | custom
  std::optional<std::vector<double>> rho0;
  double t_end = 10.0;
  StepSpec step;
  std::vector<int> casimir_orders{1, 2};
  int pencil_order = 1;
  std::vector<std::tuple<int, int, double>> quadratic;  // custom Hamiltonian terms
};

struct VerifySpec {
  std::vector<int> sizes{3, 4, 6};
  int draws = 500;
};

/// Fully parsed run configuration. `echo` is the normalized document with
/// defaults filled in; re-running it reproduces the same results.
struct RunConfig {
  std::uint64_t seed = 42;
  ParamsPtr params;
  MatrixSpec s_spec;
  std::optional<MatrixSpec> w_spec;
  double membership_tol = kMembershipTol;
  VerifySpec verify;
  std::optional<SimulateSpec> simulate;
  nlohmann::json echo;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Builds the matrix from a spec. Diagonal and coordinate specs are members
/// by construction; a full-matrix spec is membership-checked only when
/// `validate` is set, which lets the verify command accept deliberately
/// corrupted inputs as negative controls.
SymElement realize_sym(const ParamsPtr& params, const MatrixSpec& spec, bool validate, double tol = kMembershipTol);

}  // namespace liebundle
