#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liebundle/algebra.hpp"
#include "liebundle/batch.hpp"

namespace liebundle {

struct VerifyOptions {
  std::vector<int> sizes{3, 4, 6};
  int draws = 500;
  std::uint64_t seed = 42;
  ExecPolicy policy = ExecPolicy::OpenMP;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Parameter regimes the randomized suites sweep over: all parameters
/// nonzero, single and double zeros (adjacent and separated), mixed signs,
/// tiny magnitudes, and diagonal versus dense bracket matrices.
struct Regime {
  std::string name;
  bool has_zeros = false;
  bool diagonal_s = false;
  std::vector<double> draw_a(int n, Rng& rng) const;
};

const std::vector<Regime>& standard_regimes();

SymElement draw_regime_sym(const Regime& regime, const ParamsPtr& params, Rng& rng);

/// Runs the full property battery. When a configured (params, S) pair is
/// given it participates alongside the random regimes, so a corrupted S
/// makes the membership and closure suites fail.
std::vector<SuiteResult> run_verify_suites(const VerifyOptions& options,
                                           const std::optional<std::pair<ParamsPtr, SymElement>>& configured);

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace liebundle
