#pragma once

#include <ostream>
#include <string>

#include "liebundle/config.hpp"

namespace liebundle {

/// Exit codes shared by the commands and the CLI:
/// 0 ok, 1 property failure, 2 config error, 3 degenerate classification,
/// 4 trajectory blow-up.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitBlowUp = 4;

int cmd_verify(const RunConfig& config, const std::string& out_dir, std::ostream& out);
int cmd_classify(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, const std::string& out_dir, std::ostream& out);

}  // namespace liebundle
