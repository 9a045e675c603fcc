#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "evi/config.hpp"

namespace evi {

enum class Command {
  Validate,
  Run,
  Equilibrium,
  Longtime,
  SingularLimit,
  Convergence,
  OracleCheck,
  Compare,
};

std::optional<Command> command_from_string(std::string_view name);
std::string command_name(Command cmd);

// Exit codes: 0 all asserted invariants pass, 1 an invariant failed,
// 2 config or hypothesis rejection, 3 solver/internal failure. Artifacts go
// to out_dir (trajectory CSVs, report.json, summary.json); on failure the
// files written so far are removed and a minimal failure summary is left.
int dispatch(Command cmd, const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace evi
