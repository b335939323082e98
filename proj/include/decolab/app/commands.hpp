#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decolab/app/scenario.hpp"
#include "decolab/app/table.hpp"
#include "decolab/feasibility.hpp"

namespace decolab::app {

/// Command-line values that take precedence over the scenario file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> preset;
  std::optional<double> n;
};

struct CommandOutput {
  std::vector<Table> tables;
  std::vector<std::string> messages;  // human-readable verdict lines
  int exit_code = 0;
};

/// zurek-run, cavity-run, despagnat, feasibility, undecide, oracle-check, revival-scan
const std::vector<std::string>& command_names();

/// True when the command can run without a scenario file.
bool scenario_optional(const std::string& command);

/// Runs one subcommand. `doc` may be null only when scenario_optional(command).
/// Throws SchemaError for malformed scenarios and RegimeError outside a formula's regime.
CommandOutput run_command(const std::string& command, const ScenarioDoc* doc, const Overrides& overrides,
                          const feasibility::PresetCatalog& presets);

/// Cross-validation of every analytic formula against the dense oracle.
struct OracleCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_deviation <= tolerance; }
};

std::vector<OracleCheck> run_oracle_suite(std::uint64_t seed, std::size_t sets);

}  // namespace decolab::app
