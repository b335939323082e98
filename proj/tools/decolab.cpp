// decolab: scenario files in, CSV/JSON tables out.
#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "decolab/app/commands.hpp"
#include "decolab/app/scenario.hpp"
#include "decolab/app/table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitSchema = 2;
constexpr int kExitRegime = 3;

decolab::feasibility::PresetCatalog presets_from_env() {
  decolab::feasibility::PresetCatalog all;
  const char* env = std::getenv("DECOLAB_PRESET_PATH");
  if (!env) return all;
  std::string list = env;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(':', start), list.size());
    const std::string path = list.substr(start, end - start);
    if (!path.empty()) {
      auto cat = decolab::feasibility::load_presets(path);
      all.species.insert(all.species.end(), cat.species.begin(), cat.species.end());
      all.scenarios.insert(all.scenarios.end(), cat.scenarios.begin(), cat.scenarios.end());
    }
    start = end + 1;
  }
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decolab - spin-bath decoherence laboratory"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string scenario_path;
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::string preset;
  double n = 0.0;
  bool quiet = false;

  for (const auto& name : decolab::app::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--scenario", scenario_path, "Scenario JSON file");
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Seed (overrides the scenario)");
    sub->add_option("--preset", preset, "Scenario preset name (nucleon, ...)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--n", n, "Particle count (overrides the scenario; 1e5 accepted)");
    sub->add_flag("--quiet", quiet, "Print nothing on success");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSchema;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  decolab::app::Overrides ov;
  if (sub->count("--seed")) ov.seed = seed;
  if (sub->count("--preset")) ov.preset = preset;
  if (sub->count("--n")) ov.n = n;

  try {
    const auto presets = presets_from_env();
    std::optional<decolab::app::ScenarioDoc> doc;
    if (!scenario_path.empty()) doc = decolab::app::ScenarioDoc::load(scenario_path);
    const auto result = decolab::app::run_command(command, doc ? &*doc : nullptr, ov, presets);

    std::string stem = command;
    std::replace(stem.begin(), stem.end(), '-', '_');
    const auto written =
        decolab::app::write_tables(out_dir, stem, result.tables, decolab::app::parse_format(format));
    if (!quiet || result.exit_code != 0) {
      for (const auto& m : result.messages) std::cout << m << '\n';
      if (!quiet)
        for (const auto& p : written) std::cout << "wrote " << p.string() << '\n';
    }
    return result.exit_code;
  } catch (const decolab::app::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const decolab::RegimeError& e) {
    std::cerr << "regime error: " << e.what() << '\n';
    return kExitRegime;
  } catch (const decolab::ParameterError& e) {
    std::cerr << "error: " << (scenario_path.empty() ? std::string() : scenario_path + ": ") << e.what() << '\n';
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
