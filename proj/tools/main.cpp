#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "evi/dispatch.hpp"

int main(int argc, char** argv) {
  CLI::App app{"evi - irreversible evolutionary variational inequality solver"};
  app.footer("commands: validate | run | equilibrium | longtime | singular-limit | "
             "convergence | oracle-check | compare");

  std::string command;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool strict = true;

  app.add_option("command", command, "subcommand to run")->required();
  app.add_option("--config", config_path, "path to the scenario config (JSON)")->required();
  app.add_option("--out", out_dir, "output directory (overrides env and config)");
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  app.add_flag("--strict,!--lenient", strict,
               "reject unknown config keys (default) / ignore them");

  CLI11_PARSE(app, argc, argv);
  seed_given = seed_opt->count() > 0;

  const auto cmd = evi::command_from_string(command);
  if (!cmd) {
    std::cerr << "unknown command '" << command << "'\n";
    return 2;
  }

  evi::ParseResult parsed = evi::parse_config_file(config_path, strict);
  if (!parsed.ok()) {
    std::cerr << "config rejected (" << parsed.errors.size() << " error(s)):\n";
    for (const auto& e : parsed.errors) std::cerr << "  - " << e << "\n";
    return 2;
  }
  evi::ScenarioConfig cfg = *parsed.config;
  if (seed_given) cfg.seed = seed;

  // Output dir precedence: --out flag, then EVI_OUT_DIR, then the config.
  // The config itself is not rewritten, so artifacts stay byte-identical no
  // matter where they land.
  std::string out = cfg.out_dir;
  if (const char* env = std::getenv("EVI_OUT_DIR"); env && *env) out = env;
  if (!out_dir.empty()) out = out_dir;

  const int code = evi::dispatch(*cmd, cfg, out);
  std::cerr << "evi " << command << ": " << (code == 0 ? "ok" : "FAILED") << " (exit " << code
            << "), artifacts in " << out << "\n";
  return code;
}
