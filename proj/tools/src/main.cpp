#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "hyperpam/cli/commands.hpp"
#include "hyperpam/cli/config.hpp"
#include "hyperpam/cli/manifest.hpp"

using namespace hyperpam::cli;

int main(int argc, char** argv) {
  CLI::App app{"Parabolic Anderson model toolkit on hyperbolic space"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  std::string format = "csv";
  unsigned workers = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "YAML config, or a manifest.json from an earlier run");
  app.add_option("--set", overrides, "Override one key, e.g. --set noise.beta=2 (repeatable)");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  auto* workers_opt = app.add_option("--workers", workers, "Monte Carlo worker threads (overrides mc.workers)");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides mc.seed)");
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, CLI::Option*>> flags;
  for (const auto& info : commands()) {
    auto* sub = app.add_subcommand(info.name, info.help);
    for (const auto& o : info.options) {
      auto& slot = values[info.name][o.name];
      slot = o.default_value;
      flags[info.name][o.name] = sub->add_option("--" + o.name, slot, o.help);
    }
  }

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg;
    std::map<std::string, std::string> options;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
      const auto replay = read_replay(config_path);
      if (replay.subcommand == name) options = replay.options;
    }
    for (const auto& [opt, flag] : flags[name]) {
      if (flag->count() > 0) options[opt] = values[name][opt];
    }
    for (const auto& s : overrides) apply_override(cfg, s);
    if (workers_opt->count() > 0) cfg.workers = workers;
    if (seed_opt->count() > 0) cfg.seed = seed;
    return run_command(name, cfg, options, out_dir, format_from_string(format), std::cout);
  } catch (const std::exception& e) {
    std::cerr << "hyperpam " << name << ": " << e.what() << "\n";
    return 2;
  }
}
