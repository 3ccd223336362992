#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hyperpam/cli/config.hpp"
#include "hyperpam/cli/table.hpp"
#include "hyperpam/ledger.hpp"

namespace hyperpam::cli {

struct OptionInfo {
  std::string name;           // long flag without dashes
  std::string default_value;  // empty: derived from the config
  std::string help;
};

struct CommandContext {
  RunConfig config;
  std::map<std::string, std::string> options;  // every OptionInfo name is present
  std::filesystem::path out_dir;
  Format format = Format::Csv;
  std::ostream* log = nullptr;
};

struct CommandResult {
  int exit_code = 0;
  std::vector<std::string> outputs;  // file names inside out_dir
  ConstantLedger ledger;
};

struct CommandInfo {
  std::string name;
  std::string help;
  std::vector<OptionInfo> options;
  std::function<CommandResult(const CommandContext&)> run;
};

const std::vector<CommandInfo>& commands();
const CommandInfo& find_command(std::string_view name);

/// Validates the config, fills option defaults, runs the subcommand and
/// writes manifest.json beside its outputs. Returns the exit status.
int run_command(std::string_view name, const RunConfig& config, std::map<std::string, std::string> options,
                const std::filesystem::path& out_dir, Format format, std::ostream& log);

std::vector<double> parse_double_list(std::string_view text, std::string_view what);
std::vector<int> parse_int_list(std::string_view text, std::string_view what);
/// n points from lo to hi, equally spaced in log.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace hyperpam::cli
