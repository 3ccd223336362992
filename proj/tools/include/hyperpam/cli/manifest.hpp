#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hyperpam/cli/config.hpp"
#include "hyperpam/ledger.hpp"

namespace hyperpam::cli {

std::string_view tool_version();

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct OutputDigest {
  std::string path;  // relative to the manifest directory
  std::string sha256;
};

/// Everything needed to rerun an experiment and check its outputs.
struct Manifest {
  std::string subcommand;
  RunConfig config;
  /// Subcommand options as given (or defaulted), replayed when rerunning from this manifest.
  std::map<std::string, std::string> options;
  ConstantLedger ledger;
  std::vector<OutputDigest> outputs;
};

std::string manifest_json(const Manifest& m);
/// Writes `manifest.json` into dir after hashing every listed output.
std::filesystem::path write_manifest(const std::filesystem::path& dir, Manifest m,
                                     const std::vector<std::string>& output_files);

/// Subcommand and options stored in a manifest file (empty when the file is a plain config).
struct ManifestReplay {
  std::string subcommand;
  std::map<std::string, std::string> options;
};
ManifestReplay read_replay(const std::filesystem::path& path);

/// Paths whose current digest differs from the manifest (missing files included).
std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path);

}  // namespace hyperpam::cli
