#include "hyperpam/cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "hyperpam/errors.hpp"

namespace hyperpam::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Nested mapping mirroring the config file; numbers kept as exact text.
ordered_json config_tree(const RunConfig& cfg) {
  ordered_json tree = ordered_json::object();
  for (const auto& key : config_keys()) {
    const auto dot = key.find('.');
    tree[key.substr(0, dot)][key.substr(dot + 1)] = get_value(cfg, key);
  }
  if (!cfg.constants.empty()) {
    ordered_json c = ordered_json::object();
    for (const auto& [name, value] : cfg.constants) c[name] = format_double(value);
    tree["constants"] = c;
  }
  return tree;
}

}  // namespace

std::string_view tool_version() { return "hyperpam 0.3.0"; }

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string manifest_json(const Manifest& m) {
  ordered_json j;
  j["tool_version"] = tool_version();
  j["subcommand"] = m.subcommand;
  j["master_seed"] = m.config.seed;
  j["config"] = config_tree(m.config);
  j["options"] = m.options;
  ordered_json ledger = ordered_json::object();
  for (const auto& [key, e] : m.ledger.entries()) {
    ledger[key] = {{"value", e.value}, {"provenance", to_string(e.provenance)}, {"note", e.note}};
  }
  j["constant_ledger"] = ledger;
  ordered_json outputs = ordered_json::array();
  for (const auto& o : m.outputs) outputs.push_back({{"path", o.path}, {"sha256", o.sha256}});
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

std::filesystem::path write_manifest(const std::filesystem::path& dir, Manifest m,
                                     const std::vector<std::string>& output_files) {
  m.outputs.clear();
  for (const auto& f : output_files) m.outputs.push_back({f, sha256_file(dir / f)});
  const auto path = dir / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  out << manifest_json(m);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return path;
}

ManifestReplay read_replay(const std::filesystem::path& path) {
  ManifestReplay replay;
  const std::string text = read_file(path);
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("tool_version")) return replay;
  replay.subcommand = j.value("subcommand", "");
  if (j.contains("options") && j["options"].is_object()) {
    for (const auto& [k, v] : j["options"].items()) {
      if (v.is_string()) replay.options[k] = v.get<std::string>();
    }
  }
  return replay;
}

std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path) {
  const auto j = nlohmann::json::parse(read_file(manifest_path));
  const auto dir = manifest_path.parent_path();
  std::vector<std::string> bad;
  for (const auto& o : j.at("outputs")) {
    const auto rel = o.at("path").get<std::string>();
    const auto file = dir / rel;
    if (!std::filesystem::exists(file) || sha256_file(file) != o.at("sha256").get<std::string>()) {
      bad.push_back(rel);
    }
  }
  return bad;
}

}  // namespace hyperpam::cli
