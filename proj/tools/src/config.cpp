#include "hyperpam/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "hyperpam/errors.hpp"

namespace hyperpam::cli {

namespace {

constexpr std::string_view kConstantsPrefix = "constants.";

const std::array<std::string_view, 7> kLedgerKeys = {
    ledger_keys::kDmUpper, ledger_keys::kDmLower, ledger_keys::kGbar,     ledger_keys::kChaos,
    ledger_keys::kPsi,     ledger_keys::kSemigroup, ledger_keys::kDirichlet,
};

template <typename Int>
Int parse_integer(std::string_view text, std::string_view what) {
  Int value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool is_ledger_key(std::string_view key) {
  for (auto k : kLedgerKeys) {
    if (k == key) return true;
  }
  return false;
}

struct Leaf {
  std::string value;
  int line = 0;
};

void flatten(const YAML::Node& node, const std::string& prefix, std::vector<std::pair<std::string, Leaf>>& out,
             std::string_view source) {
  if (node.IsMap()) {
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      flatten(kv.second, prefix.empty() ? key : prefix + "." + key, out, source);
    }
    return;
  }
  const int line = node.Mark().line + 1;
  if (!node.IsScalar()) {
    std::ostringstream msg;
    msg << source << ":" << line << ": key '" << prefix << "' must hold a scalar";
    throw ConfigError(msg.str());
  }
  out.emplace_back(prefix, Leaf{node.Scalar(), line});
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text, std::string_view what) {
  std::string_view t = text;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  if (t == "inf" || t == ".inf" || t == "Inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc{} || ptr != end || t.empty()) {
    throw ConfigError(std::string(what) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "model.n",  "model.K",     "noise.alpha",  "noise.beta", "moment.p",   "moment.r",
      "mc.t_end", "mc.dt",       "mc.n_paths",   "mc.seed",    "mc.workers", "u0.kind",
      "u0.epsilon", "u0.R",      "kernel.mode",  "kernel.delta_floor",
  };
  return keys;
}

void set_value(RunConfig& cfg, std::string_view key, std::string_view text) {
  const auto num = [&] { return parse_double(text, key); };
  if (key == "model.n") cfg.n = parse_integer<int>(text, key);
  else if (key == "model.K") cfg.K = num();
  else if (key == "noise.alpha") cfg.alpha = num();
  else if (key == "noise.beta") cfg.beta = num();
  else if (key == "moment.p") cfg.p = parse_integer<int>(text, key);
  else if (key == "moment.r") cfg.r = num();
  else if (key == "mc.t_end") cfg.t_end = num();
  else if (key == "mc.dt") cfg.dt = num();
  else if (key == "mc.n_paths") cfg.n_paths = parse_integer<std::size_t>(text, key);
  else if (key == "mc.seed") cfg.seed = parse_integer<std::uint64_t>(text, key);
  else if (key == "mc.workers") cfg.workers = parse_integer<unsigned>(text, key);
  else if (key == "u0.kind") cfg.u0_kind = initial_kind_from_string(text);
  else if (key == "u0.epsilon") cfg.u0_epsilon = num();
  else if (key == "u0.R") cfg.u0_R = num();
  else if (key == "kernel.mode") cfg.kernel_mode = kernel_choice_from_string(text);
  else if (key == "kernel.delta_floor") cfg.delta_floor = num();
  else if (key.starts_with(kConstantsPrefix)) {
    const std::string name(key.substr(kConstantsPrefix.size()));
    if (!is_ledger_key(name)) throw ConfigError("unknown constant '" + std::string(key) + "'");
    const double v = num();
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(key) + " must be finite and > 0");
    cfg.constants[name] = v;
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("--set expects KEY=VALUE, got '" + std::string(assignment) + "'");
  }
  set_value(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::string get_value(const RunConfig& cfg, std::string_view key) {
  if (key == "model.n") return std::to_string(cfg.n);
  if (key == "model.K") return format_double(cfg.K);
  if (key == "noise.alpha") return format_double(cfg.alpha);
  if (key == "noise.beta") return format_double(cfg.beta);
  if (key == "moment.p") return std::to_string(cfg.p);
  if (key == "moment.r") return format_double(cfg.r);
  if (key == "mc.t_end") return format_double(cfg.t_end);
  if (key == "mc.dt") return format_double(cfg.dt);
  if (key == "mc.n_paths") return std::to_string(cfg.n_paths);
  if (key == "mc.seed") return std::to_string(cfg.seed);
  if (key == "mc.workers") return std::to_string(cfg.workers);
  if (key == "u0.kind") return std::string(to_string(cfg.u0_kind));
  if (key == "u0.epsilon") return format_double(cfg.u0_epsilon);
  if (key == "u0.R") return format_double(cfg.u0_R);
  if (key == "kernel.mode") return std::string(to_string(cfg.kernel_mode));
  if (key == "kernel.delta_floor") return format_double(cfg.delta_floor);
  if (key.starts_with(kConstantsPrefix)) {
    auto it = cfg.constants.find(std::string(key.substr(kConstantsPrefix.size())));
    if (it != cfg.constants.end()) return format_double(it->second);
  }
  throw ConfigError("unknown key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    std::ostringstream msg;
    msg << source << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(msg.str());
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError(std::string(source) + ": top level must be a mapping");
  if (root["config"] && root["config"].IsMap() && root["tool_version"]) root = root["config"];

  std::vector<std::pair<std::string, Leaf>> leaves;
  flatten(root, "", leaves, source);
  for (const auto& [key, leaf] : leaves) {
    try {
      set_value(cfg, key, leaf.value);
    } catch (const ConfigError& e) {
      std::ostringstream msg;
      msg << source << ":" << leaf.line << ": " << e.what();
      throw ConfigError(msg.str());
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string serialize_config(const RunConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  std::string section;
  for (const auto& key : config_keys()) {
    const auto dot = key.find('.');
    const std::string head = key.substr(0, dot);
    if (head != section) {
      if (!section.empty()) out << YAML::EndMap;
      out << YAML::Key << head << YAML::Value << YAML::BeginMap;
      section = head;
    }
    out << YAML::Key << key.substr(dot + 1) << YAML::Value << get_value(cfg, key);
  }
  out << YAML::EndMap;
  if (!cfg.constants.empty()) {
    out << YAML::Key << "constants" << YAML::Value << YAML::BeginMap;
    for (const auto& [name, value] : cfg.constants) out << YAML::Key << name << YAML::Value << format_double(value);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

ConstantLedger RunConfig::ledger() const {
  ConstantLedger ledger;
  for (const auto& [name, value] : constants) ledger.set(name, value, Provenance::User, "config");
  return ledger;
}

FkConfig RunConfig::fk(ConstantLedger& ledger) const {
  FkConfig f;
  f.spec = noise();
  f.p = p;
  f.t_end = t_end;
  f.dt = dt;
  f.n_paths = n_paths;
  f.seed = seed;
  f.u0 = initial_condition();
  f.kernel_mode = kernel_mode;
  f.delta_floor = delta_floor;
  f.lower_constant = kernel_mode == KernelChoice::Lower ? ledger.resolve(ledger_keys::kGbar, 1.0) : 1.0;
  f.workers = workers;
  return f;
}

BoundConfig RunConfig::bounds(ConstantLedger& ledger) const { return BoundConfig::from_ledger(noise(), r, ledger); }

double RunConfig::q_radius() const {
  return u0_kind == InitialCondition::Kind::Bump ? u0_R : std::numeric_limits<double>::infinity();
}

void RunConfig::validate() const {
  noise().validate();
  if (!dalang_check(alpha, n)) {
    std::ostringstream msg;
    msg << "noise.alpha = " << alpha << " violates Dalang's condition: need alpha > (n-2)/4 = " << (n - 2) / 4.0;
    throw ConfigError(msg.str());
  }
  if (p < 2) throw ConfigError("moment.p must be an integer >= 2");
  if (!(r >= 1.0)) throw ConfigError("moment.r must lie in [1, inf]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("mc.t_end must be > 0");
  if (!(dt > 0.0) || dt > t_end) throw ConfigError("mc.dt must lie in (0, mc.t_end]");
  if (n_paths < 2) throw ConfigError("mc.n_paths must be >= 2");
  if (workers < 1) throw ConfigError("mc.workers must be >= 1");
  if (!(u0_epsilon > 0.0) || !std::isfinite(u0_epsilon)) throw ConfigError("u0.epsilon must be > 0");
  if (!(u0_R > 0.0) || !std::isfinite(u0_R)) throw ConfigError("u0.R must be > 0");
  if (!(delta_floor >= 0.0) || !std::isfinite(delta_floor)) throw ConfigError("kernel.delta_floor must be >= 0");
  if (kernel_mode == KernelChoice::Exact && n != 3) throw ConfigError("kernel.mode EXACT needs model.n = 3");
}

}  // namespace hyperpam::cli
