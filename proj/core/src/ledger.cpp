#include "hyperpam/ledger.hpp"

#include <stdexcept>

#include "hyperpam/errors.hpp"

namespace hyperpam {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Default: return "default";
    case Provenance::Calibrated: return "calibrated";
    case Provenance::User: return "user";
  }
  return "default";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "default") return Provenance::Default;
  if (s == "calibrated") return Provenance::Calibrated;
  if (s == "user") return Provenance::User;
  throw ConfigError("unknown constant provenance '" + std::string(s) + "'");
}

void ConstantLedger::set(std::string key, double value, Provenance provenance, std::string note) {
  if (!(value > 0.0)) {
    throw ConfigError("constant '" + key + "' must be strictly positive");
  }
  entries_[std::move(key)] = Entry{value, provenance, std::move(note)};
}

std::optional<ConstantLedger::Entry> ConstantLedger::find(std::string_view key) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

double ConstantLedger::value_or(std::string_view key, double fallback) const {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second.value;
  return fallback;
}

double ConstantLedger::resolve(std::string_view key, double fallback, std::string_view note) {
  if (auto it = entries_.find(key); it != entries_.end()) return it->second.value;
  entries_.emplace(std::string(key), Entry{fallback, Provenance::Default, std::string(note)});
  return fallback;
}

}  // namespace hyperpam
