#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperpam/cli/config.hpp"

namespace hyperpam::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Property checks over every module at desk scale (well under a minute).
/// Model-dependent checks use the config's (n, K, alpha, beta, p); checks that
/// need the closed-form n = 3 kernel run at n = 3 with the config's K.
std::vector<CheckResult> run_validation(const RunConfig& cfg, std::ostream* progress = nullptr);

}  // namespace hyperpam::cli
