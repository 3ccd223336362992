#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hyperpam/feynman_kac.hpp"

namespace hyperpam {

/// One JSON object (no trailing newline) echoing the full configuration and
/// the estimate: mean, stderr, log_mean, bias, n_paths, seed, wall_seconds.
std::string moment_record_json(std::string_view estimator, const FkConfig& cfg, const MomentEstimate& est);

/// Appends moment_record_json() and a newline.
void write_moment_jsonl(std::ostream& os, std::string_view estimator, const FkConfig& cfg,
                        const MomentEstimate& est);

/// CSV `t,ratio,stderr,log_ratio,log_ratio_stderr,p,q`.
void write_intermittency_csv(std::ostream& os, const IntermittencySeries& series);

}  // namespace hyperpam
