#pragma once

#include <string>

#include "discogan/metrics.hpp"
#include "discogan/trainer.hpp"

namespace discogan {

// Everything one experiment needs: training, evaluation and plotting knobs.
struct ExperimentConfig {
  TrainConfig train;
  EvalConfig eval;
  std::size_t scatter_samples_per_mode = 100;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Parses `key = value` lines. '#' starts a comment; blank lines are skipped.
// Absent keys keep their defaults. Unknown or repeated keys, malformed
// values and out-of-range values throw ConfigError naming the key and line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Every key, one per line, doubles at 17 significant digits.
std::string render_config(const ExperimentConfig& config);

// Throws ConfigError.
void validate(const ExperimentConfig& config);

// 17 significant digits, enough to parse back to exactly `v`.
std::string format_double(double v);

}  // namespace discogan
