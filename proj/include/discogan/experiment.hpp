#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "discogan/checkpoint.hpp"
#include "discogan/config.hpp"
#include "discogan/metrics.hpp"

namespace discogan {

inline constexpr const char* kHistoryFile = "history.csv";
inline constexpr const char* kAssignmentFile = "assignment.csv";
inline constexpr const char* kCoverageFile = "coverage.json";
inline constexpr const char* kLandscapeFile = "landscape.csv";
inline constexpr const char* kScatterFile = "scatter.svg";
inline constexpr const char* kSummaryFile = "summary.json";
inline constexpr const char* kCheckpointFile = "checkpoint.txt";

struct RunOutcome {
  bool completed = false;
  std::string error;
  std::uint64_t iterations_completed = 0;
  History history;
  // Losses and round-trip errors right after the first update.
  std::optional<LossReport> first_report;
  std::optional<double> first_roundtrip_rmse_ab;
  std::optional<double> first_roundtrip_rmse_ba;
  std::optional<MetricBundle> metrics;
  std::vector<std::string> artifacts;  // file names written into out_dir
};

// Trains, evaluates and writes every artifact into out_dir (created if
// needed). A numeric failure during training leaves history.csv and a
// summary.json marked partial; it is reported in the outcome, not thrown.
RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir);

// Translated scatter points of every source mode, labelled by mode.
struct LabeledPoints {
  Matrix points;
  std::vector<std::size_t> labels;
};
LabeledPoints scatter_points(const ModelSet& models, const GaussianMixture& mix_a,
                             std::size_t per_mode, std::uint64_t seed);

// Rebuilds landscape.csv and scatter.svg from a saved run.
void render_from_checkpoint(const Checkpoint& ckpt, const std::string& out_dir);

struct CompareRow {
  VariantKind variant = VariantKind::kDiscoGan;
  std::uint64_t seed = 0;
  RunOutcome outcome;
};

struct CompareSummary {
  VariantKind variant = VariantKind::kDiscoGan;
  std::size_t runs = 0;
  double median_covered_modes = 0.0;
  double median_collapse_count = 0.0;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  std::vector<CompareSummary> summaries;  // standard, recon, disco
};

// Every variant on every seed, each in out_dir/<variant>/seed_<n>. Writes
// out_dir/compare.csv with one line per run.
CompareResult run_compare(const ExperimentConfig& base, const std::vector<std::uint64_t>& seeds,
                          const std::string& out_dir);

std::string format_compare_table(const CompareResult& result);

double median(std::vector<double> values);

}  // namespace discogan
