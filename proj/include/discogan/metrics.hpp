#pragma once

#include <cstdint>
#include <optional>

#include "discogan/domains.hpp"
#include "discogan/models.hpp"

namespace discogan {

// Row i, column j: fraction of samples from source mode i whose translation
// lands nearest to target mode j.
struct AssignmentMatrix {
  Matrix mass;

  std::size_t source_modes() const { return mass.rows(); }
  std::size_t target_modes() const { return mass.cols(); }
};

struct CoverageReport {
  std::size_t covered_modes = 0;
  double coverage_fraction = 0.0;
  std::size_t collapse_count = 0;
  double tau = 0.0;
  std::size_t samples_per_mode = 0;
};

// Values(ix, iy) is D at (min.x + ix * dx, min.y + iy * dy); both box
// corners are grid points.
struct LandscapeGrid {
  BoundingBox bbox;
  std::size_t nx = 0;
  std::size_t ny = 0;
  Matrix values;

  Point2 point(std::size_t ix, std::size_t iy) const;
};

AssignmentMatrix assignment_matrix(const Network& g_ab, const GaussianMixture& mix_a,
                                   const GaussianMixture& mix_b, std::size_t samples_per_mode,
                                   Rng& rng);

// covered: columns whose mean incoming mass is >= tau.
// collapse_count: rows minus distinct per-row argmax columns (lowest index
// wins ties).
CoverageReport coverage(const AssignmentMatrix& am, double tau);

double roundtrip_rmse(const Network& g_ab, const Network& g_ba, const GaussianMixture& mix_a,
                      std::size_t n, Rng& rng);

LandscapeGrid landscape(const Network& disc, const BoundingBox& bbox, std::size_t nx,
                        std::size_t ny);

struct EvalConfig {
  double tau = 0.05;
  std::size_t samples_per_mode = 1000;
  std::size_t roundtrip_samples = 1000;
  std::size_t landscape_nx = 200;
  std::size_t landscape_ny = 200;
  double landscape_margin = 5.0;
  std::uint64_t seed = 12345;

  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

struct DirectionMetrics {
  AssignmentMatrix assignment;
  CoverageReport coverage;
  std::optional<double> roundtrip_rmse;  // source -> target -> source
  LandscapeGrid landscape;               // discriminator of the target domain
};

// b_to_a is filled only when the set has G_BA; its landscape only with D_A.
struct MetricBundle {
  DirectionMetrics a_to_b;
  std::optional<AssignmentMatrix> b_to_a_assignment;
  std::optional<CoverageReport> b_to_a_coverage;
  std::optional<double> b_to_a_roundtrip_rmse;
  std::optional<LandscapeGrid> b_to_a_landscape;
};

MetricBundle evaluate_run(const ModelSet& set, const GaussianMixture& mix_a,
                          const GaussianMixture& mix_b, const EvalConfig& config);

}  // namespace discogan
