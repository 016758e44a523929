#include "discogan/metrics.hpp"

#include <cmath>
#include <set>

#include "discogan/errors.hpp"

namespace discogan {

Point2 LandscapeGrid::point(std::size_t ix, std::size_t iy) const {
  const double fx = static_cast<double>(ix) / static_cast<double>(nx - 1);
  const double fy = static_cast<double>(iy) / static_cast<double>(ny - 1);
  // Endpoints are assigned directly so the corners are exact.
  const double x = ix == nx - 1 ? bbox.max.x : bbox.min.x + fx * (bbox.max.x - bbox.min.x);
  const double y = iy == ny - 1 ? bbox.max.y : bbox.min.y + fy * (bbox.max.y - bbox.min.y);
  return {x, y};
}

AssignmentMatrix assignment_matrix(const Network& g_ab, const GaussianMixture& mix_a,
                                   const GaussianMixture& mix_b, std::size_t samples_per_mode,
                                   Rng& rng) {
  if (samples_per_mode < 1) throw ParameterError("assignment_matrix: samples_per_mode < 1");
  AssignmentMatrix am{Matrix(mix_a.size(), mix_b.size())};
  const double unit = 1.0 / static_cast<double>(samples_per_mode);
  for (std::size_t i = 0; i < mix_a.size(); ++i) {
    const Matrix out = translate(g_ab, sample_mode(mix_a, i, samples_per_mode, rng));
    std::vector<std::size_t> counts(mix_b.size(), 0);
    for (std::size_t r = 0; r < out.rows(); ++r) {
      counts[nearest_mode(mix_b, {out(r, 0), out(r, 1)})] += 1;
    }
    for (std::size_t j = 0; j < counts.size(); ++j) {
      am.mass(i, j) = static_cast<double>(counts[j]) * unit;
    }
  }
  return am;
}

CoverageReport coverage(const AssignmentMatrix& am, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("coverage: tau must lie in (0, 1)");
  CoverageReport rep;
  rep.tau = tau;
  const std::size_t rows = am.source_modes();
  const std::size_t cols = am.target_modes();
  const Matrix totals = column_sums(am.mass);
  for (std::size_t j = 0; j < cols; ++j) {
    if (totals(0, j) / static_cast<double>(rows) >= tau) rep.covered_modes += 1;
  }
  rep.coverage_fraction = static_cast<double>(rep.covered_modes) / static_cast<double>(cols);
  std::set<std::size_t> winners;
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < cols; ++j) {
      if (am.mass(i, j) > am.mass(i, best)) best = j;
    }
    winners.insert(best);
  }
  rep.collapse_count = rows - winners.size();
  return rep;
}

double roundtrip_rmse(const Network& g_ab, const Network& g_ba, const GaussianMixture& mix_a,
                      std::size_t n, Rng& rng) {
  if (n < 1) throw ParameterError("roundtrip_rmse: n < 1");
  const Matrix x = sample(mix_a, n, rng).points;
  const Matrix back = roundtrip(g_ab, g_ba, x).reconstructed;
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double dx = back(r, 0) - x(r, 0);
    const double dy = back(r, 1) - x(r, 1);
    sum += dx * dx + dy * dy;
  }
  return std::sqrt(sum / static_cast<double>(n));
}

LandscapeGrid landscape(const Network& disc, const BoundingBox& bbox, std::size_t nx,
                        std::size_t ny) {
  if (nx < 2 || ny < 2) throw ParameterError("landscape: need at least 2 points per axis");
  LandscapeGrid grid{bbox, nx, ny, Matrix(nx, ny)};
  Matrix points(nx * ny, 2);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const Point2 p = grid.point(ix, iy);
      points(ix * ny + iy, 0) = p.x;
      points(ix * ny + iy, 1) = p.y;
    }
  }
  const Matrix d = mlp_predict(disc.spec, disc.params, points);
  for (std::size_t k = 0; k < nx * ny; ++k) grid.values.values()[k] = d(k, 0);
  return grid;
}

MetricBundle evaluate_run(const ModelSet& set, const GaussianMixture& mix_a,
                          const GaussianMixture& mix_b, const EvalConfig& config) {
  Rng rng(config.seed);
  MetricBundle bundle;
  auto& fwd = bundle.a_to_b;
  fwd.assignment = assignment_matrix(set.g_ab, mix_a, mix_b, config.samples_per_mode, rng);
  fwd.coverage = coverage(fwd.assignment, config.tau);
  fwd.coverage.samples_per_mode = config.samples_per_mode;
  fwd.landscape = landscape(set.d_b, bounding_box(mix_b, config.landscape_margin),
                            config.landscape_nx, config.landscape_ny);
  if (set.g_ba) {
    fwd.roundtrip_rmse =
        roundtrip_rmse(set.g_ab, *set.g_ba, mix_a, config.roundtrip_samples, rng);
    bundle.b_to_a_assignment =
        assignment_matrix(*set.g_ba, mix_b, mix_a, config.samples_per_mode, rng);
    bundle.b_to_a_coverage = coverage(*bundle.b_to_a_assignment, config.tau);
    bundle.b_to_a_coverage->samples_per_mode = config.samples_per_mode;
    bundle.b_to_a_roundtrip_rmse =
        roundtrip_rmse(*set.g_ba, set.g_ab, mix_b, config.roundtrip_samples, rng);
  }
  if (set.d_a) {
    bundle.b_to_a_landscape = landscape(*set.d_a, bounding_box(mix_a, config.landscape_margin),
                                        config.landscape_nx, config.landscape_ny);
  }
  return bundle;
}

}  // namespace discogan
