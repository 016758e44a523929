#include "discogan/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "discogan/errors.hpp"

namespace discogan {

GaussianMixture::GaussianMixture(std::vector<GaussianMode> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw ParameterError("GaussianMixture: need at least one mode");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& m = modes_[i];
    if (!(m.stddev > 0.0) || !std::isfinite(m.stddev)) {
      throw ParameterError("GaussianMixture: mode " + std::to_string(i) +
                           " stddev must be positive");
    }
    if (!std::isfinite(m.mean.x) || !std::isfinite(m.mean.y)) {
      throw ParameterError("GaussianMixture: mode " + std::to_string(i) + " mean not finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (modes_[j].mean == m.mean) {
        throw ParameterError("GaussianMixture: modes " + std::to_string(j) + " and " +
                             std::to_string(i) + " share a mean");
      }
    }
  }
}

double GaussianMixture::max_stddev() const {
  double s = 0.0;
  for (const auto& m : modes_) s = std::max(s, m.stddev);
  return s;
}

GaussianMixture make_arc_domain(std::size_t n_modes, Point2 center, double radius,
                                double angle_start, double angle_end, double stddev) {
  if (n_modes < 2) throw ParameterError("make_arc_domain: need at least 2 modes");
  if (!(radius > 0.0)) throw ParameterError("make_arc_domain: radius must be positive");
  if (!(stddev > 0.0)) throw ParameterError("make_arc_domain: stddev must be positive");
  if (angle_start == angle_end) throw ParameterError("make_arc_domain: empty angle range");
  std::vector<GaussianMode> modes;
  const double span = angle_end - angle_start;
  for (std::size_t k = 0; k < n_modes; ++k) {
    const double theta =
        angle_start + span * static_cast<double>(k) / static_cast<double>(n_modes - 1);
    modes.push_back(
        {{center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)}, stddev});
  }
  return GaussianMixture(std::move(modes));
}

GaussianMixture make_row_domain(std::size_t n_modes, Point2 start, Point2 step, double stddev) {
  if (n_modes < 1) throw ParameterError("make_row_domain: need at least 1 mode");
  if (!(stddev > 0.0)) throw ParameterError("make_row_domain: stddev must be positive");
  if (n_modes > 1 && step.x == 0.0 && step.y == 0.0) {
    throw ParameterError("make_row_domain: zero step gives duplicate means");
  }
  std::vector<GaussianMode> modes;
  for (std::size_t k = 0; k < n_modes; ++k) {
    const double kd = static_cast<double>(k);
    modes.push_back({{start.x + kd * step.x, start.y + kd * step.y}, stddev});
  }
  return GaussianMixture(std::move(modes));
}

SampleTrace sample_traced(const GaussianMixture& mix, std::size_t n, Rng& rng) {
  SampleTrace trace{{Matrix(n, 2), std::vector<std::size_t>(n)}, Matrix(n, 2)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = static_cast<std::size_t>(rng.below(mix.size()));
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    const auto& mode = mix[label];
    trace.batch.labels[i] = label;
    trace.batch.points(i, 0) = mode.mean.x + mode.stddev * z1;
    trace.batch.points(i, 1) = mode.mean.y + mode.stddev * z2;
    trace.normals(i, 0) = z1;
    trace.normals(i, 1) = z2;
  }
  return trace;
}

LabeledBatch sample(const GaussianMixture& mix, std::size_t n, Rng& rng) {
  return sample_traced(mix, n, rng).batch;
}

Matrix sample_mode(const GaussianMixture& mix, std::size_t mode, std::size_t n, Rng& rng) {
  if (mode >= mix.size()) throw ParameterError("sample_mode: mode index out of range");
  const auto& m = mix[mode];
  Matrix out(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, 0) = m.mean.x + m.stddev * rng.normal();
    out(i, 1) = m.mean.y + m.stddev * rng.normal();
  }
  return out;
}

std::size_t nearest_mode(const GaussianMixture& mix, Point2 point) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < mix.size(); ++k) {
    const double dx = point.x - mix[k].mean.x;
    const double dy = point.y - mix[k].mean.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = k;
    }
  }
  return best;
}

BoundingBox bounding_box(const GaussianMixture& mix, double margin_stddevs) {
  if (margin_stddevs < 0.0) throw ParameterError("bounding_box: negative margin");
  BoundingBox box{mix[0].mean, mix[0].mean};
  for (const auto& m : mix.modes()) {
    box.min.x = std::min(box.min.x, m.mean.x);
    box.min.y = std::min(box.min.y, m.mean.y);
    box.max.x = std::max(box.max.x, m.mean.x);
    box.max.y = std::max(box.max.y, m.mean.y);
  }
  const double pad = margin_stddevs * mix.max_stddev();
  box.min.x -= pad;
  box.min.y -= pad;
  box.max.x += pad;
  box.max.y += pad;
  return box;
}

}  // namespace discogan
