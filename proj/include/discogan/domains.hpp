#pragma once

#include <cstddef>
#include <vector>

#include "discogan/matrix.hpp"
#include "discogan/rng.hpp"

namespace discogan {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct GaussianMode {
  Point2 mean;
  double stddev = 0.1;

  friend bool operator==(const GaussianMode&, const GaussianMode&) = default;
};

// Uniformly weighted mixture of isotropic 2-D Gaussians.
class GaussianMixture {
 public:
  // Throws ParameterError on empty, non-positive stddev, non-finite or
  // duplicate means.
  explicit GaussianMixture(std::vector<GaussianMode> modes);

  const std::vector<GaussianMode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  const GaussianMode& operator[](std::size_t i) const { return modes_[i]; }
  double max_stddev() const;

  friend bool operator==(const GaussianMixture&, const GaussianMixture&) = default;

 private:
  std::vector<GaussianMode> modes_;
};

struct LabeledBatch {
  Matrix points;  // n x 2
  std::vector<std::size_t> labels;
};

struct BoundingBox {
  Point2 min;
  Point2 max;

  bool contains(const Point2& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// n_modes means equally spaced on an arc, endpoints inclusive.
GaussianMixture make_arc_domain(std::size_t n_modes, Point2 center, double radius,
                                double angle_start, double angle_end, double stddev);
// Mode k at start + k * step.
GaussianMixture make_row_domain(std::size_t n_modes, Point2 start, Point2 step, double stddev);

// Each row picks a mode uniformly, then adds stddev * (z1, z2).
LabeledBatch sample(const GaussianMixture& mix, std::size_t n, Rng& rng);

// Same as sample(), also returning the n x 2 standard-normal draws used.
struct SampleTrace {
  LabeledBatch batch;
  Matrix normals;
};
SampleTrace sample_traced(const GaussianMixture& mix, std::size_t n, Rng& rng);

// n points from a single mode.
Matrix sample_mode(const GaussianMixture& mix, std::size_t mode, std::size_t n, Rng& rng);

// Euclidean nearest mean; ties go to the lowest index.
std::size_t nearest_mode(const GaussianMixture& mix, Point2 point);

BoundingBox bounding_box(const GaussianMixture& mix, double margin_stddevs);

}  // namespace discogan
