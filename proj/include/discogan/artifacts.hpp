#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "discogan/metrics.hpp"
#include "discogan/trainer.hpp"

namespace discogan {

// history.csv: iteration, l_gan_b, l_const_a, l_gan_a, l_const_b, l_g_total,
// l_d_a, l_d_b, l_d_total. Terms a variant lacks are left blank.
void write_history_csv(std::ostream& out, const History& history);
// assignment.csv: a_mode, b_mode, mass; one row per matrix entry.
void write_assignment_csv(std::ostream& out, const AssignmentMatrix& am);
// Throws PersistenceError on malformed input or a non-dense matrix.
AssignmentMatrix read_assignment_csv(std::istream& in);
// landscape.csv: x, y, d_value; ix outer, iy inner.
void write_landscape_csv(std::ostream& out, const LandscapeGrid& grid);

// Maps data coordinates to SVG pixels:
//   px = padding + (x - min.x) / (max.x - min.x) * (width - 2 * padding)
//   py = height - padding - (y - min.y) / (max.y - min.y) * (height - 2 * padding)
struct SvgViewport {
  BoundingBox bbox;
  double width = 640.0;
  double height = 480.0;
  double padding = 40.0;

  Point2 to_pixel(Point2 p) const;
};

// ColorBrewer Set1; source mode i uses entry i % 5.
inline constexpr std::array<const char*, 5> kModePalette = {"#e41a1c", "#377eb8", "#4daf4a",
                                                            "#984ea3", "#ff7f00"};

// One circle per translated point colored by its source mode, one 'x' per
// target mode, optional grayscale landscape underneath (black = 0, white = 1).
// Axes span bounding_box(mix_b, margin). Throws ParameterError on non-finite
// points or a label/point count mismatch.
std::string render_scatter_svg(const Matrix& points, const std::vector<std::size_t>& labels,
                               const GaussianMixture& mix_b, double margin,
                               const LandscapeGrid* landscape);

// Coverage metrics and assignment matrices of both directions as JSON.
std::string coverage_json(const MetricBundle& bundle, const EvalConfig& eval);

// Throws PersistenceError when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace discogan
