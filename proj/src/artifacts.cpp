#include "discogan/artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "discogan/config.hpp"
#include "discogan/errors.hpp"

namespace discogan {
namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

nlohmann::json coverage_object(const CoverageReport& cov, const AssignmentMatrix& am) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < am.mass.rows(); ++i) {
    auto r = am.mass.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"covered_modes", cov.covered_modes},
          {"target_modes", am.target_modes()},
          {"coverage_fraction", cov.coverage_fraction},
          {"collapse_count", cov.collapse_count},
          {"assignment", rows}};
}

}  // namespace

void write_history_csv(std::ostream& out, const History& history) {
  out << "iteration,l_gan_b,l_const_a,l_gan_a,l_const_b,l_g_total,l_d_a,l_d_b,l_d_total\n";
  for (const auto& r : history) {
    out << r.iteration << ',' << cell(r.l_gan_b) << ',' << cell(r.l_const_a) << ','
        << cell(r.l_gan_a) << ',' << cell(r.l_const_b) << ',' << format_double(r.l_g_total)
        << ',' << cell(r.l_d_a) << ',' << cell(r.l_d_b) << ',' << format_double(r.l_d_total)
        << '\n';
  }
}

void write_assignment_csv(std::ostream& out, const AssignmentMatrix& am) {
  out << "a_mode,b_mode,mass\n";
  for (std::size_t i = 0; i < am.mass.rows(); ++i) {
    for (std::size_t j = 0; j < am.mass.cols(); ++j) {
      out << i << ',' << j << ',' << format_double(am.mass(i, j)) << '\n';
    }
  }
}

AssignmentMatrix read_assignment_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "a_mode,b_mode,mass") {
    throw PersistenceError("assignment.csv: missing header");
  }
  struct Entry {
    std::size_t i, j;
    double mass;
  };
  std::vector<Entry> entries;
  std::size_t rows = 0, cols = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Entry e{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto r1 = std::from_chars(p, end, e.i);
    if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ',') {
      throw PersistenceError("assignment.csv: bad line '" + line + "'");
    }
    auto r2 = std::from_chars(r1.ptr + 1, end, e.j);
    if (r2.ec != std::errc() || r2.ptr == end || *r2.ptr != ',') {
      throw PersistenceError("assignment.csv: bad line '" + line + "'");
    }
    auto r3 = std::from_chars(r2.ptr + 1, end, e.mass);
    if (r3.ec != std::errc() || r3.ptr != end) {
      throw PersistenceError("assignment.csv: bad line '" + line + "'");
    }
    rows = std::max(rows, e.i + 1);
    cols = std::max(cols, e.j + 1);
    entries.push_back(e);
  }
  if (entries.size() != rows * cols) throw PersistenceError("assignment.csv: matrix not dense");
  AssignmentMatrix am{Matrix(rows, cols, std::nan(""))};
  for (const auto& e : entries) {
    if (!std::isnan(am.mass(e.i, e.j))) throw PersistenceError("assignment.csv: duplicate entry");
    am.mass(e.i, e.j) = e.mass;
  }
  return am;
}

void write_landscape_csv(std::ostream& out, const LandscapeGrid& grid) {
  out << "x,y,d_value\n";
  for (std::size_t ix = 0; ix < grid.nx; ++ix) {
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
      const Point2 p = grid.point(ix, iy);
      out << format_double(p.x) << ',' << format_double(p.y) << ','
          << format_double(grid.values(ix, iy)) << '\n';
    }
  }
}

Point2 SvgViewport::to_pixel(Point2 p) const {
  const double sx = (p.x - bbox.min.x) / (bbox.max.x - bbox.min.x);
  const double sy = (p.y - bbox.min.y) / (bbox.max.y - bbox.min.y);
  return {padding + sx * (width - 2.0 * padding), height - padding - sy * (height - 2.0 * padding)};
}

std::string render_scatter_svg(const Matrix& points, const std::vector<std::size_t>& labels,
                               const GaussianMixture& mix_b, double margin,
                               const LandscapeGrid* landscape) {
  if (points.rows() > 0 && points.cols() != 2) {
    throw ParameterError("render_scatter_svg: points must have 2 columns");
  }
  if (labels.size() != points.rows()) {
    throw ParameterError("render_scatter_svg: one label per point required");
  }
  if (!points.all_finite()) throw ParameterError("render_scatter_svg: non-finite point");

  SvgViewport vp{bounding_box(mix_b, margin)};
  const auto f = [](double v) { return format_double(v); };
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(vp.width) << "\" height=\""
      << f(vp.height) << "\" viewBox=\"0 0 " << f(vp.width) << ' ' << f(vp.height) << "\">\n";
  out << "<defs><clipPath id=\"plot\"><rect x=\"" << f(vp.padding) << "\" y=\"" << f(vp.padding)
      << "\" width=\"" << f(vp.width - 2 * vp.padding) << "\" height=\""
      << f(vp.height - 2 * vp.padding) << "\"/></clipPath></defs>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (landscape != nullptr && landscape->nx > 1 && landscape->ny > 1) {
    // Each grid value fills the cell centred on its grid point.
    const LandscapeGrid& g = *landscape;
    const double dx = (g.bbox.max.x - g.bbox.min.x) / static_cast<double>(g.nx - 1);
    const double dy = (g.bbox.max.y - g.bbox.min.y) / static_cast<double>(g.ny - 1);
    out << "<g id=\"landscape\" clip-path=\"url(#plot)\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      for (std::size_t iy = 0; iy < g.ny; ++iy) {
        const Point2 c = g.point(ix, iy);
        const Point2 lo = vp.to_pixel({c.x - dx / 2, c.y + dy / 2});
        const Point2 hi = vp.to_pixel({c.x + dx / 2, c.y - dy / 2});
        const double v = std::clamp(g.values(ix, iy), 0.0, 1.0);
        const int gray = static_cast<int>(std::lround(v * 255.0));
        out << "<rect x=\"" << f(lo.x) << "\" y=\"" << f(lo.y) << "\" width=\"" << f(hi.x - lo.x)
            << "\" height=\"" << f(hi.y - lo.y) << "\" fill=\"rgb(" << gray << ',' << gray << ','
            << gray << ")\"/>\n";
      }
    }
    out << "</g>\n";
  }

  out << "<rect x=\"" << f(vp.padding) << "\" y=\"" << f(vp.padding) << "\" width=\""
      << f(vp.width - 2 * vp.padding) << "\" height=\"" << f(vp.height - 2 * vp.padding)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  out << "<g id=\"points\" clip-path=\"url(#plot)\" fill-opacity=\"0.6\">\n";
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const Point2 p = vp.to_pixel({points(i, 0), points(i, 1)});
    out << "<circle cx=\"" << f(p.x) << "\" cy=\"" << f(p.y) << "\" r=\"2\" fill=\""
        << kModePalette[labels[i] % kModePalette.size()] << "\"/>\n";
  }
  out << "</g>\n";

  constexpr double kArm = 5.0;
  out << "<g id=\"modes\" stroke=\"black\" stroke-width=\"2\">\n";
  for (const auto& mode : mix_b.modes()) {
    const Point2 p = vp.to_pixel(mode.mean);
    out << "<path d=\"M " << f(p.x - kArm) << ' ' << f(p.y - kArm) << " L " << f(p.x + kArm)
        << ' ' << f(p.y + kArm) << " M " << f(p.x - kArm) << ' ' << f(p.y + kArm) << " L "
        << f(p.x + kArm) << ' ' << f(p.y - kArm) << "\"/>\n";
  }
  out << "</g>\n";
  out << "</svg>\n";
  return out.str();
}

std::string coverage_json(const MetricBundle& bundle, const EvalConfig& eval) {
  nlohmann::json j;
  j["tau"] = eval.tau;
  j["samples_per_mode"] = eval.samples_per_mode;
  j["a_to_b"] = coverage_object(bundle.a_to_b.coverage, bundle.a_to_b.assignment);
  if (bundle.b_to_a_coverage && bundle.b_to_a_assignment) {
    j["b_to_a"] = coverage_object(*bundle.b_to_a_coverage, *bundle.b_to_a_assignment);
  } else {
    j["b_to_a"] = nullptr;
  }
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PersistenceError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw PersistenceError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PersistenceError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace discogan
