#pragma once

// SVG peel diagrams for planar data: one group with every data point and one
// group per peel, outermost first.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "morderstats/depth/peel_result.hpp"
#include "morderstats/error.hpp"

namespace morderstats::io {

struct SvgStyle {
  double size = 640.0;     // canvas width and height in px
  double margin = 20.0;
  double point_radius = 2.5;
};

namespace detail {

/// Vertices of a planar region in counter-clockwise order.
inline std::vector<Vector> ccw_order(std::vector<Vector> vertices) {
  if (vertices.size() < 3) return vertices;
  Vector c = Vector::Zero(2);
  for (const Vector& v : vertices) c += v;
  c /= static_cast<double>(vertices.size());
  std::sort(vertices.begin(), vertices.end(), [&](const Vector& a, const Vector& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  return vertices;
}

}  // namespace detail

/// Writes a standalone SVG document. Throws DimensionError unless p == 2.
inline void write_svg(std::ostream& out, const PointSet& points, const PeelResult& result, const SvgStyle& style = {}) {
  if (dimension(points) != 2) throw DimensionError("SVG output needs two-dimensional data");
  const Eigen::RowVector2d lo = points.colwise().minCoeff();
  const Eigen::RowVector2d hi = points.colwise().maxCoeff();
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-12});
  const double scale = (style.size - 2.0 * style.margin) / span;
  auto sx = [&](double x) { return style.margin + (x - lo[0]) * scale; };
  auto sy = [&](double y) { return style.size - style.margin - (y - lo[1]) * scale; };  // y up

  std::ostringstream body;
  body << std::setprecision(6);
  body << "<g id=\"points\" fill=\"#333\">\n";
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    body << "  <circle cx=\"" << sx(points(i, 0)) << "\" cy=\"" << sy(points(i, 1)) << "\" r=\"" << style.point_radius
         << "\"/>\n";
  }
  body << "</g>\n";
  for (std::size_t j = 0; j < result.peels.size(); ++j) {
    const Peel& peel = result.peels[j];
    const bool chosen = j == result.chosen_peel;
    body << "<g class=\"peel" << (chosen ? " chosen" : "") << "\" data-k=\"" << peel.k << "\" data-alpha-hat=\""
         << peel.alpha_hat << "\" fill=\"none\" stroke=\"" << (chosen ? "#c0392b" : "#2c7fb8") << "\" stroke-width=\""
         << (chosen ? 2.0 : 1.0) << "\">\n";
    const std::vector<Vector> ring = detail::ccw_order(peel.region.vertices);
    if (ring.size() == 1) {
      body << "  <circle cx=\"" << sx(ring[0][0]) << "\" cy=\"" << sy(ring[0][1]) << "\" r=\"" << 2.0 * style.point_radius
           << "\"/>\n";
    } else if (!ring.empty()) {
      body << (ring.size() == 2 ? "  <polyline points=\"" : "  <polygon points=\"");
      for (std::size_t v = 0; v < ring.size(); ++v) body << (v ? " " : "") << sx(ring[v][0]) << ',' << sy(ring[v][1]);
      body << "\"/>\n";
    }
    body << "</g>\n";
  }

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.size << "\" height=\"" << style.size
      << "\" viewBox=\"0 0 " << style.size << ' ' << style.size << "\">\n"
      << "<title>" << to_string(result.algorithm) << " peeling, alpha_hat=" << result.alpha_hat << "</title>\n"
      << body.str() << "</svg>\n";
}

}  // namespace morderstats::io
