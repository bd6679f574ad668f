#pragma once

// JSON documents for peeling results. Requires nlohmann/json (single header
// `json.hpp` on the include path).

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "morderstats/depth/peel_result.hpp"
#include "morderstats/error.hpp"
#include "morderstats/geometry/region.hpp"

namespace morderstats::io {

using Json = nlohmann::ordered_json;

inline Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

inline Json vertices_json(const ConvexRegion& region) {
  Json out = Json::array();
  for (const Vector& v : region.vertices) out.push_back(vector_json(v));
  return out;
}

inline Json facets_json(const ConvexRegion& region) {
  Json out = Json::array();
  for (const Hyperplane& f : region.facets) out.push_back({{"normal", vector_json(f.normal)}, {"offset", f.offset}});
  return out;
}

/// Chosen region plus the full peel history. Doubles are written in
/// shortest round-trip form, so coordinates survive a reload exactly.
inline Json peel_result_json(const PeelResult& result, double alpha) {
  Json doc;
  doc["algorithm"] = std::string(to_string(result.algorithm));
  doc["alpha"] = alpha;
  doc["alpha_hat"] = result.alpha_hat;
  doc["n"] = result.n;
  doc["dimension"] = result.chosen.dim;
  doc["status"] = std::string(to_string(result.status));
  doc["chosen_peel"] = result.chosen_peel;
  doc["vertices"] = vertices_json(result.chosen);
  doc["facets"] = facets_json(result.chosen);
  Json peels = Json::array();
  for (const Peel& p : result.peels) {
    peels.push_back({{"k", p.k},
                     {"points_inside", p.points_inside},
                     {"alpha_hat", p.alpha_hat},
                     {"affine_rank", p.region.affine_rank},
                     {"volume", volume(p.region)},
                     {"vertices", vertices_json(p.region)},
                     {"facets", facets_json(p.region)}});
  }
  doc["peels"] = std::move(peels);
  doc["skipped_k"] = result.skipped_k;
  return doc;
}

/// Rebuilds the vertices and facets of a region document (or of one entry
/// of its "peels" array).
inline ConvexRegion region_from_json(const Json& doc) {
  ConvexRegion region;
  try {
    for (const Json& v : doc.at("vertices")) {
      const auto coords = v.get<std::vector<double>>();
      region.vertices.push_back(Eigen::Map<const Vector>(coords.data(), static_cast<Eigen::Index>(coords.size())));
    }
    for (const Json& f : doc.at("facets")) {
      const auto normal = f.at("normal").get<std::vector<double>>();
      region.facets.push_back(Hyperplane{Eigen::Map<const Vector>(normal.data(), static_cast<Eigen::Index>(normal.size())),
                                         f.at("offset").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed region document: ") + e.what());
  }
  if (!region.vertices.empty()) region.dim = static_cast<int>(region.vertices.front().size());
  else if (!region.facets.empty()) region.dim = static_cast<int>(region.facets.front().normal.size());
  if (doc.contains("dimension")) region.dim = doc["dimension"].get<int>();
  for (const Vector& v : region.vertices) {
    if (v.size() != region.dim) throw DimensionError("region document: vertex dimension mismatch");
  }
  for (const Hyperplane& f : region.facets) {
    if (f.normal.size() != region.dim) throw DimensionError("region document: facet dimension mismatch");
  }
  if (doc.contains("affine_rank")) {
    region.affine_rank = doc["affine_rank"].get<int>();
  } else if (!region.vertices.empty()) {
    PointSet pts(static_cast<Eigen::Index>(region.vertices.size()), region.dim);
    for (std::size_t i = 0; i < region.vertices.size(); ++i) pts.row(static_cast<Eigen::Index>(i)) = region.vertices[i].transpose();
    const Eigen::RowVectorXd c = pts.colwise().mean();
    region.affine_rank = static_cast<int>((pts.rowwise() - c).colPivHouseholderQr().rank());
  }
  return region;
}

/// Vertex coordinates as a point set, one vertex per row.
inline PointSet vertex_matrix(const ConvexRegion& region) {
  PointSet pts(static_cast<Eigen::Index>(region.vertices.size()), region.dim);
  for (std::size_t i = 0; i < region.vertices.size(); ++i) pts.row(static_cast<Eigen::Index>(i)) = region.vertices[i].transpose();
  return pts;
}

}  // namespace morderstats::io
