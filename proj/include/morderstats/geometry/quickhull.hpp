#pragma once

// Dimension-generic quickhull producing a simplicial facet complex.
//
// Points within `eps` of a facet are never treated as outside it, so
// coplanar and duplicate points are dropped instead of creating slivers.
// Simplicial facets that share a plane are merged afterwards (see
// detail::merge_faces).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "morderstats/error.hpp"
#include "morderstats/geometry/hyperplane.hpp"
#include "morderstats/linalg.hpp"

namespace morderstats::detail {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Scale-aware distance tolerance used by the hull engine.
inline double hull_eps(const PointSet& points, const Tolerance& tol) {
  const double scale = points.size() == 0 ? 0.0 : points.cwiseAbs().maxCoeff();
  return tol.eps_abs + tol.eps_rel * scale;
}

/// Orthonormal frame of the affine hull of a point subset, built greedily:
/// each step adds the point farthest from the current affine span.
struct AffineFrame {
  Vector origin;
  Matrix basis;  // p × rank, orthonormal columns
  std::vector<std::size_t> chosen;  // rank + 1 affinely independent point ids
  int rank = -1;
};

inline AffineFrame affine_frame(const PointSet& points, const std::vector<std::size_t>& ids, double eps,
                                int max_rank) {
  AffineFrame frame;
  const Eigen::Index p = points.cols();
  frame.basis.resize(p, 0);
  if (ids.empty()) return frame;

  std::size_t first = ids.front();
  for (std::size_t id : ids) {
    if (points(static_cast<Eigen::Index>(id), 0) < points(static_cast<Eigen::Index>(first), 0)) first = id;
  }
  frame.origin = point(points, first);
  frame.chosen.push_back(first);
  frame.rank = 0;

  while (frame.rank < max_rank) {
    double best = eps;
    std::size_t best_id = npos;
    Vector best_residual;
    for (std::size_t id : ids) {
      Vector r = point(points, id) - frame.origin;
      if (frame.rank > 0) {
        r -= frame.basis * (frame.basis.transpose() * r);
        r -= frame.basis * (frame.basis.transpose() * r);
      }
      const double d = r.norm();
      if (d > best) {
        best = d;
        best_id = id;
        best_residual = std::move(r);
      }
    }
    if (best_id == npos) break;
    frame.basis.conservativeResize(p, frame.rank + 1);
    frame.basis.col(frame.rank) = best_residual / best;
    frame.chosen.push_back(best_id);
    ++frame.rank;
  }
  return frame;
}

struct SimplexFacet {
  std::vector<std::size_t> vertices;   // p point ids
  std::vector<std::size_t> neighbors;  // neighbors[i] shares every vertex except vertices[i]
  Hyperplane plane;                    // outward: interior has normal·x < offset
  std::vector<std::size_t> outside;
  std::size_t furthest = npos;
  double furthest_dist = 0.0;
  bool alive = true;
};

struct RawHull {
  int dim = 0;
  double eps = 0.0;
  Vector interior;
  std::vector<SimplexFacet> facets;  // alive facets only, neighbor ids remapped
};

class QuickhullBuilder {
 public:
  QuickhullBuilder(const PointSet& points, std::vector<std::size_t> ids, double eps)
      : points_(points), ids_(std::move(ids)), eps_(eps), dim_(static_cast<int>(points.cols())) {}

  RawHull build() {
    const AffineFrame frame = affine_frame(points_, ids_, eps_, dim_);
    if (frame.rank < dim_) throw DegenerateHull(frame.rank, dim_);

    interior_ = Vector::Zero(dim_);
    for (std::size_t id : frame.chosen) interior_ += point(points_, id);
    interior_ /= static_cast<double>(frame.chosen.size());

    init_simplex(frame.chosen);
    std::vector<char> in_simplex(points_.rows(), 0);
    for (std::size_t id : frame.chosen) in_simplex[id] = 1;
    std::vector<std::size_t> all_new(facets_.size());
    std::iota(all_new.begin(), all_new.end(), std::size_t{0});
    std::vector<std::size_t> pending;
    for (std::size_t id : ids_) {
      if (!in_simplex[id]) pending.push_back(id);
    }
    assign_outside(pending, all_new);

    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (facets_[f].alive && !facets_[f].outside.empty()) add_point(f);
    }
    return finish();
  }

 private:
  double distance(const Hyperplane& h, std::size_t id) const {
    return h.normal.dot(points_.row(static_cast<Eigen::Index>(id)).transpose()) - h.offset;
  }

  Hyperplane oriented_plane(const std::vector<std::size_t>& verts) const {
    Matrix rows(dim_, dim_);
    for (int i = 0; i < dim_; ++i) rows.row(i) = points_.row(static_cast<Eigen::Index>(verts[i]));
    Hyperplane h;
    try {
      h = hyperplane_through(rows);
    } catch (const DegenerateSimplex&) {
      throw InternalError("quickhull produced a degenerate facet");
    }
    if (h.signed_distance(interior_) > 0.0) h = h.flipped();
    return h;
  }

  void init_simplex(const std::vector<std::size_t>& chosen) {
    const int p = dim_;
    for (int j = 0; j <= p; ++j) {
      SimplexFacet f;
      for (int m = 0; m <= p; ++m) {
        if (m == j) continue;
        f.vertices.push_back(chosen[m]);
        f.neighbors.push_back(static_cast<std::size_t>(m));
      }
      f.plane = oriented_plane(f.vertices);
      facets_.push_back(std::move(f));
    }
  }

  void assign_outside(const std::vector<std::size_t>& candidates, const std::vector<std::size_t>& targets) {
    for (std::size_t id : candidates) {
      double best = eps_;
      std::size_t best_f = npos;
      for (std::size_t f : targets) {
        const double d = distance(facets_[f].plane, id);
        if (d > best) {
          best = d;
          best_f = f;
        }
      }
      if (best_f == npos) continue;
      SimplexFacet& facet = facets_[best_f];
      facet.outside.push_back(id);
      if (facet.furthest == npos || best > facet.furthest_dist) {
        facet.furthest = id;
        facet.furthest_dist = best;
      }
    }
  }

  void add_point(std::size_t start) {
    const std::size_t eye = facets_[start].furthest;

    // 0 unknown, 1 visible, 2 hidden
    std::vector<char> status(facets_.size(), 0);
    std::vector<std::size_t> visible{start};
    std::vector<std::pair<std::size_t, std::size_t>> horizon;  // (visible facet, slot)
    status[start] = 1;
    for (std::size_t v = 0; v < visible.size(); ++v) {
      const std::size_t f = visible[v];
      for (std::size_t slot = 0; slot < facets_[f].neighbors.size(); ++slot) {
        const std::size_t g = facets_[f].neighbors[slot];
        if (status[g] == 0) {
          status[g] = distance(facets_[g].plane, eye) > eps_ ? 1 : 2;
          if (status[g] == 1) visible.push_back(g);
        }
        if (status[g] == 2) horizon.emplace_back(f, slot);
      }
    }

    std::vector<std::size_t> created;
    std::map<std::vector<std::size_t>, std::pair<std::size_t, std::size_t>> open_ridges;
    for (const auto& [f, slot] : horizon) {
      SimplexFacet nf;
      const std::size_t across = facets_[f].neighbors[slot];
      for (std::size_t i = 0; i < facets_[f].vertices.size(); ++i) {
        if (i == slot) continue;
        nf.vertices.push_back(facets_[f].vertices[i]);
        nf.neighbors.push_back(npos);
      }
      nf.vertices.push_back(eye);
      nf.neighbors.push_back(across);
      nf.plane = oriented_plane(nf.vertices);
      const std::size_t id = facets_.size();
      for (auto& n : facets_[across].neighbors) {
        if (n == f) n = id;
      }
      facets_.push_back(std::move(nf));
      created.push_back(id);

      // Ridges through the eye: pair up by the ridge's non-eye vertices.
      const std::size_t ridge_count = facets_[id].vertices.size() - 1;
      for (std::size_t r = 0; r < ridge_count; ++r) {
        std::vector<std::size_t> key;
        for (std::size_t i = 0; i < ridge_count; ++i) {
          if (i != r) key.push_back(facets_[id].vertices[i]);
        }
        std::sort(key.begin(), key.end());
        auto it = open_ridges.find(key);
        if (it == open_ridges.end()) {
          open_ridges.emplace(std::move(key), std::make_pair(id, r));
        } else {
          const auto [other, other_slot] = it->second;
          facets_[id].neighbors[r] = other;
          facets_[other].neighbors[other_slot] = id;
          open_ridges.erase(it);
        }
      }
    }
    if (!open_ridges.empty()) throw InternalError("quickhull horizon is not a closed ridge cycle");

    std::vector<std::size_t> orphans;
    for (std::size_t f : visible) {
      SimplexFacet& facet = facets_[f];
      for (std::size_t id : facet.outside) {
        if (id != eye) orphans.push_back(id);
      }
      facet.outside.clear();
      facet.outside.shrink_to_fit();
      facet.alive = false;
    }
    std::sort(orphans.begin(), orphans.end());
    assign_outside(orphans, created);
  }

  RawHull finish() {
    RawHull raw;
    raw.dim = dim_;
    raw.eps = eps_;
    raw.interior = interior_;
    std::vector<std::size_t> remap(facets_.size(), npos);
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (facets_[f].alive) {
        remap[f] = raw.facets.size();
        raw.facets.push_back(std::move(facets_[f]));
      }
    }
    for (auto& f : raw.facets) {
      for (auto& n : f.neighbors) n = remap[n];
      f.outside.clear();
    }
    return raw;
  }

  const PointSet& points_;
  std::vector<std::size_t> ids_;
  double eps_;
  int dim_;
  Vector interior_;
  std::vector<SimplexFacet> facets_;
};

inline RawHull quickhull(const PointSet& points, std::vector<std::size_t> ids, double eps) {
  return QuickhullBuilder(points, std::move(ids), eps).build();
}

inline RawHull quickhull(const PointSet& points, double eps) {
  std::vector<std::size_t> ids(points.rows());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return quickhull(points, std::move(ids), eps);
}

/// Faces of a hull after merging simplicial facets that share a plane.
struct HullFaces {
  std::vector<Hyperplane> planes;
  std::vector<std::vector<std::size_t>> face_vertices;  // sorted point ids per face
  std::vector<std::size_t> extreme;                    // sorted ids of extreme points
};

inline HullFaces merge_faces(const PointSet& points, const RawHull& raw) {
  const std::size_t nf = raw.facets.size();
  std::vector<std::size_t> parent(nf);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto coplanar = [&](const SimplexFacet& a, const SimplexFacet& b) {
    if (a.plane.normal.dot(b.plane.normal) <= 0.0) return false;
    for (std::size_t v : b.vertices) {
      if (std::abs(a.plane.signed_distance(points.row(static_cast<Eigen::Index>(v)))) > raw.eps) return false;
    }
    for (std::size_t v : a.vertices) {
      if (std::abs(b.plane.signed_distance(points.row(static_cast<Eigen::Index>(v)))) > raw.eps) return false;
    }
    return true;
  };
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t g : raw.facets[f].neighbors) {
      if (g > f && find(f) != find(g) && coplanar(raw.facets[f], raw.facets[g])) parent[find(g)] = find(f);
    }
  }

  HullFaces faces;
  std::vector<std::size_t> group_of(nf, npos);
  std::vector<Vector> normal_sum;
  for (std::size_t f = 0; f < nf; ++f) {
    const std::size_t root = find(f);
    if (group_of[root] == npos) {
      group_of[root] = faces.face_vertices.size();
      faces.face_vertices.emplace_back();
      normal_sum.push_back(Vector::Zero(raw.dim));
    }
    const std::size_t g = group_of[root];
    group_of[f] = g;
    normal_sum[g] += raw.facets[f].plane.normal;
    for (std::size_t v : raw.facets[f].vertices) faces.face_vertices[g].push_back(v);
  }
  for (std::size_t g = 0; g < faces.face_vertices.size(); ++g) {
    auto& fv = faces.face_vertices[g];
    std::sort(fv.begin(), fv.end());
    fv.erase(std::unique(fv.begin(), fv.end()), fv.end());
    Vector n = normal_sum[g].normalized();
    double offset = -std::numeric_limits<double>::infinity();
    for (std::size_t v : fv) offset = std::max(offset, n.dot(point(points, v)));
    faces.planes.push_back({std::move(n), offset});
  }

  // A hull vertex is extreme iff the normals of the faces meeting at it span R^p.
  std::map<std::size_t, std::vector<std::size_t>> faces_at;
  for (std::size_t g = 0; g < faces.face_vertices.size(); ++g) {
    for (std::size_t v : faces.face_vertices[g]) faces_at[v].push_back(g);
  }
  for (const auto& [v, gs] : faces_at) {
    if (static_cast<int>(gs.size()) < raw.dim) continue;
    Matrix normals(static_cast<Eigen::Index>(gs.size()), raw.dim);
    for (std::size_t i = 0; i < gs.size(); ++i) normals.row(static_cast<Eigen::Index>(i)) = faces.planes[gs[i]].normal.transpose();
    Eigen::JacobiSVD<Matrix> svd(normals);
    if (svd.singularValues()(raw.dim - 1) > 1e-10) faces.extreme.push_back(v);
  }
  return faces;
}

}  // namespace morderstats::detail
