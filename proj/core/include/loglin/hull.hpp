#pragma once

#include <array>
#include <vector>

#include <Eigen/Geometry>

namespace loglin::geometry {

/// Convex hull of planar points, counter-clockwise, no repeated first vertex.
std::vector<Eigen::Vector2d> convex_hull_2d(std::vector<Eigen::Vector2d> points);

struct Hull3d {
  std::vector<Eigen::Vector3d> vertices;
  /// Outward-oriented triangles indexing `vertices`.
  std::vector<std::array<int, 3>> facets;
};

/// Incremental convex hull. Degenerate (coplanar or smaller) input yields an
/// empty facet list.
Hull3d convex_hull_3d(const std::vector<Eigen::Vector3d>& points);

}  // namespace loglin::geometry
