#pragma once

#include <array>
#include <string>
#include <vector>

#include <loglin/hull.hpp>
#include <loglin/invariant_set.hpp>
#include <loglin/se23.hpp>

namespace loglin::synthesis {

struct GroupSample {
  Vec9 zeta;
  se23::GroupState eta;
  /// (p, v, log R) of eta; the rotation coordinates coincide with zeta_R.
  Vec9 group_coordinates() const;
};

struct GroupSetSummary {
  double max_position_error = 0.0;
  double max_velocity_error = 0.0;
  double max_rotation_angle = 0.0;
  Vec3 max_abs_position = Vec3::Zero();
  Vec3 max_abs_velocity = Vec3::Zero();
};

struct GroupSet {
  GroupSetSummary summary;
  std::vector<GroupSample> samples;
};

/// Maps the boundary of a 9-dimensional algebra ellipsoid into the group.
///
/// Boundary points are P^{-1/2} u for u on the unit 8-sphere, generated from a
/// Halton sequence through Box–Muller (deterministic), plus the 18 points that
/// attain each coordinate's extreme. Throws DomainError when the ellipsoid
/// reaches |zeta_R| >= pi.
GroupSet ellipsoid_to_group(const Ellipsoid& E, int n_samples);

/// Max |zeta_R| over the ellipsoid.
double max_rotation_extent(const Ellipsoid& E);

/// Deterministic points on the unit sphere in R^dim (dim <= 12).
std::vector<Vector> sphere_points(int dim, int count);

struct Projection2d {
  std::string name;
  int x;
  int y;
};

struct Projection3d {
  std::string name;
  int x;
  int y;
  int z;
};

/// Coordinate pairs/triples exported for figures.
const std::vector<Projection2d>& standard_projections_2d();
const std::vector<Projection3d>& standard_projections_3d();

std::vector<Eigen::Vector2d> project_hull_2d(const std::vector<Vec9>& coords, const Projection2d& proj);
geometry::Hull3d project_hull_3d(const std::vector<Vec9>& coords, const Projection3d& proj);

}  // namespace loglin::synthesis
