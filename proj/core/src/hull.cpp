#include <loglin/hull.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace loglin::geometry {

namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

struct Face {
  std::array<int, 3> v;
  Eigen::Vector3d normal;
  double offset;
  bool alive = true;
};

}  // namespace

std::vector<Eigen::Vector2d> convex_hull_2d(std::vector<Eigen::Vector2d> points) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<Eigen::Vector2d> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

Hull3d convex_hull_3d(const std::vector<Eigen::Vector3d>& points) {
  Hull3d out;
  out.vertices = points;
  const int n = static_cast<int>(points.size());
  if (n < 4) return out;

  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = 1e-12 * std::max(scale, 1e-300);

  // Initial tetrahedron from extreme points.
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (points[i].x() < points[i0].x()) i0 = i;
  int i1 = i0;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (points[i] - points[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  int i2 = -1;
  best = eps;
  const Eigen::Vector3d dir = (points[i1] - points[i0]).normalized();
  for (int i = 0; i < n; ++i) {
    const double d = (points[i] - points[i0]).cross(dir).norm();
    if (d > best) best = d, i2 = i;
  }
  if (i1 == i0 || i2 < 0) return out;
  const Eigen::Vector3d plane_n = (points[i1] - points[i0]).cross(points[i2] - points[i0]).normalized();
  int i3 = -1;
  best = eps;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(plane_n.dot(points[i] - points[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (i3 < 0) return out;

  const Eigen::Vector3d centroid = (points[i0] + points[i1] + points[i2] + points[i3]) / 4.0;
  std::vector<Face> faces;
  auto add_face = [&](int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.normal = (points[b] - points[a]).cross(points[c] - points[a]);
    const double len = f.normal.norm();
    if (len > 0.0) f.normal /= len;
    f.offset = f.normal.dot(points[a]);
    if (f.normal.dot(centroid) - f.offset > 0.0) {
      std::swap(f.v[1], f.v[2]);
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
    faces.push_back(f);
  };
  add_face(i0, i1, i2);
  add_face(i0, i1, i3);
  add_face(i0, i2, i3);
  add_face(i1, i2, i3);

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::set<std::pair<int, int>> edges;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      if (faces[f].normal.dot(points[p]) - faces[f].offset > eps) visible.push_back(f);
    }
    if (visible.empty()) continue;
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) edges.insert({v[e], v[(e + 1) % 3]});
      faces[f].alive = false;
    }
    for (const auto& [a, b] : edges) {
      if (edges.count({b, a}) != 0) continue;
      Face f;
      f.v = {a, b, p};
      f.normal = (points[b] - points[a]).cross(points[p] - points[a]);
      const double len = f.normal.norm();
      if (len > 0.0) f.normal /= len;
      f.offset = f.normal.dot(points[a]);
      faces.push_back(f);
    }
  }
  for (const auto& f : faces)
    if (f.alive) out.facets.push_back(f.v);
  return out;
}

}  // namespace loglin::geometry
