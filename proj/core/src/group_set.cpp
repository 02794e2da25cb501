#include <loglin/group_set.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

namespace loglin::synthesis {

namespace {

constexpr std::array<int, 12> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(long index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

Vec9 GroupSample::group_coordinates() const {
  Vec9 c;
  c.segment<3>(se23::kP) = eta.p;
  c.segment<3>(se23::kV) = eta.v;
  c.segment<3>(se23::kR) = se23::slot_R(zeta);
  return c;
}

std::vector<Vector> sphere_points(int dim, int count) {
  if (dim < 1 || dim > static_cast<int>(kPrimes.size()))
    throw DomainError("sphere_points: unsupported dimension");
  const int pairs = (dim + 1) / 2;
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long idx = 1; static_cast<int>(out.size()) < count; ++idx) {
    Vector g(2 * pairs);
    for (int k = 0; k < pairs; ++k) {
      const double u1 = radical_inverse(idx, kPrimes[static_cast<std::size_t>(2 * k)]);
      const double u2 = radical_inverse(idx, kPrimes[static_cast<std::size_t>(2 * k + 1)]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      g(2 * k) = r * std::cos(2.0 * std::numbers::pi * u2);
      g(2 * k + 1) = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    Vector u = g.head(dim);
    const double norm = u.norm();
    if (!(norm > 1e-12)) continue;
    out.push_back(u / norm);
  }
  return out;
}

double max_rotation_extent(const Ellipsoid& E) {
  const Matrix S = E.shape();
  Eigen::SelfAdjointEigenSolver<Mat3> es(S.block<3, 3>(se23::kR, se23::kR), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

GroupSet ellipsoid_to_group(const Ellipsoid& E, int n_samples) {
  if (E.dim() != 9) throw DomainError("ellipsoid_to_group: expected a 9-dimensional ellipsoid");
  const double extent = max_rotation_extent(E);
  if (extent >= std::numbers::pi - se23::kChartMargin) {
    std::ostringstream os;
    os << "ellipsoid_to_group: set reaches |zeta_R| = " << extent << ", outside the log chart";
    throw DomainError(os.str());
  }
  const Matrix S = E.shape();
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  const Matrix root = es.eigenvectors() *
                      es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                      es.eigenvectors().transpose();

  std::vector<Vec9> boundary;
  for (int i = 0; i < 9; ++i) {
    const Vec9 x = S.col(i) / std::sqrt(S(i, i));
    boundary.push_back(x);
    boundary.push_back(-x);
  }
  for (const auto& u : sphere_points(9, std::max(0, n_samples))) boundary.push_back(root * u);

  GroupSet out;
  out.samples.reserve(boundary.size());
  auto& s = out.summary;
  for (const auto& zeta : boundary) {
    GroupSample sample{zeta, se23::exp_group(zeta)};
    s.max_position_error = std::max(s.max_position_error, sample.eta.p.norm());
    s.max_velocity_error = std::max(s.max_velocity_error, sample.eta.v.norm());
    s.max_rotation_angle = std::max(s.max_rotation_angle, se23::slot_R(zeta).norm());
    s.max_abs_position = s.max_abs_position.cwiseMax(sample.eta.p.cwiseAbs());
    s.max_abs_velocity = s.max_abs_velocity.cwiseMax(sample.eta.v.cwiseAbs());
    out.samples.push_back(std::move(sample));
  }
  return out;
}

const std::vector<Projection2d>& standard_projections_2d() {
  static const std::vector<Projection2d> table{
      {"position_xy", 0, 1}, {"position_xz", 0, 2}, {"position_yz", 1, 2},
      {"velocity_xy", 3, 4}, {"rotation_xy", 6, 7}};
  return table;
}

const std::vector<Projection3d>& standard_projections_3d() {
  static const std::vector<Projection3d> table{{"position_xyz", 0, 1, 2},
                                               {"velocity_xyz", 3, 4, 5}};
  return table;
}

std::vector<Eigen::Vector2d> project_hull_2d(const std::vector<Vec9>& coords,
                                             const Projection2d& proj) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(coords.size());
  for (const auto& c : coords) pts.emplace_back(c(proj.x), c(proj.y));
  return geometry::convex_hull_2d(std::move(pts));
}

geometry::Hull3d project_hull_3d(const std::vector<Vec9>& coords, const Projection3d& proj) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(coords.size());
  for (const auto& c : coords) pts.emplace_back(c(proj.x), c(proj.y), c(proj.z));
  return geometry::convex_hull_3d(pts);
}

}  // namespace loglin::synthesis
