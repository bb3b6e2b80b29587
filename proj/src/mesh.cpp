#include "spherelab/mesh.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "spherelab/convexity.hpp"

namespace spherelab {

namespace {

struct HullFace {
  std::array<int, 3> v;
  Eigen::Vector3d normal;  // unit, outward
  bool alive = true;
};

double signed_dist(const HullFace& face, const Eigen::MatrixXd& pts,
                   const Eigen::Vector3d& p) {
  return face.normal.dot(p - pts.row(face.v[0]).transpose());
}

HullFace make_face(int a, int b, int c, const Eigen::MatrixXd& pts) {
  HullFace f;
  f.v = {a, b, c};
  const Eigen::Vector3d pa = pts.row(a).transpose();
  const Eigen::Vector3d ab = pts.row(b).transpose() - pa;
  const Eigen::Vector3d ac = pts.row(c).transpose() - pa;
  const Eigen::Vector3d n = ab.cross(ac);
  const double len = n.norm();
  f.normal = (len > 0.0) ? Eigen::Vector3d(n / len) : Eigen::Vector3d::Zero();
  return f;
}

}  // namespace

std::vector<std::array<int, 3>> convex_hull_3d(
    const Eigen::Ref<const Eigen::MatrixXd>& points) {
  const Eigen::Index n = points.rows();
  if (points.cols() != 3)
    throw std::invalid_argument("convex_hull_3d: points must be N x 3");
  if (n < 4)
    throw std::invalid_argument("convex_hull_3d: need at least 4 points");

  const Eigen::Vector3d lo = points.colwise().minCoeff().transpose();
  const Eigen::Vector3d hi = points.colwise().maxCoeff().transpose();
  const double eps = 1e-9 * std::max((hi - lo).norm(), 1e-30);

  // Initial simplex: extreme pair along the widest axis, then the farthest
  // point from that line, then the farthest point from that plane.
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  int i0 = 0, i1 = 0;
  points.col(axis).minCoeff(&i0);
  points.col(axis).maxCoeff(&i1);
  const Eigen::Vector3d p0 = points.row(i0).transpose();
  const Eigen::Vector3d dir = points.row(i1).transpose() - p0;
  if (dir.norm() <= eps)
    throw std::invalid_argument("convex_hull_3d: all points coincide");

  int i2 = -1;
  double best = eps;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector3d rel = points.row(i).transpose() - p0;
    const double d = dir.cross(rel).norm() / dir.norm();
    if (d > best) {
      best = d;
      i2 = static_cast<int>(i);
    }
  }
  if (i2 < 0)
    throw std::invalid_argument("convex_hull_3d: points are collinear");

  const Eigen::Vector3d rel2 = points.row(i2).transpose() - p0;
  const Eigen::Vector3d plane_n = dir.cross(rel2).normalized();
  int i3 = -1;
  best = eps;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = std::abs(plane_n.dot(points.row(i).transpose() - p0));
    if (d > best) {
      best = d;
      i3 = static_cast<int>(i);
    }
  }
  if (i3 < 0)
    throw std::invalid_argument("convex_hull_3d: points are coplanar");

  const Eigen::MatrixXd& pts = points;
  std::vector<HullFace> faces;
  const std::array<std::array<int, 3>, 4> tetra = {{{i0, i1, i2},
                                                    {i0, i1, i3},
                                                    {i0, i2, i3},
                                                    {i1, i2, i3}}};
  const std::array<int, 4> opposite = {i3, i2, i1, i0};
  for (int k = 0; k < 4; ++k) {
    HullFace f = make_face(tetra[k][0], tetra[k][1], tetra[k][2], pts);
    if (signed_dist(f, pts, pts.row(opposite[k]).transpose()) > 0.0) {
      std::swap(f.v[1], f.v[2]);
      f.normal = -f.normal;
    }
    faces.push_back(f);
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const int idx = static_cast<int>(i);
    if (idx == i0 || idx == i1 || idx == i2 || idx == i3) continue;
    const Eigen::Vector3d p = pts.row(i).transpose();

    std::vector<int> visible;
    for (std::size_t k = 0; k < faces.size(); ++k)
      if (faces[k].alive && signed_dist(faces[k], pts, p) > eps)
        visible.push_back(static_cast<int>(k));
    if (visible.empty()) continue;

    // A directed edge of the visible region whose reverse is not visible lies
    // on the horizon; consistent outward orientation makes interior edges
    // appear in both directions.
    std::set<std::pair<int, int>> edges;
    for (int k : visible) {
      const auto& v = faces[static_cast<std::size_t>(k)].v;
      edges.insert({v[0], v[1]});
      edges.insert({v[1], v[2]});
      edges.insert({v[2], v[0]});
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& e : edges)
      if (edges.find({e.second, e.first}) == edges.end()) horizon.push_back(e);

    for (int k : visible) faces[static_cast<std::size_t>(k)].alive = false;
    for (const auto& e : horizon)
      faces.push_back(make_face(e.first, e.second, idx, pts));
  }

  std::vector<std::array<int, 3>> out;
  for (const auto& f : faces)
    if (f.alive) out.push_back(f.v);
  return out;
}

SurfaceMesh boundary_mesh(const SphericalDensity& f, double p, int grid_count,
                          int level) {
  if (f.dim() != 3)
    throw std::invalid_argument("boundary_mesh: dim 3 only");
  if (grid_count < 4)
    throw std::invalid_argument("boundary_mesh: need at least 4 directions");
  const Eigen::MatrixXd dirs = direction_grid(3, grid_count);
  SurfaceMesh mesh;
  mesh.vertices.resize(grid_count, 3);
  for (int i = 0; i < grid_count; ++i)
    mesh.vertices.row(i) =
        boundary_point(f, p, dirs.row(i).transpose(), level).transpose();
  mesh.faces = convex_hull_3d(mesh.vertices);
  return mesh;
}

void write_obj(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_obj: cannot open '" + path +
                             "' for writing");
  out.precision(17);
  for (Eigen::Index i = 0; i < mesh.vertices.rows(); ++i)
    out << "v " << mesh.vertices(i, 0) << ' ' << mesh.vertices(i, 1) << ' '
        << mesh.vertices(i, 2) << '\n';
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!out) throw std::runtime_error("write_obj: write to '" + path + "' failed");
}

}  // namespace spherelab
