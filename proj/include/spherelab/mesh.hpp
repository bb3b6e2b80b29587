#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

#include "spherelab/density.hpp"

namespace spherelab {

/// A triangulated closed surface in R^3 with outward-oriented faces.
struct SurfaceMesh {
  Eigen::MatrixXd vertices;               ///< V x 3
  std::vector<std::array<int, 3>> faces;  ///< CCW seen from outside
};

/// Faces of the convex hull of the given points (rows of an N x 3 matrix),
/// as index triples into the input array, oriented outward.  Points strictly
/// inside the hull are simply never referenced.  Throws when the input has
/// fewer than four points or is degenerate (all points within tolerance of a
/// common plane).
std::vector<std::array<int, 3>> convex_hull_3d(
    const Eigen::Ref<const Eigen::MatrixXd>& points);

/// Triangulated boundary of the convex body induced by the density: one
/// boundary point per direction of a direction grid of the given size, faces
/// from the convex hull of those points.  Requires dim 3 and the same p
/// preconditions as the boundary-point evaluation.
SurfaceMesh boundary_mesh(const SphericalDensity& f, double p, int grid_count,
                          int level);

/// Write the mesh as a Wavefront OBJ file (v/f records, 1-based indices).
void write_obj(const SurfaceMesh& mesh, const std::string& path);

}  // namespace spherelab
