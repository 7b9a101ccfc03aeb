#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

#include "sphere_spectra/mesh.hpp"

namespace sphere_spectra {

/// Per-vertex discrete extrinsic geometry of a surface in S^3.
struct DiscreteGeometry {
  Eigen::VectorXd vertex_area;               // lumped (barycentric) area weights
  std::vector<Vec4> normals;                 // unit, tangent to S^3, normal to the surface
  std::vector<Eigen::Matrix2d> shape;        // symmetric, in the frame `tangent_frames`
  std::vector<std::array<Vec4, 2>> tangent_frames;
  std::vector<std::array<double, 2>> principal_curvatures;  // ascending
  Eigen::VectorXd norm_a;                    // Frobenius norm of the shape operator
  Eigen::VectorXd mean_curvature;            // trace of the shape operator
  double total_area = 0.0;
  double lambda = 0.0;                       // max ||A||
  int genus = 0;
  int fallback_vertices = 0;                 // vertices that used analytic values

  /// sum_v area_v ||A||^2 (||A||^2 - n), the Simons integrand for n = 2.
  double simons_integral() const;
};

/// Chordal triangle areas, one per triangle.
std::vector<double> triangle_areas(const SphericalTriMesh& mesh);

/// Vertex normals, one-ring least-squares shape operators and derived
/// curvature quantities. Curvatures are positive when the surface bends
/// toward the normal. When the mesh carries normals the discrete normals are
/// oriented to agree with them. A rank-deficient one-ring falls back to the
/// analytic curvatures when present, otherwise throws MeshQualityError.
DiscreteGeometry discrete_shape_operator(const SphericalTriMesh& mesh);

}  // namespace sphere_spectra
