#pragma once

#include <Eigen/Core>

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sphere_spectra/sphere_geometry.hpp"

namespace sphere_spectra {

using Vec4 = Eigen::Vector4d;
using Triangle = std::array<int, 3>;

/// Closed-form data known for generator meshes. Curvatures are per vertex and
/// refer to the per-vertex normals carried alongside them.
struct AnalyticSurface {
  std::string family;
  std::vector<std::array<double, 2>> curvatures;
  std::optional<double> area;
  std::optional<double> lambda1;
  int lambda1_multiplicity = 0;

  /// max over vertices of ||A||.
  double lambda_max() const;
  /// max over vertices of |kappa_i|.
  double kappa_max() const;
  /// max over vertices of |kappa_1 + kappa_2|.
  double max_abs_mean_curvature() const;
  double min_mean_curvature() const;
  double max_mean_curvature() const;
  PrincipalCurvatureSet at(std::size_t vertex) const;
};

/// Triangulated closed surface with vertices on the unit sphere S^3 in R^4.
class SphericalTriMesh {
 public:
  SphericalTriMesh() = default;
  SphericalTriMesh(std::vector<Vec4> vertices, std::vector<Triangle> triangles);

  const std::vector<Vec4>& vertices() const noexcept { return vertices_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t triangle_count() const noexcept { return triangles_.size(); }

  /// Unit normals (tangent to S^3, normal to the surface) when known.
  const std::optional<std::vector<Vec4>>& normals() const noexcept { return normals_; }
  const std::optional<AnalyticSurface>& analytic() const noexcept { return analytic_; }
  /// Genus the mesh claims to have, checked by validate_mesh.
  std::optional<int> declared_genus() const noexcept { return declared_genus_; }

  void set_normals(std::vector<Vec4> normals);
  void set_analytic(AnalyticSurface analytic);
  void set_declared_genus(int genus) { declared_genus_ = genus; }
  void clear_analytic() {
    analytic_.reset();
    normals_.reset();
  }

 private:
  std::vector<Vec4> vertices_;
  std::vector<Triangle> triangles_;
  std::optional<std::vector<Vec4>> normals_;
  std::optional<AnalyticSurface> analytic_;
  std::optional<int> declared_genus_;
};

struct MeshTopology {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  int components = 0;
  int euler_characteristic = 0;
  int genus = 0;  // summed over components
};

/// Counts V, E, F, components and derives the genus from chi = sum(2 - 2 g_i).
MeshTopology compute_topology(const SphericalTriMesh& mesh);

/// Checks unit norms (1e-9), index ranges, closed consistently oriented
/// 2-manifold structure and the declared genus. Throws MeshError.
MeshTopology validate_mesh(const SphericalTriMesh& mesh);

/// Sorted one-ring neighbours of every vertex.
std::vector<std::vector<int>> vertex_neighbors(const SphericalTriMesh& mesh);

/// Orthogonal complement of (a, b, c) in R^4, det[e_i; a; b; c].
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c);

// Generators. Each attaches analytic normals and curvatures.

/// Clifford torus (cos u, sin u, cos v, sin v) / sqrt(2); kappa = {+1, -1}.
SphericalTriMesh gen_clifford_torus(int res_u, int res_v);

/// S^1(r) x S^1(sqrt(1 - r^2)) with the normal pointing toward the core
/// circle of the r-tube; kappa = {sqrt(1-r^2)/r, -r/sqrt(1-r^2)}.
SphericalTriMesh gen_flat_torus(double r, int res_u, int res_v);

/// Geodesic sphere of polar radius r about e_4 (icosphere refined `subdiv`
/// times); kappa = {cot r, cot r} for the pole-ward normal.
SphericalTriMesh gen_geodesic_sphere(double r, int subdiv);

/// Applies an orthogonal 4x4 map to vertices and normals.
SphericalTriMesh transform_mesh(const SphericalTriMesh& mesh, const Eigen::Matrix4d& rotation);

/// Disjoint union; analytic data survives only if both inputs carry it.
SphericalTriMesh merge_meshes(const SphericalTriMesh& a, const SphericalTriMesh& b);

/// Moves every vertex along its normal geodesic by t. Uses the analytic
/// normals when present (and transports the analytic curvatures), otherwise
/// the discrete normals. Throws SingularityError if |t| reaches the horizon.
SphericalTriMesh offset_mesh(const SphericalTriMesh& mesh, double t);

/// Horizon arctan(1 / kappa_max) from analytic curvatures if present,
/// otherwise from the discrete principal curvatures.
double mesh_horizon(const SphericalTriMesh& mesh);

// S3OFF: "S3OFF", "V F", V lines of 4 floats, F lines "3 i j k".
SphericalTriMesh read_s3off(std::istream& in);
SphericalTriMesh read_s3off_file(const std::string& path);
void write_s3off(std::ostream& out, const SphericalTriMesh& mesh);
void write_s3off_file(const std::string& path, const SphericalTriMesh& mesh);

}  // namespace sphere_spectra
