#pragma once

#include <cstddef>
#include <vector>

#include "sphere_spectra/mesh.hpp"

namespace sphere_spectra {

struct IntersectionWitness {
  int triangle_a = 0;
  int triangle_b = 0;
};

struct IntersectionOptions {
  std::size_t max_witnesses = 1000;
  // Smallest chordal distance from the pole to any vertex we accept.
  double min_pole_distance = 1e-3;
};

struct IntersectionResult {
  bool embedded = true;
  std::vector<IntersectionWitness> witnesses;
  Vec4 pole = Vec4::Zero();
  double pole_distance = 0.0;
  std::size_t candidate_pairs = 0;
};

/// Stereographic image of x from `pole` in an orthonormal frame of pole^perp.
Eigen::Vector3d stereographic_projection(const Vec4& x, const Vec4& pole,
                                         const Eigen::Matrix<double, 4, 3>& frame);

/// Embeddedness test: projects the mesh to R^3 from a pole far from every
/// vertex, then runs exact triangle-triangle tests on hashed candidate pairs.
/// Pairs sharing an edge are skipped; pairs sharing one vertex are tested for
/// contact away from it. Throws ConfigurationError if no pole is admissible.
IntersectionResult self_intersection_test(const SphericalTriMesh& mesh,
                                          const IntersectionOptions& options = {});

namespace predicates {
// Signs of the classical orientation determinants, exact for double input.
int orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c);
int orient3d(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
             const Eigen::Vector3d& d);
bool triangles_intersect(const std::array<Eigen::Vector3d, 3>& a,
                         const std::array<Eigen::Vector3d, 3>& b);
bool segment_hits_triangle(const Eigen::Vector3d& p, const Eigen::Vector3d& q,
                           const std::array<Eigen::Vector3d, 3>& tri);
}  // namespace predicates

}  // namespace sphere_spectra
