#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "sphere_spectra/mesh.hpp"

namespace sphere_spectra {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Discrete -Delta as a (stiffness, lumped mass) pair on vertex space.
struct LaplacePair {
  SparseMatrix stiffness;  // symmetric PSD, constants in the kernel
  Eigen::VectorXd mass;    // diagonal of the lumped mass matrix
};

/// Cotangent stiffness and barycentric lumped mass built from the chordal
/// triangles in R^4. Throws MeshQualityError for a triangle of area < 1e-14.
LaplacePair assemble_laplacian(const SphericalTriMesh& mesh);

}  // namespace sphere_spectra
