#include "sphere_spectra/laplacian.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "sphere_spectra/errors.hpp"

namespace sphere_spectra {

LaplacePair assemble_laplacian(const SphericalTriMesh& mesh) {
  validate_mesh(mesh);
  const auto& verts = mesh.vertices();
  const auto nv = static_cast<Eigen::Index>(verts.size());

  LaplacePair pair;
  pair.mass = Eigen::VectorXd::Zero(nv);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(12 * mesh.triangle_count());

  for (std::size_t f = 0; f < mesh.triangle_count(); ++f) {
    const Triangle& t = mesh.triangles()[f];
    const Vec4& a = verts[t[0]];
    const Vec4& b = verts[t[1]];
    const Vec4& c = verts[t[2]];
    const Vec4 ab = b - a;
    const Vec4 ac = c - a;
    const double cross2 = ab.squaredNorm() * ac.squaredNorm() - ab.dot(ac) * ab.dot(ac);
    const double area = 0.5 * std::sqrt(std::max(0.0, cross2));
    if (!(area >= 1e-14)) {
      std::ostringstream msg;
      msg << "assemble_laplacian: triangle " << f << " is degenerate (area " << area << ")";
      throw MeshQualityError(msg.str(), static_cast<long>(f));
    }
    for (int k = 0; k < 3; ++k) {
      // Angle at corner k is opposite edge (k+1, k+2).
      const int i = t[(k + 1) % 3];
      const int j = t[(k + 2) % 3];
      const Vec4 u = verts[i] - verts[t[k]];
      const Vec4 v = verts[j] - verts[t[k]];
      const double cot = u.dot(v) / (2.0 * area);
      const double w = 0.5 * cot;
      triplets.emplace_back(i, j, -w);
      triplets.emplace_back(j, i, -w);
      triplets.emplace_back(i, i, w);
      triplets.emplace_back(j, j, w);
      pair.mass[t[k]] += area / 3.0;
    }
  }
  pair.stiffness.resize(nv, nv);
  pair.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  pair.stiffness.makeCompressed();
  return pair;
}

}  // namespace sphere_spectra
