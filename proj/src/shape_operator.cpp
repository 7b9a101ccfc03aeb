#include "sphere_spectra/shape_operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "sphere_spectra/errors.hpp"

namespace sphere_spectra {
namespace {

double chordal_area(const Vec4& a, const Vec4& b, const Vec4& c) {
  const Vec4 u = b - a;
  const Vec4 v = c - a;
  const double uu = u.squaredNorm();
  const double vv = v.squaredNorm();
  const double uv = u.dot(v);
  return 0.5 * std::sqrt(std::max(0.0, uu * vv - uv * uv));
}

// Orthonormal pair spanning the complement of {p, n}; `hint` picks the first axis.
std::array<Vec4, 2> tangent_frame(const Vec4& p, const Vec4& n, const Vec4& hint) {
  Vec4 e1 = hint - hint.dot(p) * p - hint.dot(n) * n;
  if (e1.norm() < 1e-12) {
    for (int axis = 0; axis < 4; ++axis) {
      Vec4 trial = Vec4::Unit(axis);
      e1 = trial - trial.dot(p) * p - trial.dot(n) * n;
      if (e1.norm() > 0.1) break;
    }
  }
  e1.normalize();
  Vec4 e2 = cross4(p, n, e1);
  e2.normalize();
  return {e1, e2};
}

}  // namespace

double DiscreteGeometry::simons_integral() const {
  constexpr double n = 2.0;
  double sum = 0.0;
  for (Eigen::Index v = 0; v < norm_a.size(); ++v) {
    const double a2 = norm_a[v] * norm_a[v];
    sum += vertex_area[v] * a2 * (a2 - n);
  }
  return sum;
}

std::vector<double> triangle_areas(const SphericalTriMesh& mesh) {
  std::vector<double> out;
  out.reserve(mesh.triangle_count());
  for (const Triangle& t : mesh.triangles()) {
    out.push_back(chordal_area(mesh.vertices()[t[0]], mesh.vertices()[t[1]], mesh.vertices()[t[2]]));
  }
  return out;
}

DiscreteGeometry discrete_shape_operator(const SphericalTriMesh& mesh) {
  const MeshTopology topo = validate_mesh(mesh);
  const auto& verts = mesh.vertices();
  const std::size_t nv = verts.size();

  DiscreteGeometry g;
  g.genus = topo.genus;
  g.vertex_area = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nv));
  std::vector<Vec4> accum(nv, Vec4::Zero());
  const std::vector<double> areas = triangle_areas(mesh);
  for (std::size_t f = 0; f < mesh.triangle_count(); ++f) {
    const Triangle& t = mesh.triangles()[f];
    if (areas[f] < 1e-14) {
      std::ostringstream msg;
      msg << "triangle " << f << " is degenerate (area " << areas[f] << ")";
      throw MeshQualityError(msg.str(), static_cast<long>(f));
    }
    // Max's weights: each corner contributes its face normal divided by the
    // squared lengths of the two incident edges, exact on round spheres.
    for (int k = 0; k < 3; ++k) {
      const Vec4& p = verts[t[k]];
      const Vec4 e1 = verts[t[(k + 1) % 3]] - p;
      const Vec4 e2 = verts[t[(k + 2) % 3]] - p;
      accum[t[k]] += cross4(p, e1, e2) / (e1.squaredNorm() * e2.squaredNorm());
      g.vertex_area[t[k]] += areas[f] / 3.0;
    }
    g.total_area += areas[f];
  }

  g.normals.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const Vec4& p = verts[v];
    Vec4 n = accum[v] - accum[v].dot(p) * p;
    n.normalize();
    g.normals[v] = n;
  }
  if (mesh.normals()) {
    double agreement = 0.0;
    for (std::size_t v = 0; v < nv; ++v) agreement += g.normals[v].dot((*mesh.normals())[v]);
    if (agreement < 0.0) {
      for (Vec4& n : g.normals) n = -n;
    }
  }

  const auto rings = vertex_neighbors(mesh);
  g.shape.resize(nv);
  g.tangent_frames.resize(nv);
  g.principal_curvatures.resize(nv);
  g.norm_a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nv));
  g.mean_curvature = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nv));

  for (std::size_t v = 0; v < nv; ++v) {
    const Vec4& p = verts[v];
    const Vec4& n = g.normals[v];
    const auto& ring = rings[v];
    const auto frame = tangent_frame(p, n, verts[ring.front()] - p);
    g.tangent_frames[v] = frame;

    // Fit a symmetric S = [[a, b], [b, c]] with S dx = -dn over the one-ring.
    Eigen::Matrix3d normal_matrix = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (int j : ring) {
      const Vec4 dp = verts[j] - p;
      const Vec4 dn = g.normals[j] - n;
      const double x1 = dp.dot(frame[0]);
      const double x2 = dp.dot(frame[1]);
      const double y1 = -dn.dot(frame[0]);
      const double y2 = -dn.dot(frame[1]);
      const double w = 1.0 / (x1 * x1 + x2 * x2);
      const Eigen::Vector3d r1(x1, x2, 0.0);
      const Eigen::Vector3d r2(0.0, x1, x2);
      normal_matrix += w * (r1 * r1.transpose() + r2 * r2.transpose());
      rhs += w * (r1 * y1 + r2 * y2);
    }

    Eigen::Matrix2d s;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> conditioning(normal_matrix);
    const auto& ev = conditioning.eigenvalues();
    const bool rank_deficient = !(ev[0] > 1e-10 * ev[2]) || ring.size() < 3;
    if (rank_deficient) {
      if (!mesh.analytic() || !mesh.normals()) {
        std::ostringstream msg;
        msg << "one-ring of vertex " << v << " is too degenerate for a shape-operator fit";
        throw MeshQualityError(msg.str(), -1);
      }
      const auto k = mesh.analytic()->curvatures[v];
      s << k[0], 0.0, 0.0, k[1];
      ++g.fallback_vertices;
    } else {
      const Eigen::Vector3d abc = normal_matrix.ldlt().solve(rhs);
      s << abc[0], abc[1], abc[1], abc[2];
    }
    g.shape[v] = s;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> principal(s);
    g.principal_curvatures[v] = {principal.eigenvalues()[0], principal.eigenvalues()[1]};
    g.norm_a[static_cast<Eigen::Index>(v)] = s.norm();
    g.mean_curvature[static_cast<Eigen::Index>(v)] = s.trace();
  }
  g.lambda = g.norm_a.maxCoeff();
  return g;
}

}  // namespace sphere_spectra
