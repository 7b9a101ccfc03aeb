#include "sphere_spectra/mesh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/shape_operator.hpp"

namespace sphere_spectra {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVertexNormTol = 1e-9;

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Flip each triangle whose 4D orientation disagrees with the averaged normal.
void orient_triangles(std::vector<Triangle>& triangles, const std::vector<Vec4>& vertices,
                      const std::vector<Vec4>& normals) {
  for (Triangle& tri : triangles) {
    const Vec4& a = vertices[tri[0]];
    const Vec4 n = cross4(a, vertices[tri[1]] - a, vertices[tri[2]] - a);
    const Vec4 ref = normals[tri[0]] + normals[tri[1]] + normals[tri[2]];
    if (n.dot(ref) < 0.0) std::swap(tri[1], tri[2]);
  }
}

void require_resolution(int res_u, int res_v, const char* op) {
  if (res_u < 8 || res_v < 8) {
    std::ostringstream msg;
    msg << op << ": resolution " << res_u << "x" << res_v << " is below the minimum of 8";
    throw PreconditionError(msg.str());
  }
}

struct Icosphere {
  std::vector<Eigen::Vector3d> points;
  std::vector<Triangle> faces;
};

Icosphere make_icosphere(int subdiv) {
  const double t = 0.5 * (1.0 + std::sqrt(5.0));
  Icosphere s;
  s.points = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
              {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : s.points) p.normalize();
  s.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int level = 0; level < subdiv; ++level) {
    std::unordered_map<std::uint64_t, int> midpoint;
    auto mid = [&](int a, int b) {
      const std::uint64_t key = edge_key(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int index = static_cast<int>(s.points.size());
      s.points.push_back((s.points[a] + s.points[b]).normalized());
      midpoint.emplace(key, index);
      return index;
    };
    std::vector<Triangle> next;
    next.reserve(s.faces.size() * 4);
    for (const Triangle& f : s.faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    s.faces = std::move(next);
  }
  return s;
}

}  // namespace

double AnalyticSurface::lambda_max() const {
  double m = 0.0;
  for (const auto& k : curvatures) m = std::max(m, std::hypot(k[0], k[1]));
  return m;
}

double AnalyticSurface::kappa_max() const {
  double m = 0.0;
  for (const auto& k : curvatures) m = std::max({m, std::abs(k[0]), std::abs(k[1])});
  return m;
}

double AnalyticSurface::max_abs_mean_curvature() const {
  double m = 0.0;
  for (const auto& k : curvatures) m = std::max(m, std::abs(k[0] + k[1]));
  return m;
}

double AnalyticSurface::min_mean_curvature() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& k : curvatures) m = std::min(m, k[0] + k[1]);
  return m;
}

double AnalyticSurface::max_mean_curvature() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& k : curvatures) m = std::max(m, k[0] + k[1]);
  return m;
}

PrincipalCurvatureSet AnalyticSurface::at(std::size_t vertex) const {
  return PrincipalCurvatureSet({curvatures.at(vertex)[0], curvatures.at(vertex)[1]});
}

SphericalTriMesh::SphericalTriMesh(std::vector<Vec4> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {}

void SphericalTriMesh::set_normals(std::vector<Vec4> normals) {
  if (normals.size() != vertices_.size()) {
    throw PreconditionError("set_normals: one normal per vertex required");
  }
  normals_ = std::move(normals);
}

void SphericalTriMesh::set_analytic(AnalyticSurface analytic) {
  if (analytic.curvatures.size() != vertices_.size()) {
    throw PreconditionError("set_analytic: one curvature pair per vertex required");
  }
  analytic_ = std::move(analytic);
}

Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 out;
  for (int i = 0; i < 4; ++i) {
    Eigen::Matrix3d minor;
    int col = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      minor(0, col) = a[j];
      minor(1, col) = b[j];
      minor(2, col) = c[j];
      ++col;
    }
    out[i] = ((i % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
  }
  return out;
}

std::vector<std::vector<int>> vertex_neighbors(const SphericalTriMesh& mesh) {
  std::vector<std::vector<int>> out(mesh.vertex_count());
  for (const Triangle& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      out[t[k]].push_back(t[(k + 1) % 3]);
      out[t[k]].push_back(t[(k + 2) % 3]);
    }
  }
  for (auto& ring : out) {
    std::sort(ring.begin(), ring.end());
    ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  }
  return out;
}

MeshTopology compute_topology(const SphericalTriMesh& mesh) {
  MeshTopology topo;
  topo.vertices = mesh.vertex_count();
  topo.faces = mesh.triangle_count();

  std::vector<std::uint64_t> edges;
  edges.reserve(3 * mesh.triangle_count());
  std::vector<int> parent(mesh.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Triangle& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      edges.push_back(edge_key(std::min(a, b), std::max(a, b)));
      parent[find(a)] = find(b);
    }
  }
  std::sort(edges.begin(), edges.end());
  topo.edges = static_cast<std::size_t>(std::unique(edges.begin(), edges.end()) - edges.begin());

  std::vector<char> used(mesh.vertex_count(), 0);
  for (const Triangle& t : mesh.triangles())
    for (int v : t) used[v] = 1;
  int components = 0;
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    if (used[v] && find(static_cast<int>(v)) == static_cast<int>(v)) ++components;
  }
  topo.components = components;
  topo.euler_characteristic = static_cast<int>(topo.vertices) - static_cast<int>(topo.edges) +
                              static_cast<int>(topo.faces);
  topo.genus = (2 * components - topo.euler_characteristic) / 2;
  return topo;
}

MeshTopology validate_mesh(const SphericalTriMesh& mesh) {
  const auto& verts = mesh.vertices();
  if (verts.empty() || mesh.triangles().empty()) throw MeshError("mesh is empty");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (!verts[i].allFinite() || std::abs(verts[i].norm() - 1.0) > kVertexNormTol) {
      std::ostringstream msg;
      msg << "vertex " << i << " is not on the unit sphere (norm " << verts[i].norm() << ")";
      throw MeshError(msg.str());
    }
  }

  const int nv = static_cast<int>(verts.size());
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(3 * mesh.triangle_count());
  std::vector<int> degree(verts.size(), 0);
  for (std::size_t f = 0; f < mesh.triangle_count(); ++f) {
    const Triangle& t = mesh.triangles()[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= nv) {
        std::ostringstream msg;
        msg << "triangle " << f << " references vertex " << t[k] << " out of range";
        throw MeshError(msg.str());
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      std::ostringstream msg;
      msg << "triangle " << f << " repeats a vertex";
      throw MeshError(msg.str());
    }
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      ++degree[a];
      if (!directed.emplace(edge_key(a, b), t[(k + 2) % 3]).second) {
        std::ostringstream msg;
        msg << "directed edge (" << a << ", " << b
            << ") appears twice: non-manifold edge or inconsistent orientation";
        throw MeshError(msg.str());
      }
    }
  }
  for (const auto& [key, apex] : directed) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    if (directed.find(edge_key(b, a)) == directed.end()) {
      std::ostringstream msg;
      msg << "edge (" << a << ", " << b << ") is a boundary edge or oriented inconsistently";
      throw MeshError(msg.str());
    }
  }

  // Each vertex link must be a single cycle: following a -> b along the
  // triangles (v, a, b) has to visit all incident triangles.
  std::vector<std::unordered_map<int, int>> link(verts.size());
  for (const Triangle& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) link[t[k]].emplace(t[(k + 1) % 3], t[(k + 2) % 3]);
  }
  for (int v = 0; v < nv; ++v) {
    if (degree[v] == 0) {
      std::ostringstream msg;
      msg << "vertex " << v << " is not referenced by any triangle";
      throw MeshError(msg.str());
    }
    const int start = link[v].begin()->first;
    int cur = start;
    int steps = 0;
    do {
      auto it = link[v].find(cur);
      if (it == link[v].end()) break;
      cur = it->second;
      ++steps;
    } while (cur != start && steps <= degree[v]);
    if (cur != start || steps != degree[v]) {
      std::ostringstream msg;
      msg << "vertex " << v << " is non-manifold (its link is not a single cycle)";
      throw MeshError(msg.str());
    }
  }

  MeshTopology topo = compute_topology(mesh);
  if (mesh.declared_genus() && *mesh.declared_genus() != topo.genus) {
    std::ostringstream msg;
    msg << "declared genus " << *mesh.declared_genus() << " but Euler characteristic "
        << topo.euler_characteristic << " over " << topo.components << " component(s) gives "
        << topo.genus;
    throw MeshError(msg.str());
  }
  return topo;
}

SphericalTriMesh gen_flat_torus(double r, int res_u, int res_v) {
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("gen_flat_torus: r must lie in (0, 1)");
  require_resolution(res_u, res_v, "gen_flat_torus");
  const double s = std::sqrt(1.0 - r * r);

  std::vector<Vec4> vertices;
  std::vector<Vec4> normals;
  vertices.reserve(static_cast<std::size_t>(res_u) * res_v);
  normals.reserve(vertices.capacity());
  for (int i = 0; i < res_u; ++i) {
    const double u = 2.0 * kPi * i / res_u;
    for (int j = 0; j < res_v; ++j) {
      const double v = 2.0 * kPi * j / res_v;
      vertices.emplace_back(r * std::cos(u), r * std::sin(u), s * std::cos(v), s * std::sin(v));
      normals.emplace_back(-s * std::cos(u), -s * std::sin(u), r * std::cos(v), r * std::sin(v));
    }
  }
  auto index = [res_u, res_v](int i, int j) { return ((i + res_u) % res_u) * res_v + (j + res_v) % res_v; };
  std::vector<Triangle> triangles;
  triangles.reserve(2 * vertices.size());
  for (int i = 0; i < res_u; ++i) {
    for (int j = 0; j < res_v; ++j) {
      const int a = index(i, j);
      const int b = index(i + 1, j);
      const int c = index(i + 1, j + 1);
      const int d = index(i, j + 1);
      triangles.push_back({a, b, c});
      triangles.push_back({a, c, d});
    }
  }
  orient_triangles(triangles, vertices, normals);

  AnalyticSurface analytic;
  analytic.family = "flat-torus";
  analytic.curvatures.assign(vertices.size(), {s / r, -r / s});
  analytic.area = 4.0 * kPi * kPi * r * s;
  // Spectrum of the flat product metric: k^2 / r^2 + l^2 / s^2.
  const double a = 1.0 / (r * r);
  const double b = 1.0 / (s * s);
  analytic.lambda1 = std::min(a, b);
  analytic.lambda1_multiplicity = std::abs(a - b) <= 1e-12 * a ? 4 : 2;

  SphericalTriMesh mesh(std::move(vertices), std::move(triangles));
  mesh.set_normals(std::move(normals));
  mesh.set_analytic(std::move(analytic));
  mesh.set_declared_genus(1);
  return mesh;
}

SphericalTriMesh gen_clifford_torus(int res_u, int res_v) {
  require_resolution(res_u, res_v, "gen_clifford_torus");
  SphericalTriMesh mesh = gen_flat_torus(std::sqrt(0.5), res_u, res_v);
  AnalyticSurface analytic = *mesh.analytic();
  analytic.family = "clifford";
  analytic.curvatures.assign(mesh.vertex_count(), {1.0, -1.0});
  analytic.area = 2.0 * kPi * kPi;
  analytic.lambda1 = 2.0;
  analytic.lambda1_multiplicity = 4;
  mesh.set_analytic(std::move(analytic));
  return mesh;
}

SphericalTriMesh gen_geodesic_sphere(double r, int subdiv) {
  if (!(r > 0.0 && r <= 0.5 * kPi)) {
    throw PreconditionError("gen_geodesic_sphere: r must lie in (0, pi/2]");
  }
  if (subdiv < 3) throw PreconditionError("gen_geodesic_sphere: subdiv must be at least 3");
  if (subdiv > 9) throw PreconditionError("gen_geodesic_sphere: subdiv above 9 is not supported");

  const Icosphere ico = make_icosphere(subdiv);
  const double sr = std::sin(r);
  // cos(pi/2) is not exactly zero in double precision.
  const double cr = r == 0.5 * kPi ? 0.0 : std::cos(r);
  std::vector<Vec4> vertices;
  std::vector<Vec4> normals;
  vertices.reserve(ico.points.size());
  normals.reserve(ico.points.size());
  for (const auto& w : ico.points) {
    vertices.emplace_back(sr * w.x(), sr * w.y(), sr * w.z(), cr);
    normals.emplace_back(-cr * w.x(), -cr * w.y(), -cr * w.z(), sr);
  }
  std::vector<Triangle> triangles = ico.faces;
  orient_triangles(triangles, vertices, normals);

  AnalyticSurface analytic;
  analytic.family = r == 0.5 * kPi ? "equator" : "geodesic-sphere";
  const double cot = cr / sr;
  analytic.curvatures.assign(vertices.size(), {cot, cot});
  analytic.area = 4.0 * kPi * sr * sr;
  analytic.lambda1 = 2.0 / (sr * sr);
  analytic.lambda1_multiplicity = 3;

  SphericalTriMesh mesh(std::move(vertices), std::move(triangles));
  mesh.set_normals(std::move(normals));
  mesh.set_analytic(std::move(analytic));
  mesh.set_declared_genus(0);
  return mesh;
}

SphericalTriMesh transform_mesh(const SphericalTriMesh& mesh, const Eigen::Matrix4d& rotation) {
  if (!(rotation.transpose() * rotation).isApprox(Eigen::Matrix4d::Identity(), 1e-12)) {
    throw PreconditionError("transform_mesh: map must be orthogonal");
  }
  std::vector<Vec4> vertices;
  vertices.reserve(mesh.vertex_count());
  for (const Vec4& v : mesh.vertices()) vertices.push_back(rotation * v);
  std::vector<Triangle> triangles = mesh.triangles();
  // Reflections reverse the 4D orientation of every triangle.
  if (rotation.determinant() < 0.0) {
    for (Triangle& t : triangles) std::swap(t[1], t[2]);
  }
  SphericalTriMesh out(std::move(vertices), std::move(triangles));
  if (mesh.normals()) {
    std::vector<Vec4> normals;
    normals.reserve(mesh.vertex_count());
    for (const Vec4& n : *mesh.normals()) normals.push_back(rotation * n);
    out.set_normals(std::move(normals));
  }
  if (mesh.analytic()) out.set_analytic(*mesh.analytic());
  if (mesh.declared_genus()) out.set_declared_genus(*mesh.declared_genus());
  return out;
}

SphericalTriMesh merge_meshes(const SphericalTriMesh& a, const SphericalTriMesh& b) {
  std::vector<Vec4> vertices = a.vertices();
  vertices.insert(vertices.end(), b.vertices().begin(), b.vertices().end());
  std::vector<Triangle> triangles = a.triangles();
  const int shift = static_cast<int>(a.vertex_count());
  for (Triangle t : b.triangles()) {
    for (int& v : t) v += shift;
    triangles.push_back(t);
  }
  SphericalTriMesh out(std::move(vertices), std::move(triangles));
  if (a.normals() && b.normals()) {
    std::vector<Vec4> normals = *a.normals();
    normals.insert(normals.end(), b.normals()->begin(), b.normals()->end());
    out.set_normals(std::move(normals));
  }
  if (a.analytic() && b.analytic()) {
    AnalyticSurface merged;
    merged.family = a.analytic()->family + "+" + b.analytic()->family;
    merged.curvatures = a.analytic()->curvatures;
    merged.curvatures.insert(merged.curvatures.end(), b.analytic()->curvatures.begin(),
                             b.analytic()->curvatures.end());
    if (a.analytic()->area && b.analytic()->area) {
      merged.area = *a.analytic()->area + *b.analytic()->area;
    }
    out.set_analytic(std::move(merged));
  }
  if (a.declared_genus() && b.declared_genus()) {
    out.set_declared_genus(*a.declared_genus() + *b.declared_genus());
  }
  return out;
}

double mesh_horizon(const SphericalTriMesh& mesh) {
  double kmax = 0.0;
  if (mesh.analytic()) {
    kmax = mesh.analytic()->kappa_max();
  } else {
    const DiscreteGeometry geom = discrete_shape_operator(mesh);
    for (const auto& k : geom.principal_curvatures) {
      kmax = std::max({kmax, std::abs(k[0]), std::abs(k[1])});
    }
  }
  return kmax == 0.0 ? std::numeric_limits<double>::infinity() : std::atan(1.0 / kmax);
}

SphericalTriMesh offset_mesh(const SphericalTriMesh& mesh, double t) {
  const double horizon = mesh_horizon(mesh);
  if (std::abs(t) >= horizon) {
    std::ostringstream msg;
    msg << "offset_mesh: |t| = " << std::abs(t) << " is not below the horizon " << horizon;
    throw SingularityError(msg.str(), std::copysign(horizon, t));
  }

  std::vector<Vec4> normals;
  if (mesh.normals()) {
    normals = *mesh.normals();
  } else {
    normals = discrete_shape_operator(mesh).normals;
  }

  std::vector<Vec4> vertices;
  std::vector<Vec4> moved_normals;
  vertices.reserve(mesh.vertex_count());
  moved_normals.reserve(mesh.vertex_count());
  const double c = std::cos(t);
  const double s = std::sin(t);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
    const Vec4& p = mesh.vertices()[i];
    const Vec4& x = normals[i];
    vertices.push_back(geodesic_step(p, x, t));
    // Parallel transport of the normal along the same great circle.
    moved_normals.push_back(-s * p + c * x);
  }

  SphericalTriMesh out(std::move(vertices), mesh.triangles());
  if (mesh.declared_genus()) out.set_declared_genus(*mesh.declared_genus());
  if (mesh.normals()) out.set_normals(std::move(moved_normals));
  if (mesh.analytic() && mesh.normals()) {
    AnalyticSurface moved;
    std::ostringstream family;
    family << mesh.analytic()->family << "@t=" << t;
    moved.family = family.str();
    moved.curvatures.reserve(mesh.vertex_count());
    for (const auto& k : mesh.analytic()->curvatures) {
      moved.curvatures.push_back({curvature_transport(k[0], t), curvature_transport(k[1], t)});
    }
    out.set_analytic(std::move(moved));
  }
  return out;
}

SphericalTriMesh read_s3off(std::istream& in) {
  std::string header;
  if (!(in >> header) || header != "S3OFF") throw MeshError("S3OFF: missing 'S3OFF' header");
  long nv = -1;
  long nf = -1;
  if (!(in >> nv >> nf) || nv <= 0 || nf <= 0) throw MeshError("S3OFF: bad 'V F' line");

  std::vector<Vec4> vertices(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    Vec4& v = vertices[static_cast<std::size_t>(i)];
    if (!(in >> v[0] >> v[1] >> v[2] >> v[3])) {
      std::ostringstream msg;
      msg << "S3OFF: could not read vertex " << i;
      throw MeshError(msg.str());
    }
    if (std::abs(v.norm() - 1.0) > kVertexNormTol) {
      std::ostringstream msg;
      msg << "S3OFF: vertex " << i << " has norm " << std::setprecision(17) << v.norm()
          << ", outside 1e-9 of the unit sphere";
      throw MeshError(msg.str());
    }
  }
  std::vector<Triangle> triangles(static_cast<std::size_t>(nf));
  for (long f = 0; f < nf; ++f) {
    int count = 0;
    Triangle& t = triangles[static_cast<std::size_t>(f)];
    if (!(in >> count >> t[0] >> t[1] >> t[2]) || count != 3) {
      std::ostringstream msg;
      msg << "S3OFF: face " << f << " is not a triangle line '3 i j k'";
      throw MeshError(msg.str());
    }
  }
  SphericalTriMesh mesh(std::move(vertices), std::move(triangles));
  validate_mesh(mesh);
  return mesh;
}

SphericalTriMesh read_s3off_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("S3OFF: cannot open " + path);
  return read_s3off(in);
}

void write_s3off(std::ostream& out, const SphericalTriMesh& mesh) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "S3OFF\n" << mesh.vertex_count() << ' ' << mesh.triangle_count() << '\n';
  out << std::setprecision(17);
  for (const Vec4& v : mesh.vertices()) {
    out << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << v[3] << '\n';
  }
  for (const Triangle& t : mesh.triangles()) {
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_s3off_file(const std::string& path, const SphericalTriMesh& mesh) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw MeshError("S3OFF: cannot write " + tmp);
    write_s3off(out, mesh);
    if (!out) throw MeshError("S3OFF: write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw MeshError("S3OFF: cannot move " + tmp + " to " + path);
  }
}

}  // namespace sphere_spectra
