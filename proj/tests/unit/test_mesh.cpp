#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/laplacian.hpp"
#include "sphere_spectra/mesh.hpp"
#include "sphere_spectra/shape_operator.hpp"
#include "sphere_spectra/sphere_geometry.hpp"

using namespace sphere_spectra;

namespace {

double max_vertex_gap(const SphericalTriMesh& a, const SphericalTriMesh& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    gap = std::max(gap, (a.vertices()[i] - b.vertices()[i]).norm());
  }
  return gap;
}

}  // namespace

TEST_CASE("Clifford torus generator") {
  const SphericalTriMesh m = gen_clifford_torus(64, 64);
  CHECK(m.vertex_count() == 4096);
  const MeshTopology topo = validate_mesh(m);
  CHECK(topo.euler_characteristic == 0);
  CHECK(topo.genus == 1);
  CHECK(topo.edges == 3 * 4096);
  double area = 0.0;
  for (double a : triangle_areas(m)) area += a;
  CHECK(std::abs(area - 2 * M_PI * M_PI) <= 0.005 * 2 * M_PI * M_PI);
  REQUIRE(m.analytic());
  CHECK(m.analytic()->max_abs_mean_curvature() == 0.0);
  CHECK(m.analytic()->lambda_max() == doctest::Approx(std::sqrt(2.0)));
  for (const Vec4& v : m.vertices()) CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  CHECK_THROWS_AS(gen_clifford_torus(4, 64), PreconditionError);
}

TEST_CASE("flat torus generator") {
  const SphericalTriMesh half = gen_flat_torus(0.5, 32, 32);
  REQUIRE(half.analytic());
  CHECK(half.analytic()->min_mean_curvature() == doctest::Approx(2 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(*half.analytic()->area == doctest::Approx(M_PI * M_PI * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(validate_mesh(half).genus == 1);

  const SphericalTriMesh a = gen_flat_torus(M_SQRT1_2, 32, 32);
  const SphericalTriMesh b = gen_clifford_torus(32, 32);
  CHECK(max_vertex_gap(a, b) <= 1e-15);
  CHECK(a.analytic()->max_abs_mean_curvature() <= 1e-15);
  CHECK(gen_flat_torus(0.8, 16, 16).analytic()->min_mean_curvature() < 0.0);
  CHECK_THROWS_AS(gen_flat_torus(1.0, 16, 16), PreconditionError);
}

TEST_CASE("geodesic sphere generator") {
  const SphericalTriMesh eq = gen_geodesic_sphere(M_PI / 2, 5);
  CHECK(validate_mesh(eq).genus == 0);
  double area = 0.0;
  for (double a : triangle_areas(eq)) area += a;
  CHECK(std::abs(area - 4 * M_PI) <= 0.005 * 4 * M_PI);
  CHECK(eq.analytic()->lambda_max() == 0.0);
  CHECK(eq.analytic()->family == "equator");

  const SphericalTriMesh q = gen_geodesic_sphere(M_PI / 4, 3);
  CHECK(q.analytic()->min_mean_curvature() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(q.analytic()->lambda_max() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(*gen_geodesic_sphere(M_PI / 6, 3).analytic()->area == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK_THROWS_AS(gen_geodesic_sphere(M_PI / 4, 2), PreconditionError);
  CHECK_THROWS_AS(gen_geodesic_sphere(2.0, 3), PreconditionError);
}

TEST_CASE("mesh validation rejects broken input") {
  std::vector<Vec4> v{Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1)};
  // Open surface: one triangle.
  CHECK_THROWS_AS(validate_mesh(SphericalTriMesh(v, {{0, 1, 2}})), MeshError);
  // Closed tetrahedron boundary with one face flipped.
  CHECK_THROWS_AS(validate_mesh(SphericalTriMesh(v, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 1}})), MeshError);
  CHECK_NOTHROW(validate_mesh(SphericalTriMesh(v, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}})));
  // Non-unit vertex.
  std::vector<Vec4> bad = v;
  bad[0] = Vec4(1.1, 0, 0, 0);
  CHECK_THROWS_AS(validate_mesh(SphericalTriMesh(bad, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}})), MeshError);
  // Declared genus mismatch.
  SphericalTriMesh tet(v, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}});
  tet.set_declared_genus(1);
  CHECK_THROWS_AS(validate_mesh(tet), MeshError);
}

TEST_CASE("degenerate triangles are named") {
  std::vector<Vec4> v{Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1),
                      Vec4(1, 0, 0, 0)};
  SphericalTriMesh m(v, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 4}, {0, 4, 2}, {0, 2, 4}});
  try {
    assemble_laplacian(m);
    FAIL("expected MeshQualityError or MeshError");
  } catch (const MeshQualityError& e) {
    CHECK(e.triangle() >= 0);
  } catch (const MeshError&) {
  }
}

TEST_CASE("S3OFF round trip") {
  const SphericalTriMesh m = gen_flat_torus(0.4, 12, 16);
  std::stringstream buf;
  write_s3off(buf, m);
  const std::string text = buf.str();
  CHECK(text.rfind("S3OFF\n192 384\n", 0) == 0);
  const SphericalTriMesh back = read_s3off(buf);
  REQUIRE(back.vertex_count() == m.vertex_count());
  CHECK(back.triangles() == m.triangles());
  CHECK(max_vertex_gap(back, m) == 0.0);
}

TEST_CASE("S3OFF reader rejects malformed files") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_s3off(in);
  };
  CHECK_THROWS_AS(parse("OFF\n0 0\n"), MeshError);
  CHECK_THROWS_AS(parse("S3OFF\n1 0\n1 0 0\n"), MeshError);
  CHECK_THROWS_AS(parse("S3OFF\n1 0\n2 0 0 0\n"), MeshError);
  CHECK_THROWS_AS(parse("S3OFF\n3 1\n1 0 0 0\n0 1 0 0\n0 0 1 0\n3 0 1 7\n"), MeshError);
  CHECK_THROWS_AS(parse("S3OFF\n3 1\n1 0 0 0\n0 1 0 0\n0 0 1 0\n4 0 1 2 0\n"), MeshError);
}

TEST_CASE("offsets of the Clifford torus are flat tori") {
  const SphericalTriMesh c = gen_clifford_torus(32, 32);
  for (double t : {0.1, 0.3, 0.6}) {
    const SphericalTriMesh off = offset_mesh(c, t);
    CHECK(max_vertex_gap(off, gen_flat_torus(std::cos(M_PI / 4 + t), 32, 32)) <= 1e-9);
    REQUIRE(off.analytic());
    CHECK(off.analytic()->min_mean_curvature() == doctest::Approx(2 * std::tan(2 * t)).epsilon(1e-12));
  }
  CHECK(max_vertex_gap(offset_mesh(c, 0.0), c) == 0.0);
  CHECK(mesh_horizon(c) == doctest::Approx(M_PI / 4));
  CHECK_THROWS_AS(offset_mesh(c, 0.8), SingularityError);
}

TEST_CASE("offset of the equator is a geodesic sphere") {
  const SphericalTriMesh eq = gen_geodesic_sphere(M_PI / 2, 3);
  CHECK(std::isinf(mesh_horizon(eq)));
  CHECK(max_vertex_gap(offset_mesh(eq, M_PI / 4), gen_geodesic_sphere(M_PI / 4, 3)) <= 1e-12);
}

TEST_CASE("tube volume over the horizon never exceeds Vol(S^3)") {
  for (const SphericalTriMesh& m : {gen_clifford_torus(16, 16), gen_flat_torus(0.4, 16, 16),
                                    gen_flat_torus(0.6, 16, 16), gen_geodesic_sphere(M_PI / 3, 3),
                                    gen_geodesic_sphere(M_PI / 2, 3)}) {
    const AnalyticSurface& a = *m.analytic();
    const double area = *a.area;
    const PrincipalCurvatureSet k = a.at(0);
    const double horizon = std::min(embeddedness_horizon(k), M_PI / 2);
    const std::vector<TubeEntry> entry{{area, k}};
    const double plus = tube_volume(entry, horizon, TubeSide::Plus);
    const double minus = tube_volume(entry, horizon, TubeSide::Minus);
    CHECK(plus <= 2 * M_PI * M_PI * (1 + 1e-12));
    CHECK(minus <= 2 * M_PI * M_PI * (1 + 1e-12));
  }
}

TEST_CASE("rigid motions and merging") {
  Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
  rot(0, 0) = rot(2, 2) = std::cos(0.3);
  rot(0, 2) = -std::sin(0.3);
  rot(2, 0) = std::sin(0.3);
  const SphericalTriMesh c = gen_clifford_torus(16, 16);
  const SphericalTriMesh moved = transform_mesh(c, rot);
  CHECK(moved.vertex_count() == c.vertex_count());
  const SphericalTriMesh both = merge_meshes(gen_geodesic_sphere(M_PI / 6, 3), gen_geodesic_sphere(M_PI / 3, 3));
  const MeshTopology topo = validate_mesh(both);
  CHECK(topo.components == 2);
  CHECK(topo.genus == 0);
}
