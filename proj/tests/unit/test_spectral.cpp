#include <doctest.h>

#include <cmath>
#include <random>

#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/laplacian.hpp"
#include "sphere_spectra/mesh.hpp"
#include "sphere_spectra/shape_operator.hpp"
#include "sphere_spectra/spectral.hpp"

using namespace sphere_spectra;

namespace {

Eigen::VectorXd sample(const SphericalTriMesh& m, int coord) {
  Eigen::VectorXd x(m.vertex_count());
  for (std::size_t i = 0; i < m.vertex_count(); ++i) x(i) = m.vertices()[i](coord);
  return x;
}

}  // namespace

TEST_CASE("Laplacian assembly invariants") {
  const SphericalTriMesh m = gen_geodesic_sphere(M_PI / 2, 4);
  const LaplacePair p = assemble_laplacian(m);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(p.mass.size());
  const double scale = p.stiffness.coeffs().cwiseAbs().maxCoeff();
  CHECK((p.stiffness * ones).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  const SparseMatrix asym = SparseMatrix(p.stiffness.transpose()) - p.stiffness;
  CHECK(asym.norm() <= 1e-12 * p.stiffness.norm());
  const std::vector<double> areas = triangle_areas(m);
  double total = 0.0;
  for (double a : areas) total += a;
  CHECK(p.mass.sum() == doctest::Approx(total).epsilon(1e-12));
  CHECK((p.mass.array() > 0).all());
}

TEST_CASE("Rayleigh quotients of analytic first modes") {
  const SphericalTriMesh c = gen_clifford_torus(64, 64);
  const LaplacePair p = assemble_laplacian(c);
  // x1 = cos(theta)/sqrt(2) is a first Fourier mode of the flat torus.
  CHECK(rayleigh_quotient(sample(c, 0), p) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(rayleigh_quotient(sample(c, 3), p) == doctest::Approx(2.0).epsilon(0.02));
  CHECK_THROWS_AS(rayleigh_quotient(Eigen::VectorXd::Ones(p.mass.size()), p), DomainError);
}

TEST_CASE("equator spectrum: spherical harmonics oracle") {
  const LaplacePair p = assemble_laplacian(gen_geodesic_sphere(M_PI / 2, 5));
  const EigenResult r = smallest_nonzero_eig(p);
  CHECK(r.lambda1 == doctest::Approx(2.0).epsilon(0.01));
  CHECK(r.multiplicity == 3);
  CHECK(r.residual <= 1e-8);
  CHECK(std::abs(p.mass.dot(r.eigenvector)) <= 1e-10 * std::sqrt(p.mass.sum()));
  CHECK(rayleigh_quotient(r.eigenvector, p) == doctest::Approx(r.lambda1).epsilon(1e-8));
}

TEST_CASE("flat torus r = 1/2: product Fourier oracle") {
  const EigenResult r = smallest_nonzero_eig(assemble_laplacian(gen_flat_torus(0.5, 96, 96)));
  CHECK(r.lambda1 == doctest::Approx(4.0 / 3.0).epsilon(0.015));
  CHECK(r.multiplicity == 2);
}

TEST_CASE("Rayleigh upper bound for random vectors") {
  const LaplacePair p = assemble_laplacian(gen_clifford_torus(32, 32));
  const EigenResult r = smallest_nonzero_eig(p);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd x(p.mass.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
    CHECK(r.lambda1 <= rayleigh_quotient(x, p) + r.residual * r.lambda1);
  }
}

TEST_CASE("scale equivariance") {
  const LaplacePair p = assemble_laplacian(gen_clifford_torus(32, 32));
  const double base = smallest_nonzero_eig(p).lambda1;
  LaplacePair both = p;
  both.stiffness *= 3.7;
  both.mass *= 3.7;
  CHECK(smallest_nonzero_eig(both).lambda1 == doctest::Approx(base).epsilon(1e-9));
  LaplacePair mass_only = p;
  mass_only.mass *= 2.5;
  CHECK(smallest_nonzero_eig(mass_only).lambda1 == doctest::Approx(base / 2.5).epsilon(1e-9));
}

TEST_CASE("determinism and seeding") {
  const LaplacePair p = assemble_laplacian(gen_flat_torus(0.4, 32, 32));
  EigenOptions o;
  o.seed = 99;
  const EigenResult a = smallest_nonzero_eig(p, o);
  const EigenResult b = smallest_nonzero_eig(p, o);
  CHECK(a.iterations == b.iterations);
  CHECK(a.lambda1 == b.lambda1);
  CHECK(a.eigenvector == b.eigenvector);
  o.seed = 100;
  CHECK(smallest_nonzero_eig(p, o).lambda1 == doctest::Approx(a.lambda1).epsilon(1e-7));
}

TEST_CASE("solver contract errors") {
  const LaplacePair p = assemble_laplacian(gen_clifford_torus(16, 16));
  EigenOptions o;
  o.tol = 1e-13;
  CHECK_THROWS_AS(smallest_nonzero_eig(p, o), DomainError);
  o.tol = 1e-12;
  o.max_iter = 1;
  try {
    smallest_nonzero_eig(p, o);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_lambda() > 0.0);
    CHECK(e.achieved() > 1e-12);
    CHECK(!e.best_vector().empty());
  }
}
