#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/sphere_geometry.hpp"

using namespace sphere_spectra;

namespace {

Eigen::VectorXd e(int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("ambient points and normals validate their invariants") {
  CHECK_NOTHROW(AmbientPoint(e(0)));
  CHECK_THROWS_AS(AmbientPoint(Eigen::Vector4d(1, 1, 0, 0)), PreconditionError);
  const AmbientPoint p(e(0));
  CHECK_THROWS_AS(UnitNormal(e(0), p), PreconditionError);
  CHECK_THROWS_AS(UnitNormal(Eigen::Vector4d(0, 2, 0, 0), p), PreconditionError);
  CHECK_NOTHROW(UnitNormal(e(1), p));
}

TEST_CASE("normal geodesic points") {
  const AmbientPoint p(e(0));
  const UnitNormal x(e(1), p);
  CHECK((normal_geodesic_point(p, x, 0.0).coordinates() - e(0)).norm() < 1e-15);
  CHECK((normal_geodesic_point(p, x, M_PI / 2).coordinates() - e(1)).norm() < 1e-15);
  const Eigen::VectorXd mid = normal_geodesic_point(x, M_PI / 4).coordinates();
  CHECK((mid - Eigen::Vector4d(M_SQRT1_2, M_SQRT1_2, 0, 0)).norm() < 1e-15);
  CHECK_THROWS_AS(normal_geodesic_point(AmbientPoint(e(2)), x, 0.1), PreconditionError);
}

TEST_CASE("curvature transport") {
  CHECK(curvature_transport(0.0, 0.3) == doctest::Approx(std::tan(0.3)).epsilon(1e-15));
  CHECK(curvature_transport(1.0, std::atan(1.0 / 3.0)) == doctest::Approx(2.0).epsilon(1e-15));
  try {
    curvature_transport(1.0, M_PI / 4);
    FAIL("expected a SingularityError");
  } catch (const SingularityError& err) {
    CHECK(err.critical_t() == doctest::Approx(M_PI / 4));
  }
  CHECK_THROWS_AS(curvature_transport(-2.0, -std::atan(0.5)), SingularityError);
  CHECK_NOTHROW(curvature_transport(-2.0, 0.4));
  CHECK_THROWS_AS(curvature_transport(0.0, M_PI / 2), SingularityError);
}

TEST_CASE("curvature transport composes additively") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> k(-3.0, 3.0);
  std::uniform_real_distribution<double> t(-0.6, 0.6);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const double kappa = k(rng), s = t(rng), u = t(rng);
    const double a0 = std::atan(kappa);
    // Transport is defined up to the focal distance on the side the curvature faces.
    auto admissible = [](double k0, double dt) {
      if (k0 * dt <= 0.0) return std::abs(dt) < M_PI / 2;
      return std::abs(dt) < std::atan(1.0 / std::abs(k0)) - 0.05;
    };
    if (!admissible(kappa, s) || !admissible(kappa, s + u)) continue;
    if (!admissible(std::tan(a0 + s), u)) continue;
    const double lhs = curvature_transport(curvature_transport(kappa, s), u);
    const double rhs = curvature_transport(kappa, s + u);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)) * 100);
    CHECK(rhs == doctest::Approx(std::tan(a0 + s + u)).epsilon(1e-10));
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("embeddedness horizon") {
  CHECK(embeddedness_horizon(PrincipalCurvatureSet({1.0, -1.0})) == doctest::Approx(M_PI / 4).epsilon(1e-15));
  CHECK(embeddedness_horizon(PrincipalCurvatureSet({2.0, -1.0})) == doctest::Approx(0.463648).epsilon(1e-6));
  CHECK(std::isinf(embeddedness_horizon(PrincipalCurvatureSet({0.0, 0.0}))));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> k(-2.0, 2.0);
  std::uniform_real_distribution<double> s(1.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const PrincipalCurvatureSet set({k(rng), k(rng), k(rng)});
    CHECK(embeddedness_horizon(set.scaled(s(rng))) <= embeddedness_horizon(set));
  }
}

TEST_CASE("offset mean curvature") {
  const PrincipalCurvatureSet clifford({1.0, -1.0});
  for (double t : {0.05, 0.2, 0.4, 0.7}) {
    CHECK(offset_mean_curvature(clifford, t) == doctest::Approx(2 * std::tan(2 * t)).epsilon(1e-13));
  }
  CHECK(offset_mean_curvature(clifford, 0.0) == 0.0);
  CHECK_THROWS_AS(offset_mean_curvature(clifford, 0.8), SingularityError);

  const double r = 1.0;
  const double cot = 1.0 / std::tan(r);
  for (double t : {0.1, 0.3, 0.5}) {
    CHECK(offset_mean_curvature(PrincipalCurvatureSet({cot, cot}), t) ==
          doctest::Approx(2.0 / std::tan(r - t)).epsilon(1e-13));
  }
}

TEST_CASE("minimal sets become strictly mean-convex after offsetting") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> k(-2.5, 2.5);
  std::uniform_real_distribution<double> frac(0.001, 0.999);
  for (int i = 0; i < 500; ++i) {
    const double a = k(rng), b = k(rng);
    const PrincipalCurvatureSet set({a, b, -(a + b)});
    REQUIRE(set.is_minimal(1e-12));
    const double t = frac(rng) * embeddedness_horizon(set);
    const double tt = std::tan(t);
    const double floor = (3 + set.norm_a() * set.norm_a()) * tt * (1 - tt * set.kappa_max());
    const double h = offset_mean_curvature(set, t);
    CHECK(h > 0.0);
    CHECK(h >= floor * (1 - 1e-12));
    double simplified = 0.0;
    for (double kap : set.kappas()) simplified += (1 + kap * kap) * tt / (1 - kap * tt);
    CHECK(h == doctest::Approx(simplified).epsilon(1e-10));
  }
}

TEST_CASE("offset mean curvature bound") {
  const double L = std::sqrt(2.0);
  CHECK(offset_mean_curvature_bound(2, L, L / 3) == doctest::Approx(L).epsilon(1e-14));
  CHECK(offset_mean_curvature_bound(2, L, L / 2) == doctest::Approx(2 * L).epsilon(1e-14));
  const double d_eps = std::atan(L / 3 / 2);
  CHECK(2 * std::tan(2 * d_eps) <= offset_mean_curvature_bound(2, L, L / 3));
  CHECK_THROWS_AS(offset_mean_curvature_bound(2, L, 0.9 * L), PreconditionError);
}

TEST_CASE("curvature set predicates") {
  const PrincipalCurvatureSet s({1.0, -1.0});
  CHECK(s.is_minimal());
  CHECK(s.is_mean_convex());
  CHECK(s.norm_a() == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.kappa_max() == 1.0);
  CHECK_FALSE(PrincipalCurvatureSet({-1.0, 0.5}).is_mean_convex());
}

TEST_CASE("tube volumes") {
  const std::vector<TubeEntry> equator{{4 * M_PI, PrincipalCurvatureSet({0.0, 0.0})}};
  CHECK(tube_volume(equator, M_PI / 2, TubeSide::Plus) == doctest::Approx(M_PI * M_PI).epsilon(1e-12));
  CHECK(tube_volume(equator, M_PI / 2, TubeSide::Minus) == doctest::Approx(M_PI * M_PI).epsilon(1e-12));
  CHECK(tube_volume(equator, 0.0, TubeSide::Plus) == 0.0);

  const std::vector<TubeEntry> clifford{{2 * M_PI * M_PI, PrincipalCurvatureSet({1.0, -1.0})}};
  const double both = tube_volume(clifford, M_PI / 4, TubeSide::Plus) +
                      tube_volume(clifford, M_PI / 4, TubeSide::Minus);
  CHECK(both == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-12));
  CHECK_THROWS_AS(tube_volume(clifford, 0.9, TubeSide::Plus), PreconditionError);

  // Entry order does not change the sum beyond round-off.
  std::vector<TubeEntry> many;
  for (int i = 0; i < 50; ++i) many.push_back({0.1 + 0.01 * i, PrincipalCurvatureSet({0.3, -0.3 + 0.001 * i})});
  const double forward = tube_volume(many, 0.5, TubeSide::Plus);
  std::vector<TubeEntry> reversed(many.rbegin(), many.rend());
  CHECK(tube_volume(reversed, 0.5, TubeSide::Plus) == doctest::Approx(forward).epsilon(1e-14));
}
