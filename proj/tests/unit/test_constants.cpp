#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

#include "sphere_spectra/constants.hpp"
#include "sphere_spectra/errors.hpp"

using namespace sphere_spectra;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Taylor series for arctan in 50-digit arithmetic; |x| <= 1/(3 sqrt 2) converges fast.
Big arctan_series(const Big& x) {
  Big term = x;
  Big sum = 0;
  const Big x2 = x * x;
  for (int k = 0; k < 400; ++k) {
    const Big add = term / (2 * k + 1);
    sum += (k % 2 == 0) ? add : -add;
    if (abs(add) < Big("1e-45")) break;
    term *= x2;
  }
  return sum;
}

struct BigConstants {
  Big factor, a, b;
};

BigConstants oracle_constants(int n) {
  const Big sn = sqrt(Big(n));
  const Big at = arctan_series(1 / (3 * sn));
  const Big cube = at * at * at;
  const Big n72 = pow(Big(n), Big(3.5));
  return {pow(Big(n), Big(1.5)) * cube, 3 * Big(n - 1) * n72 / 3200 * cube, 5 * n72 / 8 * cube};
}

// Closed forms of I_Lambda for n = 2.
double tube_closed_form(double lambda) {
  const double T = std::atan(1.0 / lambda);
  // (cos t - L sin t)^2 = cos^2 - 2 L sin cos + L^2 sin^2
  return (T / 2 + std::sin(2 * T) / 4) - lambda * std::sin(T) * std::sin(T) +
         lambda * lambda * (T / 2 - std::sin(2 * T) / 4);
}

}  // namespace

TEST_CASE("arctan factor agrees with a 50-digit series oracle") {
  for (int n : {2, 3, 4, 7, 16, 64, 1000}) {
    const double want = static_cast<double>(oracle_constants(n).factor);
    CHECK(arctan_cubed_factor(n) == doctest::Approx(want).epsilon(1e-15));
  }
  CHECK(arctan_cubed_factor(2) == doctest::Approx(0.035083).epsilon(1e-5));
}

TEST_CASE("arctan factor stays in [7/200, 1/27] and increases on a log grid") {
  double prev = 0.0;
  for (double e = std::log(2.0); e <= std::log(1e6) + 1e-12; e += 0.05) {
    const int n = static_cast<int>(std::lround(std::exp(e)));
    const double f = arctan_cubed_factor(n);
    CHECK(f >= 7.0 / 200.0);
    CHECK(f <= 1.0 / 27.0);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK(1.0 / 27.0 - arctan_cubed_factor(1'000'000) < 1e-6);
}

TEST_CASE("bound constants match the high-precision oracle") {
  for (int n = 2; n <= 64; ++n) {
    const BigConstants o = oracle_constants(n);
    const BoundConstants c = compute_bound_constants(n);
    CHECK(c.a == doctest::Approx(static_cast<double>(o.a)).epsilon(1e-14));
    CHECK(c.b == doctest::Approx(static_cast<double>(o.b)).epsilon(1e-14));
    CHECK(c.c == doctest::Approx(25.0 / 3.0 * std::pow(1.25, n - 2)).epsilon(1e-15));
  }
  const BoundConstants c2 = compute_bound_constants(2);
  CHECK(c2.a == doctest::Approx(1.3156e-4).epsilon(1e-4));
  CHECK(c2.b == doctest::Approx(0.087704).epsilon(1e-4));
}

TEST_CASE("floors and ceilings hold with strict relative margin for n = 2..64") {
  for (int n = 2; n <= 64; ++n) {
    const BoundConstants c = compute_bound_constants(n);
    const double floor = (n - 1.0) * n * n / 32000.0;
    const double ceiling = 5.0 * n * n / 216.0;
    CHECK(c.a - floor > 1e-12 * floor);
    CHECK(ceiling - c.b > 1e-12 * ceiling);
    CHECK(a_floor(n) == doctest::Approx(floor));
    CHECK(b_ceiling(n) == doctest::Approx(ceiling));
  }
  CHECK(compute_bound_constants(2).a >= 1.25e-4);
  CHECK(compute_bound_constants(2).b <= 20.0 / 216.0);
  CHECK(compute_bound_constants(3).a >= 5.625e-4);
}

TEST_CASE("dimension below 2 is a domain error") {
  CHECK_THROWS_AS(arctan_cubed_factor(1), DomainError);
  CHECK_THROWS_AS(compute_bound_constants(0), DomainError);
  CHECK_THROWS_AS(eigenvalue_lower_bound(1, 3.0), DomainError);
  CHECK_THROWS_AS(eigenvalue_lower_bound(2, -0.1), DomainError);
}

TEST_CASE("eigenvalue lower bound") {
  CHECK(eigenvalue_lower_bound(2, 0.0) == 2.0);
  CHECK(eigenvalue_lower_bound(3, 1.2) == 3.0);
  const BigConstants o = oracle_constants(2);
  const double want = 1.0 + static_cast<double>(o.a / (8 + o.b));
  CHECK(eigenvalue_lower_bound(2, std::sqrt(2.0)) == doctest::Approx(want).epsilon(1e-14));
  CHECK(eigenvalue_lower_bound(2, std::sqrt(2.0)) == doctest::Approx(1.0000163).epsilon(1e-7));
  CHECK(eigenvalue_lower_bound(2, 1e4) - 1.0 < 1e-20);
  CHECK(eigenvalue_lower_bound(2, 20.0) > 1.0);
  CHECK(eigenvalue_lower_bound(2, 20.0) < eigenvalue_lower_bound(2, 10.0));

  SUBCASE("strictly between n/2 and n above the branch point") {
    for (int n : {2, 3, 5, 10, 40}) {
      for (double scale : {1.0, 1.0001, 1.5, 3.0, 50.0}) {
        const double v = eigenvalue_lower_bound(n, scale * std::sqrt(double(n)));
        CHECK(v > n / 2.0);
        CHECK(v < n);
      }
      CHECK(eigenvalue_lower_bound(n, 0.99 * std::sqrt(double(n))) == n);
    }
  }
}

TEST_CASE("parameter chain for the Clifford data") {
  const double L = std::sqrt(2.0);
  const ParameterChain c = build_parameter_chain(2, L, L / 3, L / 20);
  CHECK(c.valid);
  CHECK(c.gamma >= 3 * std::sqrt(2.0) / 100);
  CHECK(c.delta == doctest::Approx(2 * static_cast<double>(arctan_series(1 / (3 * sqrt(Big(2)))))).epsilon(1e-15));
  CHECK(c.delta == doctest::Approx(0.462954).epsilon(1e-6));
  CHECK(c.shell_width == doctest::Approx(c.delta / 4).epsilon(1e-15));
  CHECK(c.d_eps == doctest::Approx(std::atan(c.eps / 2)).epsilon(1e-15));
  CHECK(c.shell_width < c.d_eps);
  CHECK(c.eps_tilde == doctest::Approx(L).epsilon(1e-14));
  CHECK_THROWS_AS(build_parameter_chain(2, L, 0.8 * L, 0.1), PreconditionError);
}

TEST_CASE("default chain keeps gamma >= 3 sqrt(n)/100 and T <= D_eps/2") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(1.0, 20.0);
  for (int n = 2; n <= 12; ++n) {
    for (int k = 0; k < 20; ++k) {
      const double L = scale(rng) * std::sqrt(double(n));
      const ParameterChain c = default_parameter_chain(n, L);
      CHECK(c.valid);
      CHECK(c.gamma >= 3 * std::sqrt(double(n)) / 100);
      CHECK(c.shell_width <= c.d_eps / 2 * (1 + 1e-12));
      CHECK(c.eps <= L / 2);
    }
  }
}

TEST_CASE("degenerate chain is tagged, not thrown") {
  const ParameterChain c = build_parameter_chain(2, 2.0, 1.0, 5.0);
  CHECK_FALSE(c.valid);
  CHECK(c.gamma <= 0.0);
}

TEST_CASE("chain constants satisfy the rational identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + static_cast<int>(u(rng) * 10);
    const double L = std::sqrt(double(n)) * (1 + 5 * u(rng));
    const double eps = L / 2 * (0.05 + 0.95 * u(rng));
    const double beta = 0.01 + 0.2 * u(rng);
    const ParameterChain c = build_parameter_chain(n, L, eps, beta);
    const double l6 = std::pow(L, 6);
    const double d3 = std::pow(c.delta, 3);
    const double lhs = c.a / (l6 + c.b);
    const double rhs = c.gamma * beta * (n - 1) * d3 / (32 * beta * l6 + (n - 1) * d3);
    CHECK(std::abs(lhs - rhs) <= 1e-14 * std::abs(rhs) + 1e-300);
  }
}

TEST_CASE("tube integral against closed forms") {
  CHECK(std::abs(tube_integral(2, 1.0) - (M_PI / 4 - 0.5)) <= 1e-10);
  CHECK(std::abs(tube_integral(2, std::sqrt(2.0)) - tube_closed_form(std::sqrt(2.0))) <= 1e-10);
  CHECK(tube_integral(2, std::sqrt(2.0)) == doctest::Approx(0.216112).epsilon(1e-6));
  for (double L = 0.25; L <= 10.0; L += 0.25) {
    CHECK(std::abs(tube_integral(2, L) - tube_closed_form(L)) <= 1e-10);
    for (int n : {2, 3, 4, 6}) {
      CHECK(tube_integral(n, L) >= 5.0 / 54.0 * std::pow(0.9, 2 * n) / L);
    }
  }
}

TEST_CASE("volume bound") {
  const VolumeBound v = volume_upper_bound(2, std::sqrt(2.0));
  CHECK(v.ambient_volume == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-15));
  CHECK(v.sharp == doctest::Approx(45.672).epsilon(2e-4));
  CHECK(2 * M_PI * M_PI <= v.sharp);
  const VolumeBound q = volume_upper_bound(2, 0.25);
  REQUIRE(q.crude.has_value());
  CHECK(*q.crude == doctest::Approx(25.0 / 3.0 * 0.25 * 2 * M_PI * M_PI).epsilon(1e-14));
  // The derivation gives (27/5)(10/9)^4 for n = 2, below the stated ceiling.
  CHECK(27.0 / 5.0 * std::pow(10.0 / 9.0, 4) <= compute_bound_constants(2).c);
  CHECK(q.sharp <= *q.crude);
  CHECK(q.sharp_within_crude);
  CHECK_FALSE(volume_upper_bound(2, 0.2).crude.has_value());
  CHECK(unit_sphere_volume(3) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-15));
  CHECK(unit_sphere_volume(2) == doctest::Approx(4 * M_PI).epsilon(1e-15));
}
