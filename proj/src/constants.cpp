#include "sphere_spectra/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/quadrature.hpp"

namespace sphere_spectra {
namespace {

void require_dimension(int n, const char* op) {
  if (n < 2) {
    std::ostringstream msg;
    msg << op << ": dimension n = " << n << " must be at least 2";
    throw DomainError(msg.str());
  }
}

void require_positive_lambda(double lambda, const char* op) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream msg;
    msg << op << ": Lambda = " << lambda << " must be positive and finite";
    throw DomainError(msg.str());
  }
}

constexpr double kGeodesicBranchSlack = 1e-8;

}  // namespace

DimensionContext::DimensionContext(int n) : n_(n) { require_dimension(n, "DimensionContext"); }

double DimensionContext::sqrt_n() const noexcept { return std::sqrt(static_cast<double>(n_)); }

double DimensionContext::ambient_volume() const { return unit_sphere_volume(n_ + 1); }

double unit_sphere_volume(int k) {
  if (k < 0) throw DomainError("unit_sphere_volume: negative dimension");
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double arctan_cubed_factor(int n) {
  require_dimension(n, "arctan_cubed_factor");
  const double root = std::sqrt(static_cast<double>(n));
  const double angle = std::atan(1.0 / (3.0 * root));
  return n * root * angle * angle * angle;
}

BoundConstants compute_bound_constants(int n) {
  require_dimension(n, "compute_bound_constants");
  const double factor = arctan_cubed_factor(n);
  // n^{7/2} arctan^3 = n^2 * (n^{3/2} arctan^3)
  const double n2 = static_cast<double>(n) * n;
  BoundConstants out;
  out.a = 3.0 * (n - 1) * n2 / 3200.0 * factor;
  out.b = 5.0 * n2 / 8.0 * factor;
  out.c = 25.0 / 3.0 * std::pow(1.25, n - 2);
  return out;
}

double a_floor(int n) {
  require_dimension(n, "a_floor");
  return (n - 1) * static_cast<double>(n) * n / 32000.0;
}

double b_ceiling(int n) {
  require_dimension(n, "b_ceiling");
  return 5.0 * n * n / 216.0;
}

bool is_totally_geodesic_branch(int n, double lambda) {
  require_dimension(n, "is_totally_geodesic_branch");
  return lambda < std::sqrt(static_cast<double>(n)) * (1.0 - kGeodesicBranchSlack);
}

double eigenvalue_lower_bound(int n, double lambda) {
  require_dimension(n, "eigenvalue_lower_bound");
  if (!(lambda >= 0.0) || std::isnan(lambda)) {
    throw DomainError("eigenvalue_lower_bound: Lambda must be nonnegative");
  }
  if (is_totally_geodesic_branch(n, lambda)) return static_cast<double>(n);
  if (std::isinf(lambda)) return 0.5 * n;
  const BoundConstants k = compute_bound_constants(n);
  const double l2 = lambda * lambda;
  return 0.5 * n + k.a / (l2 * l2 * l2 + k.b);
}

double default_eps(int n) {
  require_dimension(n, "default_eps");
  return std::sqrt(static_cast<double>(n)) / 3.0;
}

double default_beta(int n) {
  require_dimension(n, "default_beta");
  return std::sqrt(static_cast<double>(n)) / 20.0;
}

ParameterChain build_parameter_chain(int n, double lambda, double eps, double beta) {
  require_dimension(n, "build_parameter_chain");
  require_positive_lambda(lambda, "build_parameter_chain");
  if (!(eps > 0.0) || eps > 0.5 * lambda) {
    std::ostringstream msg;
    msg << "build_parameter_chain: need 0 < eps <= Lambda/2, got eps = " << eps
        << ", Lambda = " << lambda;
    throw PreconditionError(msg.str());
  }
  if (!(beta > 0.0)) throw PreconditionError("build_parameter_chain: beta must be positive");

  ParameterChain c;
  c.n = n;
  c.lambda = lambda;
  c.eps = eps;
  c.beta = beta;
  const double l2 = lambda * lambda;
  c.eps_tilde = lambda * eps / (lambda - eps) * (n / l2 + 1.0);
  c.gamma = std::sqrt(2.0 * n) - c.eps_tilde - beta;
  c.delta = n * std::atan(eps / n);
  c.shell_width = c.delta / (2.0 * l2);
  c.d_eps = std::atan(eps / l2);
  const double d3 = c.delta * c.delta * c.delta;
  c.a = (n - 1) * d3 * c.gamma / 32.0;
  c.b = (n - 1) * d3 / (32.0 * beta);
  c.valid = c.gamma > 0.0;
  return c;
}

ParameterChain default_parameter_chain(int n, double lambda) {
  return build_parameter_chain(n, lambda, default_eps(n), default_beta(n));
}

double tube_integral(int n, double lambda) {
  require_dimension(n, "tube_integral");
  require_positive_lambda(lambda, "tube_integral");
  const double upper = std::atan(1.0 / lambda);
  // cos^n t (1 - Lambda tan t)^n = (cos t - Lambda sin t)^n, which stays
  // regular up to the end of the interval.
  auto integrand = [n, lambda](double t) {
    return std::pow(std::cos(t) - lambda * std::sin(t), n);
  };
  return integrate(integrand, 0.0, upper, {1e-10, 0.0, 1'000'000}).value;
}

VolumeBound volume_upper_bound(int n, double lambda) {
  require_dimension(n, "volume_upper_bound");
  require_positive_lambda(lambda, "volume_upper_bound");
  VolumeBound out;
  out.ambient_volume = unit_sphere_volume(n + 1);
  out.tube_integral = tube_integral(n, lambda);
  out.sharp = out.ambient_volume / (2.0 * out.tube_integral);
  if (lambda >= 0.25) {
    out.crude = compute_bound_constants(n).c * lambda * out.ambient_volume;
    out.sharp_within_crude = out.sharp <= *out.crude;
  }
  return out;
}

}  // namespace sphere_spectra
