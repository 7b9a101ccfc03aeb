#include "sphere_spectra/radial_oracles.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sphere_spectra/constants.hpp"
#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/quadrature.hpp"

namespace sphere_spectra {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kQuadTol = 1e-10;
constexpr int kHemisphereIntervals = 512;

void require_dimension(int n, const char* op) {
  if (n < 2) {
    std::ostringstream msg;
    msg << op << ": n = " << n << " must be at least 2";
    throw DomainError(msg.str());
  }
}

double cot(double r) { return std::cos(r) / std::sin(r); }

// |Hess v|^2 for a radial function: radial eigenvalue v'' and n tangential
// eigenvalues v' cot r.
double radial_hessian_sq(int n, double d1, double d2, double r) {
  const double tangential = d1 * cot(r);
  return d2 * d2 + n * tangential * tangential;
}

double radial_laplacian(int n, double d1, double d2, double r) { return d2 + n * cot(r) * d1; }

// Leading Frobenius correction of the regular branch: F = theta + a theta^3.
double series_coefficient(int n) { return n / (3.0 * (n + 3)); }

// The interpolant is only C^2 across knots, so integrate knot by knot.
double integrate_over_extension(const HemisphereExtension& ext, const RealFunction& f) {
  const auto& grid = ext.grid();
  const QuadratureOptions options{kQuadTol / static_cast<double>(grid.size()), 1e-12, 100'000};
  double sum = integrate(f, 0.0, grid.front(), options).value;
  double compensation = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double y = integrate(f, grid[i], grid[i + 1], options).value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

RadialProfile RadialProfile::radial_harmonic(int n) {
  require_dimension(n, "radial_harmonic");
  RadialProfile p;
  p.name = "radial-harmonic";
  p.domain = RadialDomain::Annulus;
  // v itself is an incomplete integral we never need; keep a placeholder.
  p.f = [](double) { return 0.0; };
  p.df = [n](double r) { return std::pow(std::sin(r), -n); };
  p.d2f = [n](double r) { return -n * cot(r) * std::pow(std::sin(r), -n); };
  p.d3f = [n](double r) {
    const double s = std::sin(r);
    const double c = std::cos(r);
    // d/dr (-n cos r sin^{-n-1} r)
    return n * std::pow(s, -n) + n * (n + 1) * c * c * std::pow(s, -n - 2);
  };
  return p;
}

RadialProfile RadialProfile::constant(double value) {
  RadialProfile p;
  p.name = "constant";
  p.f = [value](double) { return value; };
  p.df = [](double) { return 0.0; };
  p.d2f = [](double) { return 0.0; };
  p.d3f = [](double) { return 0.0; };
  return p;
}

std::vector<RadialProfile> RadialProfile::ball_profiles() {
  std::vector<RadialProfile> out;
  auto add = [&out](std::string name, RealFunction f, RealFunction df, RealFunction d2f) {
    RadialProfile p;
    p.name = std::move(name);
    p.f = std::move(f);
    p.df = std::move(df);
    p.d2f = std::move(d2f);
    out.push_back(std::move(p));
  };
  add("cos", [](double r) { return std::cos(r); }, [](double r) { return -std::sin(r); },
      [](double r) { return -std::cos(r); });
  add("r^2", [](double r) { return r * r; }, [](double r) { return 2.0 * r; },
      [](double) { return 2.0; });
  add("r^4", [](double r) { return r * r * r * r; }, [](double r) { return 4.0 * r * r * r; },
      [](double r) { return 12.0 * r * r; });
  add("cos2", [](double r) { return std::cos(2.0 * r); },
      [](double r) { return -2.0 * std::sin(2.0 * r); },
      [](double r) { return -4.0 * std::cos(2.0 * r); });
  add("gauss", [](double r) { return std::exp(-r * r); },
      [](double r) { return -2.0 * r * std::exp(-r * r); },
      [](double r) { return (4.0 * r * r - 2.0) * std::exp(-r * r); });
  add("r^2cos", [](double r) { return r * r * std::cos(r); },
      [](double r) { return 2.0 * r * std::cos(r) - r * r * std::sin(r); },
      [](double r) { return (2.0 - r * r) * std::cos(r) - 4.0 * r * std::sin(r); });
  return out;
}

double ball_volume_element(int n, double r) {
  if (n < 1) throw DomainError("ball_volume_element: n must be positive");
  if (r == 0.0) return 0.0;
  return unit_sphere_volume(n) * std::pow(std::sin(r), n);
}

BochnerReport verify_bochner_radial(int n, double r0, double r1) {
  return verify_bochner_radial(n, RadialProfile::radial_harmonic(n), r0, r1);
}

BochnerReport verify_bochner_radial(int n, const RadialProfile& v, double r0, double r1) {
  require_dimension(n, "verify_bochner_radial");
  if (!(0.0 < r0 && r0 < r1 && r1 < kPi)) {
    throw PreconditionError("verify_bochner_radial: need 0 < r0 < R < pi");
  }
  if (!v.d3f) throw PreconditionError("verify_bochner_radial: profile needs a third derivative");

  constexpr int kSamples = 10'000;
  BochnerReport report;
  report.samples = kSamples;
  for (int i = 0; i < kSamples; ++i) {
    const double r = r0 + (r1 - r0) * i / (kSamples - 1);
    const double d1 = v.df(r);
    const double d2 = v.d2f(r);
    const double d3 = v.d3f(r);
    // g = |grad v|^2 = v'^2, g' = 2 v' v'', g'' = 2 v''^2 + 2 v' v'''
    const double g1 = 2.0 * d1 * d2;
    const double g2 = 2.0 * d2 * d2 + 2.0 * d1 * d3;
    const double lhs = radial_laplacian(n, g1, g2, r);
    const double rhs = 2.0 * radial_hessian_sq(n, d1, d2, r) + 2.0 * n * d1 * d1;
    const double abs_res = std::abs(lhs - rhs);
    report.max_abs_residual = std::max(report.max_abs_residual, abs_res);
    report.max_rel_residual = std::max(report.max_rel_residual, abs_res / (1.0 + std::abs(lhs)));
  }
  return report;
}

ReillyReport verify_reilly_radial(int n, double radius, const RadialProfile& f, double quad_tol) {
  require_dimension(n, "verify_reilly_radial");
  if (!(radius > 0.0 && radius < kHalfPi)) {
    throw PreconditionError("verify_reilly_radial: need 0 < R < pi/2");
  }
  if (std::abs(f.df(0.0)) > 1e-12) {
    throw PreconditionError("verify_reilly_radial: profile must satisfy f'(0) = 0");
  }

  auto lhs_integrand = [n, &f](double r) {
    const double d1 = f.df(r);
    const double d2 = f.d2f(r);
    const double lap = radial_laplacian(n, d1, d2, r);
    return (lap * lap - radial_hessian_sq(n, d1, d2, r)) * ball_volume_element(n, r);
  };
  auto ricci_integrand = [n, &f](double r) {
    const double d1 = f.df(r);
    return n * d1 * d1 * ball_volume_element(n, r);
  };

  ReillyReport report;
  report.lhs = integrate(lhs_integrand, 0.0, radius, {quad_tol, 0.0, 1'000'000}).value;
  report.rhs_interior = integrate(ricci_integrand, 0.0, radius, {quad_tol, 0.0, 1'000'000}).value;
  // On Sigma_R the data is constant, so grad^Sigma u = 0 and Delta^Sigma u = 0.
  // With H = div(inward normal) = -n cot R the boundary term -H u_nu^2 is
  // +n cot R f'(R)^2 Area(Sigma_R).
  const double u_nu = f.df(radius);
  const double h = -n * cot(radius);
  report.rhs_boundary = -h * u_nu * u_nu * ball_volume_element(n, radius);
  report.rhs = report.rhs_interior + report.rhs_boundary;
  report.gap = std::abs(report.lhs - report.rhs);
  report.passed = report.gap <= 1e-8 * (1.0 + std::abs(report.lhs));
  return report;
}

InequalityReport verify_interior_gradient_radial(int n, double r0, double r1, double t) {
  return verify_interior_gradient_radial(n, r0, r1, t, RadialProfile::radial_harmonic(n));
}

InequalityReport verify_interior_gradient_radial(int n, double r0, double r1, double t,
                                                 const RadialProfile& v) {
  require_dimension(n, "verify_interior_gradient_radial");
  if (!(0.0 < r0 && r0 < r1 && r1 < kPi)) {
    throw PreconditionError("verify_interior_gradient_radial: need 0 < r0 < R < pi");
  }
  if (!(t > 0.0) || !(2.0 * t < 0.5 * (r1 - r0))) {
    throw PreconditionError("verify_interior_gradient_radial: need 0 < 2t < (R - r0) / 2");
  }
  auto grad = [n, &v](double r) {
    const double d1 = v.df(r);
    return d1 * d1 * ball_volume_element(n, r);
  };
  auto hess = [n, &v](double r) {
    return radial_hessian_sq(n, v.df(r), v.d2f(r), r) * ball_volume_element(n, r);
  };
  InequalityReport report;
  report.lhs = integrate_value(grad, r0 + 2.0 * t, r1 - 2.0 * t, kQuadTol);
  report.rhs = integrate_value(hess, r0, r1, kQuadTol) / ((n - 1) * t * t);
  report.slack = report.rhs - report.lhs;
  report.ratio = report.rhs > 0.0 ? report.lhs / report.rhs : 0.0;
  report.holds = report.slack >= -1e-12 * (1.0 + std::abs(report.rhs));
  return report;
}

HemisphereExtension::HemisphereExtension(int n, std::vector<double> grid,
                                         std::vector<double> values, std::vector<double> slopes,
                                         double series_scale)
    : n_(n),
      grid_(std::move(grid)),
      values_(std::move(values)),
      slopes_(std::move(slopes)),
      series_scale_(series_scale) {
  if (grid_.size() < 2 || grid_.size() != values_.size() || grid_.size() != slopes_.size()) {
    throw PreconditionError("HemisphereExtension: inconsistent grid data");
  }
  curvatures_.resize(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double th = grid_[i];
    const double s = std::sin(th);
    curvatures_[i] = -n_ * cot(th) * slopes_[i] + n_ * values_[i] / (s * s);
  }
}

double HemisphereExtension::interpolate(double theta, int derivative) const {
  const double lo = grid_.front();
  const double hi = grid_.back();
  if (theta < lo) {
    const double a = series_coefficient(n_);
    switch (derivative) {
      case 0: return series_scale_ * (theta + a * theta * theta * theta);
      case 1: return series_scale_ * (1.0 + 3.0 * a * theta * theta);
      default: return series_scale_ * 6.0 * a * theta;
    }
  }
  theta = std::min(theta, hi);
  const double h = (hi - lo) / static_cast<double>(grid_.size() - 1);
  std::size_t i = static_cast<std::size_t>((theta - lo) / h);
  i = std::min(i, grid_.size() - 2);
  const double x0 = grid_[i];
  const double hh = grid_[i + 1] - x0;
  const double s = (theta - x0) / hh;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s3 * s;
  const double s5 = s4 * s;
  const double p0 = values_[i];
  const double p1 = values_[i + 1];
  const double m0 = slopes_[i] * hh;
  const double m1 = slopes_[i + 1] * hh;
  const double c0 = curvatures_[i] * hh * hh;
  const double c1 = curvatures_[i + 1] * hh * hh;

  std::array<double, 6> b{};
  double scale = 1.0;
  if (derivative == 0) {
    b = {1 - 10 * s3 + 15 * s4 - 6 * s5, s - 6 * s3 + 8 * s4 - 3 * s5,
         0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5, 0.5 * s3 - s4 + 0.5 * s5,
         -4 * s3 + 7 * s4 - 3 * s5, 10 * s3 - 15 * s4 + 6 * s5};
  } else if (derivative == 1) {
    b = {-30 * s2 + 60 * s3 - 30 * s4, 1 - 18 * s2 + 32 * s3 - 15 * s4,
         s - 4.5 * s2 + 6 * s3 - 2.5 * s4, 1.5 * s2 - 4 * s3 + 2.5 * s4,
         -12 * s2 + 28 * s3 - 15 * s4, 30 * s2 - 60 * s3 + 30 * s4};
    scale = 1.0 / hh;
  } else {
    b = {-60 * s + 180 * s2 - 120 * s3, -36 * s + 96 * s2 - 60 * s3,
         1 - 9 * s + 18 * s2 - 10 * s3, 3 * s - 12 * s2 + 10 * s3,
         -24 * s + 84 * s2 - 60 * s3, 60 * s - 180 * s2 + 120 * s3};
    scale = 1.0 / (hh * hh);
  }
  return scale * (b[0] * p0 + b[1] * m0 + b[2] * c0 + b[3] * c1 + b[4] * m1 + b[5] * p1);
}

double HemisphereExtension::F(double theta) const { return interpolate(theta, 0); }
double HemisphereExtension::dF(double theta) const { return interpolate(theta, 1); }
double HemisphereExtension::d2F(double theta) const { return interpolate(theta, 2); }

double HemisphereExtension::ode_residual(double theta) const {
  const double s = std::sin(theta);
  return d2F(theta) + n_ * cot(theta) * dF(theta) - n_ * F(theta) / (s * s);
}

HemisphereExtension solve_hemisphere_extension(int n) {
  require_dimension(n, "solve_hemisphere_extension");
  using State = std::array<double, 2>;
  namespace odeint = boost::numeric::odeint;

  auto system = [n](const State& y, State& dy, double theta) {
    const double s = std::sin(theta);
    dy[0] = y[1];
    dy[1] = -n * std::cos(theta) / s * y[1] + n * y[0] / (s * s);
  };

  std::vector<double> grid(kHemisphereIntervals + 1);
  for (int i = 0; i <= kHemisphereIntervals; ++i) {
    grid[i] = kHemisphereStart + (kHalfPi - kHemisphereStart) * i / kHemisphereIntervals;
  }
  grid.back() = kHalfPi;

  const double a = series_coefficient(n);
  const double t0 = kHemisphereStart;
  State y{t0 + a * t0 * t0 * t0, 1.0 + 3.0 * a * t0 * t0};
  std::vector<double> values;
  std::vector<double> slopes;
  values.reserve(grid.size());
  slopes.reserve(grid.size());
  auto observer = [&](const State& s, double) {
    values.push_back(s[0]);
    slopes.push_back(s[1]);
  };
  try {
    odeint::integrate_times(
        odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_fehlberg78<State>()), system,
        y, grid.begin(), grid.end(), 1e-6, observer);
  } catch (const std::exception& e) {
    throw NumericError(std::string("solve_hemisphere_extension: ODE step failure: ") + e.what(),
                       0.0);
  }
  if (values.size() != grid.size() || !std::isfinite(values.back()) || values.back() <= 0.0) {
    throw NumericError("solve_hemisphere_extension: integration did not reach the equator", 0.0);
  }
  const double scale = 1.0 / values.back();
  for (double& v : values) v *= scale;
  for (double& d : slopes) d *= scale;
  return HemisphereExtension(n, std::move(grid), std::move(values), std::move(slopes), scale);
}

ChoiWangReport verify_choiwang_chain_hemisphere(int n) {
  return verify_choiwang_chain_hemisphere(solve_hemisphere_extension(n));
}

ChoiWangReport verify_choiwang_chain_hemisphere(const HemisphereExtension& ext) {
  const int n = ext.n();
  ChoiWangReport r;
  r.n = n;
  r.lambda1 = n;

  // Over the equator: int Y^2 = 1, int |grad Y|^2 = n, and dv = sin^n dtheta domega.
  auto energy = [&ext, n](double th) {
    const double s = std::sin(th);
    const double f = ext.F(th);
    const double df = ext.dF(th);
    return (df * df + n * f * f / (s * s)) * std::pow(s, n);
  };
  auto hessian = [&ext, n](double th) {
    const double s = std::sin(th);
    const double c = cot(th);
    const double f = ext.F(th);
    const double df = ext.dF(th);
    // F'' from the equation itself: differentiating the interpolant twice
    // amplifies round-off by 1/h^2.
    const double d2f = -n * c * df + n * f / (s * s);
    const double mixed = (df - f * c) / s;        // pairs with grad Y
    const double tangential = df * c - f / (s * s);  // times Y on the diagonal
    return (d2f * d2f + 2.0 * n * mixed * mixed + n * tangential * tangential) * std::pow(s, n);
  };

  r.dirichlet_energy = integrate_over_extension(ext, energy);
  r.hessian_energy = integrate_over_extension(ext, hessian);
  // u = Y and u_nu = F'(pi/2) Y on the equator.
  const double flux_density = ext.dF(kHalfPi);
  r.boundary_flux = flux_density;
  r.boundary_gradient = flux_density * flux_density + n;

  const double tol = 1e-8 * (1.0 + r.dirichlet_energy);
  r.identity_gap = std::abs(r.boundary_flux - r.dirichlet_energy);
  r.identity_holds = r.identity_gap <= 1e-8;

  r.reilly_slack = -r.hessian_energy - (n * r.dirichlet_energy - 2.0 * r.lambda1 * r.boundary_flux);
  r.reilly_holds = r.reilly_slack >= -tol;

  r.choi_wang_slack = 2.0 * (r.lambda1 - 0.5 * n) * r.dirichlet_energy - r.hessian_energy;
  r.hessian_slack = r.hessian_energy;
  r.choi_wang_holds = r.choi_wang_slack >= -tol && r.hessian_slack > 0.0;

  r.gradient_slack = r.boundary_gradient - std::sqrt(2.0 * n) * r.dirichlet_energy;
  r.gradient_holds = r.gradient_slack >= -tol;
  return r;
}

BoundaryLayerReport verify_boundary_layer_hemisphere(int n, double t, double beta,
                                              const RadialProfile& v) {
  require_dimension(n, "verify_boundary_layer_hemisphere");
  if (!(t > 0.0 && t < kHalfPi)) {
    throw PreconditionError("verify_boundary_layer_hemisphere: need 0 < t < pi/2");
  }
  if (!(beta > 0.0)) throw PreconditionError("verify_boundary_layer_hemisphere: beta must be positive");

  BoundaryLayerReport r;
  const double inner = kHalfPi - t;  // polar angle of Sigma^t
  auto grad = [n, &v](double th) {
    const double d1 = v.df(th);
    return d1 * d1 * ball_volume_element(n, th);
  };
  auto hess = [n, &v](double th) {
    return radial_hessian_sq(n, v.df(th), v.d2f(th), th) * ball_volume_element(n, th);
  };
  const double sigma_slope = v.df(kHalfPi);
  const double offset_slope = v.df(inner);
  r.sigma_gradient = sigma_slope * sigma_slope * ball_volume_element(n, kHalfPi);
  r.offset_gradient = offset_slope * offset_slope * ball_volume_element(n, inner);
  r.shell_gradient = integrate_value(grad, inner, kHalfPi, kQuadTol);
  r.shell_hessian = integrate_value(hess, inner, kHalfPi, kQuadTol);
  // Offsets of the equator are geodesic spheres with H = n tan s, s <= t.
  r.mean_curvature_cap = n * std::tan(t);

  InequalityReport& q = r.inequality;
  q.lhs = r.sigma_gradient;
  q.rhs = r.offset_gradient + (r.mean_curvature_cap + beta) * r.shell_gradient +
          r.shell_hessian / beta;
  q.slack = q.rhs - q.lhs;
  q.ratio = q.rhs > 0.0 ? q.lhs / q.rhs : 0.0;
  q.holds = q.slack >= -1e-12 * (1.0 + std::abs(q.rhs));
  return r;
}

}  // namespace sphere_spectra
