#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sphere_spectra {

using RealFunction = std::function<double(double)>;

enum class RadialDomain { Ball, Annulus, Hemisphere };

/// A function of the geodesic distance r from a pole, with derivatives.
/// `d3f` is only needed by the pointwise Bochner check and may be empty.
struct RadialProfile {
  std::string name;
  RealFunction f;
  RealFunction df;
  RealFunction d2f;
  RealFunction d3f;
  RadialDomain domain = RadialDomain::Ball;

  /// Radial harmonic on annuli with v'(r) = 1 / sin^n r (v itself is not needed).
  static RadialProfile radial_harmonic(int n);
  static RadialProfile constant(double value);
  /// Six smooth profiles with f'(0) = 0 used for the Reilly grid.
  static std::vector<RadialProfile> ball_profiles();
};

/// omega_n sin^n r, omega_n the area of the unit n-sphere.
double ball_volume_element(int n, double r);

struct BochnerReport {
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;  // |lhs - rhs| / (1 + |lhs|)
  int samples = 0;
};

/// Pointwise check of Delta|grad v|^2 = 2|Hess v|^2 + 2n|grad v|^2 for the
/// radial harmonic on r0 <= r <= R (10^4 samples).
BochnerReport verify_bochner_radial(int n, double r0, double r1);
/// Same for any radial profile with a third derivative (must be harmonic).
BochnerReport verify_bochner_radial(int n, const RadialProfile& v, double r0, double r1);

struct ReillyReport {
  double lhs = 0.0;            // int ((Delta f)^2 - |Hess f|^2) dv
  double rhs_interior = 0.0;   // int n f'^2 dv
  double rhs_boundary = 0.0;   // -H u_nu^2 Area(Sigma_R)
  double rhs = 0.0;
  double gap = 0.0;
  bool passed = false;         // gap <= 1e-8 (1 + |lhs|)
};

/// Reilly's identity on the geodesic ball of radius R for u = f(r).
/// Precondition: 0 < R < pi/2 and f'(0) = 0.
ReillyReport verify_reilly_radial(int n, double radius, const RadialProfile& f,
                                  double quad_tol = 1e-10);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;   // rhs - lhs
  double ratio = 0.0;   // lhs / rhs (0 when both vanish)
  bool holds = false;   // slack >= -1e-12 (1 + |rhs|)
};

/// int_{Omega^{2t}} |grad v|^2 <= t^{-2} / (n - 1) int_Omega |Hess v|^2 on
/// the annulus r0 < r < R, for the radial harmonic (default) or `v`.
InequalityReport verify_interior_gradient_radial(int n, double r0, double r1, double t);
InequalityReport verify_interior_gradient_radial(int n, double r0, double r1, double t,
                                                 const RadialProfile& v);

/// Radial factor F of the harmonic extension of a degree-1 eigenfunction of
/// the equator into the upper hemisphere: u = F(theta) Y(omega),
/// F'' + n cot(theta) F' - n F / sin^2(theta) = 0, F ~ c theta, F(pi/2) = 1.
class HemisphereExtension {
 public:
  HemisphereExtension(int n, std::vector<double> grid, std::vector<double> values,
                      std::vector<double> slopes, double series_scale);

  int n() const noexcept { return n_; }
  double F(double theta) const;
  double dF(double theta) const;
  double d2F(double theta) const;
  /// F'' + n cot F' - n F / sin^2 evaluated from the interpolant.
  double ode_residual(double theta) const;
  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  /// Start angle of the integration; below it the Frobenius series is used.
  double start() const noexcept { return grid_.front(); }

 private:
  // Quintic Hermite interpolation from values, slopes and ODE curvatures.
  double interpolate(double theta, int derivative) const;

  int n_;
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  std::vector<double> curvatures_;
  double series_scale_;  // F = series_scale (theta + a theta^3) below start()
};

inline constexpr double kHemisphereStart = 1e-4;

/// Integrates the extension ODE from theta = 1e-4 with the regular indicial
/// data using an adaptive Runge-Kutta-Fehlberg 7(8) stepper.
HemisphereExtension solve_hemisphere_extension(int n);

struct ChoiWangReport {
  int n = 0;
  double lambda1 = 0.0;          // n for the equator
  double dirichlet_energy = 0.0; // int_{M1} |grad u|^2
  double boundary_flux = 0.0;    // int_Sigma u_nu u
  double hessian_energy = 0.0;   // int_{M1} |Hess u|^2
  double boundary_gradient = 0.0;// int_Sigma |grad u|^2
  double identity_gap = 0.0;     // |flux - energy|
  double reilly_slack = 0.0;     // -H2 - (n G - 2 lambda1 flux)
  double choi_wang_slack = 0.0;  // 2 (lambda1 - n/2) G - H2
  double hessian_slack = 0.0;    // H2 - 0
  double gradient_slack = 0.0;   // boundary_gradient - sqrt(2n) G
  bool identity_holds = false;
  bool reilly_holds = false;
  bool choi_wang_holds = false;
  bool gradient_holds = false;
  bool all_hold() const { return identity_holds && reilly_holds && choi_wang_holds && gradient_holds; }
};

/// Reduces the Choi-Wang chain for Sigma = equator, u = F(theta) Y, to 1D
/// integrals and evaluates each relation.
ChoiWangReport verify_choiwang_chain_hemisphere(int n);
ChoiWangReport verify_choiwang_chain_hemisphere(const HemisphereExtension& extension);

struct BoundaryLayerReport {
  double sigma_gradient = 0.0;    // int_Sigma |grad v|^2
  double offset_gradient = 0.0;   // int_{Sigma^t} |grad v|^2
  double shell_gradient = 0.0;    // int_{M1 \ M1^t} |grad v|^2
  double shell_hessian = 0.0;     // int_{M1 \ M1^t} |Hess v|^2
  double mean_curvature_cap = 0.0;// n tan t, replaces eps_tilde
  InequalityReport inequality;
};

/// Boundary-layer gradient estimate on the upper hemisphere for a polar-radial
/// v(theta): int_Sigma <= int_{Sigma^t} + (n tan t + beta) shell + shell_hess / beta.
BoundaryLayerReport verify_boundary_layer_hemisphere(int n, double t, double beta,
                                              const RadialProfile& v);

}  // namespace sphere_spectra
