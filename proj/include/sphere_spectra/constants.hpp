#pragma once

#include <optional>

namespace sphere_spectra {

/// Dimension of the hypersurface; the ambient space is the unit sphere of
/// dimension n + 1 sitting in R^{n+2}.
class DimensionContext {
 public:
  explicit DimensionContext(int n);

  int n() const noexcept { return n_; }
  double sqrt_n() const noexcept;
  /// Volume of the ambient unit sphere S^{n+1}.
  double ambient_volume() const;

 private:
  int n_;
};

/// Volume of the unit k-sphere, 2 pi^{(k+1)/2} / Gamma((k+1)/2).
double unit_sphere_volume(int k);

/// Scalars entering the proof of the improved bound for a given (n, Lambda, eps, beta).
struct ParameterChain {
  int n = 0;
  double lambda = 0.0;      // max ||A||
  double eps = 0.0;
  double beta = 0.0;
  double eps_tilde = 0.0;   // offset mean-curvature ceiling on [0, D_eps]
  double gamma = 0.0;       // sqrt(2n) - eps_tilde - beta
  double delta = 0.0;       // n arctan(eps / n)
  double shell_width = 0.0; // T = delta / (2 Lambda^2)
  double d_eps = 0.0;       // arctan(eps / Lambda^2)
  double a = 0.0;           // (n-1) delta^3 gamma / 32
  double b = 0.0;           // (n-1) delta^3 / (32 beta)
  bool valid = false;       // false when gamma <= 0 (degenerate chain)
};

struct BoundConstants {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct VolumeBound {
  double ambient_volume = 0.0;  // Vol(S^{n+1})
  double tube_integral = 0.0;   // I_Lambda
  double sharp = 0.0;           // Vol(S^{n+1}) / (2 I_Lambda)
  std::optional<double> crude;  // c_n Lambda Vol(S^{n+1}), only for Lambda >= 1/4
  bool sharp_within_crude = true;
};

/// n^{3/2} arctan^3(1 / (3 sqrt n)); lies in [7/200, 1/27] for n >= 2.
double arctan_cubed_factor(int n);

/// Closed-form a_n, b_n for the default (eps, beta) and the volume constant c_n.
BoundConstants compute_bound_constants(int n);

/// Lower floor (n-1) n^2 / 32000 that a_n must clear.
double a_floor(int n);
/// Upper ceiling 5 n^2 / 216 that b_n must stay below.
double b_ceiling(int n);

/// True when Lambda is below sqrt(n) (up to a relative 1e-8 allowance for
/// decimal inputs such as 1.41421356); such minimal hypersurfaces are totally
/// geodesic and have lambda_1 = n.
bool is_totally_geodesic_branch(int n, double lambda);

/// n / 2 + a_n / (Lambda^6 + b_n), or exactly n on the totally geodesic branch.
double eigenvalue_lower_bound(int n, double lambda);

/// Builds the parameter chain; throws PreconditionError unless 0 < eps <= Lambda / 2.
/// A chain with gamma <= 0 is returned with valid == false.
ParameterChain build_parameter_chain(int n, double lambda, double eps, double beta);

/// Chain with eps = sqrt(n) / 3 and beta = sqrt(n) / 20.
ParameterChain default_parameter_chain(int n, double lambda);

double default_eps(int n);
double default_beta(int n);

/// I_Lambda = int_0^{arctan(1/Lambda)} cos^n t (1 - Lambda tan t)^n dt, to 1e-10 absolute.
double tube_integral(int n, double lambda);

/// Volume bound for closed embedded mean-convex hypersurfaces with max ||A|| <= Lambda.
VolumeBound volume_upper_bound(int n, double lambda);

}  // namespace sphere_spectra
