#pragma once

#include <Eigen/Core>

#include <cmath>
#include <span>
#include <vector>

namespace sphere_spectra {

/// Point on the unit sphere S^{n+1} in R^{n+2}; unit norm is checked to 1e-12.
class AmbientPoint {
 public:
  explicit AmbientPoint(Eigen::VectorXd coordinates);

  const Eigen::VectorXd& coordinates() const noexcept { return coords_; }
  Eigen::Index ambient_dimension() const noexcept { return coords_.size(); }

 private:
  Eigen::VectorXd coords_;
};

/// Unit tangent vector of S^{n+1} at `basepoint`, normal to a hypersurface.
class UnitNormal {
 public:
  UnitNormal(Eigen::VectorXd vector, AmbientPoint basepoint);

  const Eigen::VectorXd& vector() const noexcept { return vector_; }
  const AmbientPoint& basepoint() const noexcept { return basepoint_; }

 private:
  Eigen::VectorXd vector_;
  AmbientPoint basepoint_;
};

/// Principal curvatures at one point, measured against the normal that points
/// into the chosen side M_1 (a geodesic sphere with its pole-ward normal has
/// positive curvatures).
class PrincipalCurvatureSet {
 public:
  PrincipalCurvatureSet() = default;
  explicit PrincipalCurvatureSet(std::vector<double> kappas) : kappas_(std::move(kappas)) {}

  const std::vector<double>& kappas() const noexcept { return kappas_; }
  int dimension() const noexcept { return static_cast<int>(kappas_.size()); }

  double mean_curvature() const;  // sum of kappas
  double norm_a() const;          // sqrt of sum of squares
  double kappa_max() const;       // max |kappa_i|
  bool is_minimal(double tol = 1e-12) const;
  bool is_mean_convex(double tol = 0.0) const;
  PrincipalCurvatureSet scaled(double factor) const;

 private:
  std::vector<double> kappas_;
};

enum class TubeSide {
  Plus,   // region swept by Sigma^{+t}: factor (1 - kappa tan t)
  Minus,  // region swept by Sigma^{-t}: factor (1 + kappa tan t)
};

struct TubeEntry {
  double weight = 0.0;  // quadrature weight approximating dS
  PrincipalCurvatureSet curvatures;
};

/// cos(t) p + sin(t) x without validation; used on mesh vertices.
template <class Vec>
Vec geodesic_step(const Vec& p, const Vec& x, double t) {
  return std::cos(t) * p + std::sin(t) * x;
}

/// Point at signed distance t along the normal geodesic from X.basepoint().
AmbientPoint normal_geodesic_point(const UnitNormal& x, double t);

/// Checks p against the basepoint of x, then steps along the normal geodesic.
AmbientPoint normal_geodesic_point(const AmbientPoint& p, const UnitNormal& x, double t);

/// (kappa + tan t) / (1 - kappa tan t); throws SingularityError at the focal offset.
double curvature_transport(double kappa, double t);

/// Critical offset at which transport of kappa blows up (signed; +inf if kappa == 0).
double focal_offset(double kappa);

/// arctan(1 / kappa_max), or +infinity when kappa_max == 0.
double embeddedness_horizon(const PrincipalCurvatureSet& curvatures);

/// Mean curvature of the parallel hypersurface at offset t (raw sum of the
/// transported curvatures). Throws SingularityError when |t| >= horizon.
double offset_mean_curvature(const PrincipalCurvatureSet& curvatures, double t);

/// Ceiling eps_tilde = Lambda eps / (Lambda - eps) (n / Lambda^2 + 1) of the
/// offset mean curvature of a minimal hypersurface for t in [0, D_eps].
double offset_mean_curvature_bound(int n, double lambda, double eps);

/// Volume swept by offsets 0 <= t <= R on one side:
///   sum_entries weight * int_0^R cos^n t prod_i (1 -+ kappa_i tan t) dt.
/// Entries are summed in input order with compensated summation.
double tube_volume(std::span<const TubeEntry> entries, double radius, TubeSide side);

}  // namespace sphere_spectra
