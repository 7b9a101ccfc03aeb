#include "sphere_spectra/sphere_geometry.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "sphere_spectra/errors.hpp"
#include "sphere_spectra/quadrature.hpp"

namespace sphere_spectra {
namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Both sides of a focal comparison are computed through atan/tan; allow a few
// ulps so that t = arctan(1/kappa) is reported singular.
bool at_or_beyond(double t, double critical) {
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(critical);
  return critical > 0.0 ? t >= critical - slack : t <= critical + slack;
}

}  // namespace

AmbientPoint::AmbientPoint(Eigen::VectorXd coordinates) : coords_(std::move(coordinates)) {
  if (coords_.size() < 3) throw PreconditionError("AmbientPoint: need at least 3 coordinates");
  if (std::abs(coords_.norm() - 1.0) > kUnitTol) {
    std::ostringstream msg;
    msg << "AmbientPoint: norm " << coords_.norm() << " differs from 1 by more than 1e-12";
    throw PreconditionError(msg.str());
  }
}

UnitNormal::UnitNormal(Eigen::VectorXd vector, AmbientPoint basepoint)
    : vector_(std::move(vector)), basepoint_(std::move(basepoint)) {
  if (vector_.size() != basepoint_.ambient_dimension()) {
    throw PreconditionError("UnitNormal: dimension mismatch with basepoint");
  }
  if (std::abs(vector_.norm() - 1.0) > kUnitTol) {
    throw PreconditionError("UnitNormal: vector is not unit length");
  }
  if (std::abs(vector_.dot(basepoint_.coordinates())) > kUnitTol) {
    throw PreconditionError("UnitNormal: vector is not orthogonal to its basepoint");
  }
}

double PrincipalCurvatureSet::mean_curvature() const {
  double sum = 0.0;
  for (double k : kappas_) sum += k;
  return sum;
}

double PrincipalCurvatureSet::norm_a() const {
  double sum = 0.0;
  for (double k : kappas_) sum += k * k;
  return std::sqrt(sum);
}

double PrincipalCurvatureSet::kappa_max() const {
  double m = 0.0;
  for (double k : kappas_) m = std::max(m, std::abs(k));
  return m;
}

bool PrincipalCurvatureSet::is_minimal(double tol) const {
  return std::abs(mean_curvature()) <= tol;
}

bool PrincipalCurvatureSet::is_mean_convex(double tol) const { return mean_curvature() >= -tol; }

PrincipalCurvatureSet PrincipalCurvatureSet::scaled(double factor) const {
  std::vector<double> out(kappas_);
  for (double& k : out) k *= factor;
  return PrincipalCurvatureSet(std::move(out));
}

AmbientPoint normal_geodesic_point(const UnitNormal& x, double t) {
  return AmbientPoint(geodesic_step(x.basepoint().coordinates(), x.vector(), t));
}

AmbientPoint normal_geodesic_point(const AmbientPoint& p, const UnitNormal& x, double t) {
  if ((p.coordinates() - x.basepoint().coordinates()).norm() > kUnitTol) {
    throw PreconditionError("normal_geodesic_point: normal is attached to a different point");
  }
  return normal_geodesic_point(x, t);
}

double focal_offset(double kappa) {
  if (kappa == 0.0) return kInf;
  return std::atan(1.0 / kappa);
}

double curvature_transport(double kappa, double t) {
  constexpr double kQuarter = 0.5 * std::numbers::pi;
  if (std::abs(t) >= kQuarter) {
    throw SingularityError("curvature_transport: |t| must stay below pi/2",
                           std::copysign(kQuarter, t));
  }
  const double critical = focal_offset(kappa);
  if (kappa != 0.0 && (critical > 0.0) == (t > 0.0) && at_or_beyond(t, critical)) {
    std::ostringstream msg;
    msg << "curvature_transport: offset t = " << t << " reaches the focal distance " << critical
        << " of kappa = " << kappa;
    throw SingularityError(msg.str(), critical);
  }
  const double tt = std::tan(t);
  return (kappa + tt) / (1.0 - kappa * tt);
}

double embeddedness_horizon(const PrincipalCurvatureSet& curvatures) {
  const double kmax = curvatures.kappa_max();
  if (kmax == 0.0) return kInf;
  return std::atan(1.0 / kmax);
}

double offset_mean_curvature(const PrincipalCurvatureSet& curvatures, double t) {
  const double horizon = embeddedness_horizon(curvatures);
  if (std::isfinite(horizon) && at_or_beyond(std::abs(t), horizon)) {
    std::ostringstream msg;
    msg << "offset_mean_curvature: |t| = " << std::abs(t) << " is not below the horizon "
        << horizon;
    throw SingularityError(msg.str(), std::copysign(horizon, t));
  }
  double h = 0.0;
  for (double k : curvatures.kappas()) h += curvature_transport(k, t);
  return h;
}

double offset_mean_curvature_bound(int n, double lambda, double eps) {
  if (n < 1) throw DomainError("offset_mean_curvature_bound: n must be positive");
  if (!(lambda > 0.0)) throw PreconditionError("offset_mean_curvature_bound: Lambda must be positive");
  if (!(eps > 0.0) || eps > 0.5 * lambda) {
    throw PreconditionError("offset_mean_curvature_bound: need 0 < eps <= Lambda/2");
  }
  return lambda * eps / (lambda - eps) * (n / (lambda * lambda) + 1.0);
}

double tube_volume(std::span<const TubeEntry> entries, double radius, TubeSide side) {
  if (!(radius >= 0.0)) throw PreconditionError("tube_volume: radius must be nonnegative");
  if (radius == 0.0) return 0.0;

  const double sign = side == TubeSide::Plus ? -1.0 : 1.0;
  // Generator meshes repeat the same curvature set at every vertex, so cache
  // the inner integral by exact curvature values.
  std::map<std::vector<double>, double> inner_cache;

  double sum = 0.0;
  double compensation = 0.0;
  for (const TubeEntry& entry : entries) {
    if (entry.weight < 0.0) throw PreconditionError("tube_volume: negative weight");
    const double horizon = embeddedness_horizon(entry.curvatures);
    if (radius > horizon * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "tube_volume: radius " << radius << " exceeds the horizon " << horizon;
      throw PreconditionError(msg.str());
    }
    const auto& kappas = entry.curvatures.kappas();
    auto found = inner_cache.find(kappas);
    double inner = 0.0;
    if (found != inner_cache.end()) {
      inner = found->second;
    } else {
      // cos^n t prod (1 -+ k tan t) = prod (cos t -+ k sin t)
      auto integrand = [&kappas, sign](double t) {
        const double c = std::cos(t);
        const double s = std::sin(t);
        double prod = 1.0;
        for (double k : kappas) prod *= c + sign * k * s;
        return prod;
      };
      inner = integrate(integrand, 0.0, radius, {1e-10, 0.0, 1'000'000}).value;
      inner_cache.emplace(kappas, inner);
    }
    // Neumaier summation
    const double term = entry.weight * inner;
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

}  // namespace sphere_spectra
