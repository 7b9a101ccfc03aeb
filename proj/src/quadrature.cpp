#include "sphere_spectra/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "sphere_spectra/errors.hpp"

namespace sphere_spectra {
namespace {

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;  // integral of |f|, used for the round-off floor
};

struct LargerError {
  bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.error < rhs.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& nodes = Kronrod::abscissa();
  const auto& kw = Kronrod::weights();
  const auto& gw = Gauss::weights();

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double kronrod = kw[0] * f0;
  double gauss = gw[0] * f0;
  double abs_sum = kw[0] * std::abs(f0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double dx = half * nodes[i];
    const double lo = f(mid - dx);
    const double hi = f(mid + dx);
    const double pair = lo + hi;
    kronrod += kw[i] * pair;
    abs_sum += kw[i] * (std::abs(lo) + std::abs(hi));
    // Gauss nodes sit at the even Kronrod indices.
    if (i % 2 == 0) gauss += gw[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);
  return {a, b, kronrod, std::abs(kronrod - gauss), abs_sum};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (a == b) return {0.0, 0.0, 1};
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw DomainError("integrate: integration limits must be finite");
  }

  std::priority_queue<Segment, std::vector<Segment>, LargerError> queue;
  Segment first = evaluate(f, a, b);
  double total = first.value;
  double total_error = first.error;
  double total_abs = first.abs_value;
  queue.push(first);

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (;;) {
    if (!std::isfinite(total) || !std::isfinite(total_error)) {
      throw NumericError("integrate: integrand produced a non-finite value", total_error);
    }
    const double floor = 50.0 * kEps * total_abs;
    const double target = std::max(options.abs_tol, options.rel_tol * std::abs(total));
    if (total_error <= target || total_error <= floor) break;
    if (queue.size() >= options.max_intervals) {
      std::ostringstream msg;
      msg << "integrate: interval cap " << options.max_intervals
          << " reached with error estimate " << total_error;
      throw NumericError(msg.str(), total_error);
    }

    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw NumericError("integrate: interval collapsed below double resolution", total_error);
    }
    const Segment left = evaluate(f, worst.a, mid);
    const Segment right = evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum from scratch so that the result does not carry the drift of the
  // incremental updates above.
  QuadratureResult result;
  result.intervals = queue.size();
  std::vector<Segment> segments;
  segments.reserve(queue.size());
  while (!queue.empty()) {
    segments.push_back(queue.top());
    queue.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  double sum = 0.0;
  double compensation = 0.0;
  double err = 0.0;
  for (const Segment& s : segments) {
    const double y = s.value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
    err += s.error;
  }
  result.value = sum;
  result.error_estimate = err;
  return result;
}

double integrate_value(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  QuadratureOptions options;
  options.abs_tol = abs_tol;
  return integrate(f, a, b, options).value;
}

}  // namespace sphere_spectra
