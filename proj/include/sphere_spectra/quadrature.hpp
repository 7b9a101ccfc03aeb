#pragma once

#include <cstddef>
#include <functional>

namespace sphere_spectra {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;  // accepted when error <= max(abs_tol, rel_tol |value|)
  std::size_t max_intervals = 1'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
///
/// The interval with the largest |K15 - G7| estimate is bisected until the
/// summed estimate drops below the tolerance (or reaches the round-off floor of
/// the integrand). Throws NumericError carrying the achieved error estimate
/// when `max_intervals` is exhausted or the integrand is not finite.
/// The endpoints themselves are never sampled.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

/// Convenience wrapper returning only the value.
double integrate_value(const std::function<double(double)>& f, double a, double b,
                       double abs_tol = 1e-10);

}  // namespace sphere_spectra
