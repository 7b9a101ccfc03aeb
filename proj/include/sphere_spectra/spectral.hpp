#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "sphere_spectra/laplacian.hpp"

namespace sphere_spectra {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct EigenOptions {
  double tol = 1e-8;
  int max_iter = 10'000;
  std::uint64_t seed = kDefaultSeed;
  int block_size = 8;
  double cluster_rel_tol = 1e-3;
  double inner_tol = 1e-12;  // relative residual of each CG solve
};

/// Smallest nonzero generalized eigenpair of (L, M).
struct EigenResult {
  double lambda1 = 0.0;
  Eigen::VectorXd eigenvector;   // M-normalised, M-orthogonal to the kernel
  double residual = 0.0;         // ||L x - lambda M x||_{M^-1} / (lambda ||x||_M)
  int iterations = 0;
  int multiplicity = 1;          // Ritz values within cluster_rel_tol of lambda1
  std::vector<double> ritz_values;
  std::vector<double> ritz_residuals;
};

/// Shift-invert block subspace iteration (shift 0 on the complement of the
/// locally constant functions), Jacobi-preconditioned CG inner solves and
/// Rayleigh-Ritz in the M inner product. Throws ConvergenceError carrying the
/// best iterate when max_iter outer iterations do not reach `tol`.
EigenResult smallest_nonzero_eig(const LaplacePair& pair, const EigenOptions& options = {});
EigenResult smallest_nonzero_eig(const LaplacePair& pair, double tol, int max_iter);

/// x^T L x / x^T M x after M-orthogonal removal of the locally constant part.
/// Throws DomainError when nothing is left.
double rayleigh_quotient(const Eigen::VectorXd& x, const LaplacePair& pair);

/// Residual ||L x - lambda M x||_{M^-1} / (lambda ||x||_M).
double eigen_residual(const LaplacePair& pair, const Eigen::VectorXd& x, double lambda);

/// Number of connected components of the stiffness graph.
int stiffness_components(const LaplacePair& pair);

}  // namespace sphere_spectra
