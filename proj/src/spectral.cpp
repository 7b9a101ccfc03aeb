#include "sphere_spectra/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "sphere_spectra/errors.hpp"

namespace sphere_spectra {
namespace {

// M-orthonormal basis of the locally constant functions (one per component).
Eigen::MatrixXd kernel_basis(const LaplacePair& pair) {
  const Eigen::Index n = pair.stiffness.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&parent](Eigen::Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (Eigen::Index col = 0; col < pair.stiffness.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(pair.stiffness, col); it; ++it) {
      if (it.value() != 0.0) parent[find(it.row())] = find(col);
    }
  }
  std::vector<Eigen::Index> label(static_cast<std::size_t>(n), -1);
  Eigen::Index count = 0;
  std::vector<Eigen::Index> root_label(static_cast<std::size_t>(n), -1);
  for (Eigen::Index v = 0; v < n; ++v) {
    const Eigen::Index r = find(v);
    if (root_label[r] < 0) root_label[r] = count++;
    label[v] = root_label[r];
  }
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, count);
  for (Eigen::Index v = 0; v < n; ++v) basis(v, label[v]) = 1.0;
  for (Eigen::Index c = 0; c < count; ++c) {
    const double norm = std::sqrt(basis.col(c).cwiseProduct(pair.mass).dot(basis.col(c)));
    basis.col(c) /= norm;
  }
  return basis;
}

void deflate(Eigen::Ref<Eigen::VectorXd> x, const Eigen::MatrixXd& kernel,
             const Eigen::VectorXd& mass) {
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    const double coeff = kernel.col(c).cwiseProduct(mass).dot(x);
    x -= coeff * kernel.col(c);
  }
}

double m_dot(const Eigen::VectorXd& mass, const Eigen::Ref<const Eigen::VectorXd>& a,
             const Eigen::Ref<const Eigen::VectorXd>& b) {
  return a.cwiseProduct(mass).dot(b);
}

// Modified Gram-Schmidt (two passes) in the M inner product. Columns that
// collapse are dropped.
Eigen::MatrixXd m_orthonormalize(const Eigen::MatrixXd& y, const Eigen::VectorXd& mass) {
  std::vector<Eigen::VectorXd> kept;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    Eigen::VectorXd v = y.col(j);
    const double original = std::sqrt(m_dot(mass, v, v));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) v -= m_dot(mass, q, v) * q;
    }
    const double norm = std::sqrt(m_dot(mass, v, v));
    if (norm > 1e-10 * original && norm > 0.0) kept.push_back(v / norm);
  }
  Eigen::MatrixXd q(y.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) q.col(static_cast<Eigen::Index>(j)) = kept[j];
  return q;
}

void require_pair(const LaplacePair& pair) {
  const Eigen::Index n = pair.stiffness.rows();
  if (n == 0 || pair.stiffness.cols() != n || pair.mass.size() != n) {
    throw DomainError("LaplacePair: stiffness and mass sizes disagree");
  }
  if (!(pair.mass.minCoeff() > 0.0)) throw DomainError("LaplacePair: mass must be positive");
}

}  // namespace

int stiffness_components(const LaplacePair& pair) {
  require_pair(pair);
  return static_cast<int>(kernel_basis(pair).cols());
}

double eigen_residual(const LaplacePair& pair, const Eigen::VectorXd& x, double lambda) {
  const Eigen::VectorXd r = pair.stiffness * x - lambda * pair.mass.cwiseProduct(x);
  const double rnorm = std::sqrt(r.cwiseProduct(pair.mass.cwiseInverse()).dot(r));
  const double xnorm = std::sqrt(m_dot(pair.mass, x, x));
  return rnorm / (std::abs(lambda) * xnorm);
}

double rayleigh_quotient(const Eigen::VectorXd& x, const LaplacePair& pair) {
  require_pair(pair);
  if (x.size() != pair.mass.size()) throw DomainError("rayleigh_quotient: size mismatch");
  const double before = std::sqrt(m_dot(pair.mass, x, x));
  Eigen::VectorXd y = x;
  deflate(y, kernel_basis(pair), pair.mass);
  const double after = std::sqrt(m_dot(pair.mass, y, y));
  if (!(after > 1e-12 * before) || after == 0.0) {
    throw DomainError("rayleigh_quotient: vector has no component off the constants");
  }
  return y.dot(pair.stiffness * y) / (after * after);
}

EigenResult smallest_nonzero_eig(const LaplacePair& pair, double tol, int max_iter) {
  EigenOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return smallest_nonzero_eig(pair, options);
}

EigenResult smallest_nonzero_eig(const LaplacePair& pair, const EigenOptions& options) {
  require_pair(pair);
  if (!(options.tol >= 1e-12)) throw DomainError("smallest_nonzero_eig: tol must be >= 1e-12");
  if (options.max_iter < 1) throw DomainError("smallest_nonzero_eig: max_iter must be positive");

  const Eigen::Index n = pair.stiffness.rows();
  const Eigen::MatrixXd kernel = kernel_basis(pair);
  const Eigen::Index free_dims = n - kernel.cols();
  if (free_dims < 1) throw DomainError("smallest_nonzero_eig: operator has no nonzero spectrum");
  const Eigen::Index block = std::min<Eigen::Index>(options.block_size, free_dims);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::MatrixXd x(n, block);
  for (Eigen::Index j = 0; j < block; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = uniform(rng);
    deflate(x.col(j), kernel, pair.mass);
  }
  x = m_orthonormalize(x, pair.mass);

  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.compute(pair.stiffness);
  cg.setTolerance(options.inner_tol);
  cg.setMaxIterations(std::max<Eigen::Index>(1000, 20 * n));

  Eigen::VectorXd theta = Eigen::VectorXd::Ones(x.cols());
  EigenResult best;
  best.residual = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    Eigen::MatrixXd y(n, x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Eigen::VectorXd rhs = pair.mass.cwiseProduct(x.col(j));
      // Keep the right-hand side in the range of L.
      for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        const Eigen::VectorXd indicator = (kernel.col(c).array() != 0.0).cast<double>();
        rhs -= (indicator.dot(rhs) / indicator.sum()) * indicator;
      }
      const Eigen::VectorXd guess = x.col(j) / theta[j];
      y.col(j) = cg.solveWithGuess(rhs, guess);
      deflate(y.col(j), kernel, pair.mass);
    }

    const Eigen::MatrixXd q = m_orthonormalize(y, pair.mass);
    const Eigen::MatrixXd lq = pair.stiffness * q;
    Eigen::MatrixXd projected = q.transpose() * lq;
    projected = 0.5 * (projected + projected.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(projected);
    x = q * ritz.eigenvectors();
    const Eigen::MatrixXd lx = lq * ritz.eigenvectors();
    theta = ritz.eigenvalues();

    std::vector<double> residuals(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const Eigen::VectorXd r = lx.col(j) - theta[j] * pair.mass.cwiseProduct(x.col(j));
      residuals[static_cast<std::size_t>(j)] =
          std::sqrt(r.cwiseProduct(pair.mass.cwiseInverse()).dot(r)) / std::abs(theta[j]);
    }

    if (residuals[0] < best.residual) {
      best.lambda1 = theta[0];
      best.eigenvector = x.col(0);
      best.residual = residuals[0];
    }

    bool converged = true;
    int multiplicity = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (theta[j] <= theta[0] * (1.0 + options.cluster_rel_tol)) {
        ++multiplicity;
        if (residuals[static_cast<std::size_t>(j)] > options.tol) converged = false;
      }
    }
    if (converged) {
      EigenResult out;
      out.lambda1 = theta[0];
      out.eigenvector = x.col(0);
      out.residual = residuals[0];
      out.iterations = iter;
      out.multiplicity = multiplicity;
      out.ritz_values.assign(theta.data(), theta.data() + theta.size());
      out.ritz_residuals = residuals;
      return out;
    }
  }

  std::ostringstream msg;
  msg << "smallest_nonzero_eig: no convergence after " << options.max_iter
      << " iterations (best residual " << best.residual << ")";
  throw ConvergenceError(msg.str(), best.residual, best.lambda1,
                         std::vector<double>(best.eigenvector.data(),
                                             best.eigenvector.data() + best.eigenvector.size()));
}

}  // namespace sphere_spectra
