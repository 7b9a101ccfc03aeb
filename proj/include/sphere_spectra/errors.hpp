#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sphere_spectra {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (e.g. n < 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition (e.g. eps > Lambda / 2).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A geometric formula hit its singular set; carries the critical offset.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double critical_t)
      : Error(what), critical_t_(critical_t) {}
  double critical_t() const noexcept { return critical_t_; }

 private:
  double critical_t_;
};

// An iterative numeric routine could not reach its tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Eigen solver gave up; keeps the best iterate it found.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, double residual, double best_lambda,
                   std::vector<double> best_vector)
      : NumericError(what, residual),
        best_lambda_(best_lambda),
        best_vector_(std::move(best_vector)) {}
  double best_lambda() const noexcept { return best_lambda_; }
  const std::vector<double>& best_vector() const noexcept { return best_vector_; }

 private:
  double best_lambda_;
  std::vector<double> best_vector_;
};

// Mesh fails validation or contains a degenerate element.
class MeshError : public Error {
 public:
  using Error::Error;
};

class MeshQualityError : public MeshError {
 public:
  MeshQualityError(const std::string& what, long triangle)
      : MeshError(what), triangle_(triangle) {}
  long triangle() const noexcept { return triangle_; }

 private:
  long triangle_;
};

// Environment/setup problem that is not a defect of the input data.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Serialized report carries a missing or unsupported schema version.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace sphere_spectra
