#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace kreisslab {

/// Argument outside the mathematical domain of an operation (p < 1, a >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature grid below the size needed for an exact or aliasing-free result.
class GridTooSmallError : public DomainError {
 public:
  GridTooSmallError(std::size_t given, std::size_t required);
  std::size_t given() const noexcept { return given_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t given_;
  std::size_t required_;
};

/// Adaptive FFT refinement hit its grid ceiling before the coefficient
/// vectors stabilised in l1.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous_discrepancy,
                   double last_discrepancy, std::size_t last_grid);
  double previous_discrepancy() const noexcept { return previous_; }
  double last_discrepancy() const noexcept { return last_; }
  std::size_t last_grid() const noexcept { return grid_; }

 private:
  double previous_;
  double last_;
  std::size_t grid_;
};

/// lambda - q(gamma) came too close to zero somewhere on the sampling grid.
class NearSingularityError : public std::runtime_error {
 public:
  NearSingularityError(std::complex<double> lambda, double min_distance);
  std::complex<double> lambda() const noexcept { return lambda_; }
  double min_distance() const noexcept { return min_distance_; }

 private:
  std::complex<double> lambda_;
  double min_distance_;
};

/// Poisson truncation too short for the requested radii.
class TailCriterionError : public DomainError {
 public:
  TailCriterionError(std::size_t given, std::size_t required);
  std::size_t required_n_max() const noexcept { return required_; }

 private:
  std::size_t required_;
};

}  // namespace kreisslab
