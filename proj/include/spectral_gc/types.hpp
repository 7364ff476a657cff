#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

/**
 * Frequency-domain Granger connectivity from minimum-phase spectral factors.
 *
 * Every estimator in this library (VAR, VMA, VARMA fits and Welch spectra
 * factored by Wilson's algorithm) ends in a SpectralFactor, and every
 * connectivity measure is a function of a SpectralFactor alone.
 */
namespace spectral_gc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments, inconsistent shapes, unusable configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; `line()` is 1-based, 0 when not line oriented.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, int line)
      : ConfigError(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// File cannot be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Failure of a numerical procedure on otherwise well-formed input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnstableModelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPositiveSemidefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/**
 * Uniform two-sided grid of normalized frequencies nu_k = k / n, k = 0..n-1.
 *
 * Reporting uses the one-sided half-open band 0 <= nu < 0.5, i.e. the first
 * n/2 points.
 */
class FrequencyGrid {
 public:
  explicit FrequencyGrid(int n_points);

  int size() const { return n_; }
  int one_sided_size() const { return n_ / 2; }
  double nu(int k) const { return static_cast<double>(k) / n_; }

  bool operator==(const FrequencyGrid&) const = default;

 private:
  int n_;
};

inline constexpr double kPi = 3.14159265358979323846;

/// e^{-j 2 pi nu lag}
inline Complex unit_phasor(double nu, int lag) {
  const double angle = -2.0 * kPi * nu * lag;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace spectral_gc
