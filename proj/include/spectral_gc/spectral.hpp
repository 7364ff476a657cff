#pragma once

#include <vector>

#include "spectral_gc/types.hpp"

namespace spectral_gc {

/**
 * Hermitian N x N spectral density matrix at every point of a two-sided grid.
 *
 * Normalized so that the grid mean of S equals the lag-zero covariance.
 */
struct SpectralMatrix {
  FrequencyGrid grid;
  std::vector<CMatrix> values;

  int n_channels() const {
    return values.empty() ? 0 : static_cast<int>(values.front().rows());
  }
};

struct FactorDiagnostics {
  int iterations = 0;
  double residual = 0.0;
};

/**
 * S(nu) = H(nu) Sigma H(nu)^H with a frequency-dependent transfer matrix H
 * on a two-sided grid and a frequency-independent covariance Sigma.
 */
struct SpectralFactor {
  FrequencyGrid grid;
  std::vector<CMatrix> h;
  Matrix sigma;
  FactorDiagnostics diagnostics;

  int n_channels() const { return static_cast<int>(sigma.rows()); }
};

/// Per-entry forward DFT along the grid: X_k = sum_l x_l e^{-j 2 pi k l / n}.
std::vector<CMatrix> forward_dft(const std::vector<CMatrix>& sequence);

/// Inverse of forward_dft (scaled by 1/n).
std::vector<CMatrix> inverse_dft(const std::vector<CMatrix>& sequence);

/// H Sigma H^H at every grid point.
SpectralMatrix reassemble_spectrum(const SpectralFactor& factor);

/// Lag coefficients h_l of H(nu) = sum_l h_l e^{-j 2 pi nu l}, l = 0..n-1.
std::vector<CMatrix> impulse_response(const SpectralFactor& factor);

/**
 * Rescales a factor so its zero-lag coefficient is the identity:
 * H <- H h_0^{-1}, Sigma <- h_0 Sigma h_0^T.  The spectrum is unchanged.
 */
SpectralFactor normalize_zero_lag(const SpectralFactor& factor);

/// One-sided copy (first n/2 grid points) of a field defined on the full grid.
std::vector<CMatrix> one_sided(const std::vector<CMatrix>& field,
                               const FrequencyGrid& grid);

}  // namespace spectral_gc
