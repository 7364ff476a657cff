#pragma once

#include "spectral_gc/spectral.hpp"

namespace spectral_gc {

struct WilsonOptions {
  double tol = 1e-6;
  int max_iter = 500;
};

/**
 * Wilson's Newton-type spectral factorization.
 *
 * psi starts constant in frequency at the lower Cholesky factor of the grid
 * mean of S and is updated as psi <- psi [psi^{-1} S psi^{-H} + I]_+, where
 * [.]_+ keeps lags 1..n/2-1, half of lag 0, and zeroes the rest.  Iteration
 * stops when the largest entry change of psi, relative to the largest entry
 * of psi, drops below tol.  The result is normalized to an identity
 * zero-lag coefficient: Sigma = psi_0 psi_0^H and H = psi psi_0^{-1}.
 *
 * Throws NotPositiveSemidefiniteError when a grid matrix has an eigenvalue
 * below -1e-6 times the spectral scale, SingularMatrixError when a grid
 * matrix is singular, and NonConvergenceError after max_iter iterations.
 */
SpectralFactor wilson_factorize(const SpectralMatrix& spectrum,
                                WilsonOptions options = {});

/// max_k ||H Sigma H^H - S||_max divided by the largest spectral eigenvalue.
double factorization_residual(const SpectralFactor& factor,
                              const SpectralMatrix& spectrum);

}  // namespace spectral_gc
