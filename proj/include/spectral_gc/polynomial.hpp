#pragma once

#include <span>
#include <vector>

#include "spectral_gc/types.hpp"

namespace spectral_gc {

/// Real polynomial coefficients in ascending powers: c[0] + c[1] u + ...
using Polynomial = std::vector<double>;

Polynomial poly_multiply(const Polynomial& a, const Polynomial& b);

/// Drops trailing coefficients below `rel_tol` times the largest magnitude.
Polynomial poly_trim(Polynomial c, double rel_tol = 1e-12);

/**
 * Determinant of the matrix polynomial M(u) = sum_k coeffs[k] u^k.
 *
 * Leibniz expansion over polynomial entries for up to six channels, which
 * keeps structural zeros exact (e.g. det identically one).  Larger systems
 * fall back to evaluation on roots of unity followed by an inverse DFT.
 */
Polynomial matrix_polynomial_determinant(std::span<const Matrix> coeffs);

/// Same determinant, always via evaluation / interpolation on the unit circle.
Polynomial matrix_polynomial_determinant_interpolated(
    std::span<const Matrix> coeffs);

/**
 * Roots z of d(z^{-1}) = 0 where d(u) = sum_k c[k] u^k, i.e. the roots of
 * c[0] z^D + c[1] z^{D-1} + ... + c[D] with D the trimmed degree.
 *
 * Requires c[0] != 0.  Uses eigenvalues of the balanced companion matrix.
 */
std::vector<Complex> reciprocal_polynomial_roots(const Polynomial& c);

/// Evaluates sum_k c[k] u^k by Horner's scheme.
Complex poly_evaluate(const Polynomial& c, Complex u);

}  // namespace spectral_gc
