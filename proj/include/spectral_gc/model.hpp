#pragma once

#include <vector>

#include "spectral_gc/polynomial.hpp"
#include "spectral_gc/spectral.hpp"
#include "spectral_gc/types.hpp"

namespace spectral_gc {

/**
 * VARMA(p, q) mechanism
 *
 *   x(n) = sum_{r=1..p} A_r x(n-r) + sum_{s=0..q} B_s w(n-s),  cov w = Sigma_w
 *
 * Construction validates shapes, symmetry and positive definiteness of
 * Sigma_w and invertibility of B_0.  An empty MA list means B_0 = I.
 */
class VarmaModel {
 public:
  VarmaModel(std::vector<Matrix> ar_blocks, std::vector<Matrix> ma_blocks,
             Matrix innovations_cov);

  int n_channels() const { return static_cast<int>(sigma_.rows()); }
  int ar_order() const { return static_cast<int>(ar_.size()); }
  int ma_order() const { return static_cast<int>(ma_.size()) - 1; }

  const std::vector<Matrix>& ar_blocks() const { return ar_; }
  const std::vector<Matrix>& ma_blocks() const { return ma_; }
  const Matrix& innovations_cov() const { return sigma_; }

 private:
  std::vector<Matrix> ar_;
  std::vector<Matrix> ma_;
  Matrix sigma_;
};

enum class RootClass { stable, unstable, minimum_phase, nonminimum_phase };

const char* to_string(RootClass c);

struct RootReport {
  std::vector<Complex> roots;
  std::vector<double> magnitudes;
  RootClass classification;
};

/// Magnitude bands used to classify roots in the presence of rounding.
inline constexpr double kStabilityMargin = 1e-9;
inline constexpr double kMinimumPhaseMargin = 1e-9;

/// Condition number above which A(nu) is treated as singular.
inline constexpr double kSingularCondition = 1e12;

/// A(nu) = I - sum_r A_r e^{-j 2 pi r nu}
CMatrix eval_ar_polynomial(const VarmaModel& model, double nu);

/// B(nu) = sum_s B_s e^{-j 2 pi s nu}
CMatrix eval_ma_polynomial(const VarmaModel& model, double nu);

/// H(nu) = A(nu)^{-1} B(nu); throws SingularMatrixError when A(nu) is singular.
CMatrix transfer_at(const VarmaModel& model, double nu);

/// H(nu_k) = A(nu_k)^{-1} B(nu_k) paired with Sigma_w.
SpectralFactor transfer_function(const VarmaModel& model,
                                 const FrequencyGrid& grid);

/**
 * Transfer function expressed with an identity zero-lag coefficient:
 * H B_0^{-1} paired with B_0 Sigma_w B_0^T.  Same spectrum as
 * transfer_function; this is the representation every estimator returns.
 */
SpectralFactor canonical_factor(const VarmaModel& model,
                                const FrequencyGrid& grid);

/// S(nu_k) = H Sigma_w H^H.
SpectralMatrix theoretical_spectrum(const VarmaModel& model,
                                    const FrequencyGrid& grid);

/// Polynomial in u = z^{-1} whose roots define stability.
Polynomial ar_determinant(const VarmaModel& model);
Polynomial ma_determinant(const VarmaModel& model);

/// Roots of det A(z) = 0; stable iff every |z| < 1.
RootReport ar_root_report(const VarmaModel& model);

/// Roots of det B(z) = 0; minimum phase iff every |z| <= 1.
RootReport ma_root_report(const VarmaModel& model);

}  // namespace spectral_gc
