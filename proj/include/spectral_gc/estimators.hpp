#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectral_gc/model.hpp"
#include "spectral_gc/simulate.hpp"

namespace spectral_gc {

struct OrderCriterion {
  int p = 0;
  int q = 0;
  double value = 0.0;
};

struct FitReport {
  VarmaModel model;
  std::pair<int, int> selected_order;
  std::vector<OrderCriterion> criterion_values;
  Matrix residual_cov;
  std::vector<std::string> warnings;
};

inline constexpr int kDefaultLongArOrder = 50;

/**
 * Output of the multichannel Nuttall-Strand recursion up to max_order.
 *
 * coefficients[m] holds A_1..A_m of the order-m model in the sign convention
 * x(n) = sum_r A_r x(n-r) + e(n); forward_cov[m] is its forward prediction
 * error covariance (forward_cov[0] is the lag-zero covariance).
 * forward_errors holds the order-max_order forward residuals e(n) for
 * n = max_order..T-1.
 */
struct NuttallStrandResult {
  std::vector<std::vector<Matrix>> coefficients;
  std::vector<Matrix> forward_cov;
  Matrix forward_errors;
};

/**
 * Multichannel Burg-type recursion minimizing forward plus backward
 * prediction error power weighted by the inverse error covariances.  At each
 * order the partial correlation Delta solves
 *
 *   R_ff P_f^{-1} Delta + Delta P_b^{-1} R_bb = 2 R_fb,
 *
 * giving reflection matrices A = -Delta P_b^{-1}, B = -Delta^T P_f^{-1}.
 * `centered` is channel-major and already mean-removed.
 */
NuttallStrandResult nuttall_strand(const Matrix& centered, int max_order);

/// ln det(cov) + 2 k N^2 ln(ln n_s) / n_s with k parameter blocks.
double hannan_quinn_value(const Matrix& residual_cov, int parameter_blocks,
                          int n_samples);

struct OrderCandidate {
  int order;
  Matrix residual_cov;
};

/// Order minimizing the Hannan-Quinn criterion; ties go to the smaller order.
int hannan_quinn(std::span<const OrderCandidate> candidates, int n_samples);

/// VAR(p) by Nuttall-Strand for p = 1..p_max, order chosen by Hannan-Quinn.
FitReport fit_var(const TimeSeriesPanel& panel, int p_max);

/**
 * Two-step VMA(q): residuals e(n) of a long Nuttall-Strand VAR, then least
 * squares of x(n) - e(n) on e(n-1)..e(n-q).  B_0 = I, Sigma_w = cov(e).
 */
FitReport fit_vma(const TimeSeriesPanel& panel, int q,
                  int long_ar_order = kDefaultLongArOrder);

/// Two-step VARMA(p, q): x(n) - e(n) regressed on x(n-1..n-p), e(n-1..n-q).
FitReport fit_varma(const TimeSeriesPanel& panel, int p, int q,
                    int long_ar_order = kDefaultLongArOrder);

/// fit_vma with q chosen by Hannan-Quinn over 1..q_max on a common sample.
/// q_max is lowered when the panel is too short to fit it.
FitReport select_vma(const TimeSeriesPanel& panel, int q_max,
                     int long_ar_order = kDefaultLongArOrder);

/// Exhaustive (p, q) sweep over 1..p_max x 1..q_max, Hannan-Quinn selected.
FitReport select_varma(const TimeSeriesPanel& panel, int p_max, int q_max,
                       int long_ar_order = kDefaultLongArOrder);

}  // namespace spectral_gc
