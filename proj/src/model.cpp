#include "spectral_gc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace spectral_gc {
namespace {

void require_square(const Matrix& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream msg;
    msg << what << " must be " << n << "x" << n << ", got " << m.rows() << "x"
        << m.cols();
    throw ConfigError(msg.str());
  }
  if (!m.allFinite()) throw ConfigError(std::string(what) + " has non-finite entries");
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

RootReport classify(std::vector<Complex> roots, bool moving_average) {
  RootReport report{std::move(roots), {}, RootClass::stable};
  report.magnitudes.reserve(report.roots.size());
  for (Complex z : report.roots) report.magnitudes.push_back(std::abs(z));
  const double largest =
      report.magnitudes.empty()
          ? 0.0
          : *std::max_element(report.magnitudes.begin(), report.magnitudes.end());
  if (moving_average)
    report.classification = largest <= 1.0 + kMinimumPhaseMargin
                                ? RootClass::minimum_phase
                                : RootClass::nonminimum_phase;
  else
    report.classification = largest < 1.0 - kStabilityMargin
                                ? RootClass::stable
                                : RootClass::unstable;
  return report;
}

}  // namespace

VarmaModel::VarmaModel(std::vector<Matrix> ar_blocks,
                       std::vector<Matrix> ma_blocks, Matrix innovations_cov)
    : ar_(std::move(ar_blocks)),
      ma_(std::move(ma_blocks)),
      sigma_(std::move(innovations_cov)) {
  const int n = static_cast<int>(sigma_.rows());
  if (n <= 0) throw ConfigError("model needs at least one channel");
  require_square(sigma_, n, "innovations covariance");
  for (const Matrix& a : ar_) require_square(a, n, "AR block");
  if (ma_.empty()) ma_.push_back(Matrix::Identity(n, n));
  for (const Matrix& b : ma_) require_square(b, n, "MA block");

  const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
  if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ConfigError("innovations covariance is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw ConfigError("innovations covariance is not positive definite");

  Eigen::JacobiSVD<Matrix> svd(ma_.front());
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) == 0.0 || s(0) / s(s.size() - 1) > kSingularCondition)
    throw ConfigError("leading MA block B_0 is not invertible");
}

const char* to_string(RootClass c) {
  switch (c) {
    case RootClass::stable: return "stable";
    case RootClass::unstable: return "unstable";
    case RootClass::minimum_phase: return "minimum-phase";
    case RootClass::nonminimum_phase: return "nonminimum-phase";
  }
  return "unknown";
}

CMatrix eval_ar_polynomial(const VarmaModel& model, double nu) {
  const int n = model.n_channels();
  CMatrix a = CMatrix::Identity(n, n);
  for (int r = 1; r <= model.ar_order(); ++r)
    a -= unit_phasor(nu, r) * model.ar_blocks()[r - 1].cast<Complex>();
  return a;
}

CMatrix eval_ma_polynomial(const VarmaModel& model, double nu) {
  const int n = model.n_channels();
  CMatrix b = CMatrix::Zero(n, n);
  for (int s = 0; s <= model.ma_order(); ++s)
    b += unit_phasor(nu, s) * model.ma_blocks()[s].cast<Complex>();
  return b;
}

CMatrix transfer_at(const VarmaModel& model, double nu) {
  const CMatrix b = eval_ma_polynomial(model, nu);
  if (model.ar_order() == 0) return b;
  const CMatrix a = eval_ar_polynomial(model, nu);
  if (condition_number(a) > kSingularCondition) {
    std::ostringstream msg;
    msg << "AR polynomial is numerically singular at nu = " << nu;
    throw SingularMatrixError(msg.str());
  }
  return a.partialPivLu().solve(b);
}

SpectralFactor transfer_function(const VarmaModel& model,
                                 const FrequencyGrid& grid) {
  SpectralFactor factor{grid, {}, model.innovations_cov(), {}};
  factor.h.reserve(static_cast<std::size_t>(grid.size()));
  for (int k = 0; k < grid.size(); ++k) factor.h.push_back(transfer_at(model, grid.nu(k)));
  return factor;
}

SpectralFactor canonical_factor(const VarmaModel& model,
                                const FrequencyGrid& grid) {
  SpectralFactor factor = transfer_function(model, grid);
  const Matrix& b0 = model.ma_blocks().front();
  const CMatrix b0_inv = b0.inverse().cast<Complex>();
  for (CMatrix& h : factor.h) h = (h * b0_inv).eval();
  factor.sigma = b0 * model.innovations_cov() * b0.transpose();
  factor.sigma = 0.5 * (factor.sigma + factor.sigma.transpose()).eval();
  return factor;
}

SpectralMatrix theoretical_spectrum(const VarmaModel& model,
                                    const FrequencyGrid& grid) {
  return reassemble_spectrum(transfer_function(model, grid));
}

Polynomial ar_determinant(const VarmaModel& model) {
  const int n = model.n_channels();
  std::vector<Matrix> coeffs{Matrix::Identity(n, n)};
  for (const Matrix& a : model.ar_blocks()) coeffs.push_back(-a);
  return matrix_polynomial_determinant(coeffs);
}

Polynomial ma_determinant(const VarmaModel& model) {
  return matrix_polynomial_determinant(model.ma_blocks());
}

RootReport ar_root_report(const VarmaModel& model) {
  if (model.ar_order() == 0) return classify({}, false);
  return classify(reciprocal_polynomial_roots(ar_determinant(model)), false);
}

RootReport ma_root_report(const VarmaModel& model) {
  return classify(reciprocal_polynomial_roots(ma_determinant(model)), true);
}

}  // namespace spectral_gc
