#include "spectral_gc/wilson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace spectral_gc {
namespace {

constexpr double kNegativeEigenTolerance = 1e-6;
constexpr double kSingularEigenTolerance = 1e-13;

// Largest eigenvalue over the grid; rejects indefinite or singular input.
double validate_spectrum(const SpectralMatrix& spectrum) {
  std::vector<Vector> eigenvalues;
  eigenvalues.reserve(spectrum.values.size());
  double scale = 0.0;
  for (const CMatrix& s : spectrum.values) {
    const CMatrix hermitian = 0.5 * (s + s.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian, Eigen::EigenvaluesOnly);
    eigenvalues.push_back(eig.eigenvalues());
    scale = std::max(scale, eig.eigenvalues().maxCoeff());
  }
  if (!(scale > 0.0)) throw NotPositiveSemidefiniteError("spectrum is identically zero");
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const double smallest = eigenvalues[k].minCoeff();
    std::ostringstream where;
    where << " at nu = " << spectrum.grid.nu(static_cast<int>(k));
    if (smallest < -kNegativeEigenTolerance * scale)
      throw NotPositiveSemidefiniteError("spectral matrix is not positive semidefinite" +
                                         where.str());
    if (smallest <= kSingularEigenTolerance * scale)
      throw SingularMatrixError("spectral matrix is singular" + where.str());
  }
  return scale;
}

// Causal part: lags 1..n/2-1 kept, lag 0 halved, the rest zeroed.
std::vector<CMatrix> causal_part(const std::vector<CMatrix>& g) {
  std::vector<CMatrix> lags = inverse_dft(g);
  const std::size_t n = lags.size();
  lags[0] *= 0.5;
  for (std::size_t l = n / 2; l < n; ++l) lags[l].setZero();
  return forward_dft(lags);
}

double max_abs(const std::vector<CMatrix>& field) {
  double m = 0.0;
  for (const CMatrix& v : field) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

double factorization_residual(const SpectralFactor& factor,
                              const SpectralMatrix& spectrum) {
  double scale = 0.0;
  for (const CMatrix& s : spectrum.values) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (s + s.adjoint()),
                                               Eigen::EigenvaluesOnly);
    scale = std::max(scale, eig.eigenvalues().maxCoeff());
  }
  const SpectralMatrix rebuilt = reassemble_spectrum(factor);
  double worst = 0.0;
  for (std::size_t k = 0; k < spectrum.values.size(); ++k)
    worst = std::max(worst,
                     (rebuilt.values[k] - spectrum.values[k]).cwiseAbs().maxCoeff());
  return scale > 0.0 ? worst / scale : worst;
}

SpectralFactor wilson_factorize(const SpectralMatrix& spectrum, WilsonOptions options) {
  if (options.tol <= 0.0) throw ConfigError("Wilson tolerance must be positive");
  if (options.max_iter < 1) throw ConfigError("Wilson max_iter must be positive");
  const int n_f = spectrum.grid.size();
  if (static_cast<int>(spectrum.values.size()) != n_f)
    throw ConfigError("spectrum does not cover its frequency grid");
  validate_spectrum(spectrum);

  const int n = spectrum.n_channels();
  CMatrix mean = CMatrix::Zero(n, n);
  for (const CMatrix& s : spectrum.values) mean += s;
  mean /= static_cast<double>(n_f);
  mean = (0.5 * (mean + mean.adjoint())).eval();
  Eigen::LLT<CMatrix> llt(mean);
  if (llt.info() != Eigen::Success)
    throw NotPositiveSemidefiniteError("grid mean of the spectrum is not positive definite");

  std::vector<CMatrix> psi(static_cast<std::size_t>(n_f), CMatrix(llt.matrixL()));
  std::vector<CMatrix> g(static_cast<std::size_t>(n_f));
  const CMatrix identity = CMatrix::Identity(n, n);

  int iteration = 0;
  bool converged = false;
  while (iteration < options.max_iter) {
    ++iteration;
    for (int k = 0; k < n_f; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      Eigen::PartialPivLU<CMatrix> lu(psi[idx]);
      const CMatrix left = lu.solve(spectrum.values[idx]);
      g[idx] = lu.solve(left.adjoint()).adjoint() + identity;
    }
    const std::vector<CMatrix> plus = causal_part(g);
    double change = 0.0;
    for (int k = 0; k < n_f; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      CMatrix updated = psi[idx] * plus[idx];
      change = std::max(change, (updated - psi[idx]).cwiseAbs().maxCoeff());
      psi[idx] = std::move(updated);
    }
    if (!std::isfinite(change)) break;
    if (change < options.tol * max_abs(psi)) {
      converged = true;
      break;
    }
  }

  const std::vector<CMatrix> lags = inverse_dft(psi);
  const CMatrix psi0 = lags.front();
  SpectralFactor factor{spectrum.grid, {}, (psi0 * psi0.adjoint()).real(), {}};
  factor.sigma = 0.5 * (factor.sigma + factor.sigma.transpose()).eval();
  const CMatrix psi0_inv = psi0.inverse();
  factor.h.reserve(psi.size());
  for (const CMatrix& p : psi) factor.h.push_back(p * psi0_inv);
  factor.diagnostics.iterations = iteration;
  factor.diagnostics.residual = factorization_residual(factor, spectrum);

  if (!converged) {
    std::ostringstream msg;
    msg << "Wilson factorization did not converge in " << options.max_iter
        << " iterations (residual " << factor.diagnostics.residual << ")";
    throw NonConvergenceError(msg.str(), factor.diagnostics.residual);
  }
  return factor;
}

}  // namespace spectral_gc
