#include "spectral_gc/spectral.hpp"

#include <unsupported/Eigen/FFT>

namespace spectral_gc {

FrequencyGrid::FrequencyGrid(int n_points) : n_(n_points) {
  if (n_points <= 0 || n_points % 2 != 0)
    throw ConfigError("frequency grid size must be a positive even integer, got " +
                      std::to_string(n_points));
}

namespace {

std::vector<CMatrix> transform(const std::vector<CMatrix>& sequence,
                               bool inverse) {
  if (sequence.empty()) return {};
  const auto rows = sequence.front().rows();
  const auto cols = sequence.front().cols();
  const std::size_t n = sequence.size();
  std::vector<CMatrix> out(n, CMatrix(rows, cols));
  Eigen::FFT<double> fft;
  std::vector<Complex> in(n);
  std::vector<Complex> result(n);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (std::size_t k = 0; k < n; ++k) in[k] = sequence[k](i, j);
      if (inverse)
        fft.inv(result, in);
      else
        fft.fwd(result, in);
      for (std::size_t k = 0; k < n; ++k) out[k](i, j) = result[k];
    }
  return out;
}

}  // namespace

std::vector<CMatrix> forward_dft(const std::vector<CMatrix>& sequence) {
  return transform(sequence, false);
}

std::vector<CMatrix> inverse_dft(const std::vector<CMatrix>& sequence) {
  return transform(sequence, true);
}

SpectralMatrix reassemble_spectrum(const SpectralFactor& factor) {
  SpectralMatrix s{factor.grid, {}};
  s.values.reserve(factor.h.size());
  const CMatrix sigma = factor.sigma.cast<Complex>();
  for (const CMatrix& h : factor.h) s.values.push_back(h * sigma * h.adjoint());
  return s;
}

std::vector<CMatrix> impulse_response(const SpectralFactor& factor) {
  return inverse_dft(factor.h);
}

SpectralFactor normalize_zero_lag(const SpectralFactor& factor) {
  const std::vector<CMatrix> lags = impulse_response(factor);
  const Matrix h0 = lags.front().real();
  Eigen::FullPivLU<Matrix> lu(h0);
  if (!lu.isInvertible())
    throw SingularMatrixError("zero-lag coefficient of the factor is singular");
  const CMatrix h0_inv = lu.inverse().cast<Complex>();
  SpectralFactor out{factor.grid, {}, h0 * factor.sigma * h0.transpose(),
                     factor.diagnostics};
  out.sigma = 0.5 * (out.sigma + out.sigma.transpose()).eval();
  out.h.reserve(factor.h.size());
  for (const CMatrix& h : factor.h) out.h.push_back(h * h0_inv);
  return out;
}

std::vector<CMatrix> one_sided(const std::vector<CMatrix>& field,
                               const FrequencyGrid& grid) {
  return {field.begin(), field.begin() + grid.one_sided_size()};
}

}  // namespace spectral_gc
