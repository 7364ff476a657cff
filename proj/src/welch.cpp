#include "spectral_gc/welch.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

namespace spectral_gc {

Vector hann_window(int length) {
  if (length < 2) throw ConfigError("window length must be at least 2");
  Vector w(length);
  for (int n = 0; n < length; ++n)
    w(n) = 0.5 * (1.0 - std::cos(2.0 * kPi * n / (length - 1)));
  return w;
}

int welch_segment_count(int n_samples, int segment_len) {
  const int hop = segment_len / 2;
  if (n_samples < segment_len) return 0;
  return (n_samples - segment_len) / hop + 1;
}

SpectralMatrix welch_cross_spectrum(const TimeSeriesPanel& panel,
                                    const WelchConfig& config) {
  const int len = config.segment_len;
  if (len < 2 || len % 2 != 0)
    throw ConfigError("Welch segment length must be a positive even integer");
  const int segments = welch_segment_count(panel.n_samples(), len);
  if (segments < 1)
    throw ConfigError("panel of " + std::to_string(panel.n_samples()) +
                      " samples is shorter than one " + std::to_string(len) +
                      "-point segment");

  const int n = panel.n_channels();
  const int hop = len / 2;
  const Vector window = hann_window(len);
  const double scale = 1.0 / (window.squaredNorm() / len * len * segments);
  const Matrix centered = panel.data().colwise() - panel.data().rowwise().mean();

  FrequencyGrid grid(len);
  SpectralMatrix s{grid, std::vector<CMatrix>(static_cast<std::size_t>(len),
                                              CMatrix::Zero(n, n))};
  Eigen::FFT<double> fft;
  std::vector<double> segment(static_cast<std::size_t>(len));
  std::vector<Complex> spectrum;
  CMatrix transformed(n, len);
  for (int m = 0; m < segments; ++m) {
    const int start = m * hop;
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < len; ++t)
        segment[static_cast<std::size_t>(t)] = centered(i, start + t) * window(t);
      fft.fwd(spectrum, segment);
      // Eigen's real FFT fills the redundant half when HalfSpectrum is off
      for (int k = 0; k < len; ++k) transformed(i, k) = spectrum[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < len; ++k)
      s.values[static_cast<std::size_t>(k)].noalias() +=
          transformed.col(k) * transformed.col(k).adjoint();
  }
  for (CMatrix& v : s.values) v *= scale;
  return s;
}

}  // namespace spectral_gc
