#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "spectral_gc/model.hpp"

namespace spectral_gc {

/// N channels x n_s samples of real observations, channel-major.
class TimeSeriesPanel {
 public:
  explicit TimeSeriesPanel(Matrix data);

  int n_channels() const { return static_cast<int>(data_.rows()); }
  int n_samples() const { return static_cast<int>(data_.cols()); }
  const Matrix& data() const { return data_; }

 private:
  Matrix data_;
};

/// Identifies the random stream; bump when the sampling procedure changes.
inline constexpr const char* kRngVersion = "mt19937_64/box-muller/v1";

/**
 * Standard normal variates from std::mt19937_64 (bit-exact across standard
 * libraries) via Box-Muller with 53-bit uniforms, so a seed reproduces the
 * same stream on every platform.
 */
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform_open();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline constexpr int kDefaultBurnIn = 1000;

/**
 * Runs the model recursion from zero initial conditions for burn_in +
 * n_samples steps with w(n) = L z(n), L L^T = Sigma_w, z i.i.d. N(0, I), and
 * keeps the last n_samples.  The model need not be minimum phase but must be
 * stable.
 */
TimeSeriesPanel simulate(const VarmaModel& model, int n_samples,
                         std::uint64_t seed, int burn_in = kDefaultBurnIn);

/// Mean-removed covariance with divisor n_samples.
Matrix sample_covariance(const TimeSeriesPanel& panel);

struct PanelMetadata {
  std::uint64_t seed = 0;
  std::string model_hash;
  int burn_in = 0;
};

/// CSV with header `t,x1,...,xN`, one row per sample.
void write_panel_csv(const TimeSeriesPanel& panel, const std::filesystem::path& path);
TimeSeriesPanel read_panel_csv(const std::filesystem::path& path);

/// Sidecar JSON next to an exported panel.
void write_panel_metadata(const PanelMetadata& meta, const std::filesystem::path& path);
PanelMetadata read_panel_metadata(const std::filesystem::path& path);

}  // namespace spectral_gc
