#pragma once

#include "spectral_gc/simulate.hpp"
#include "spectral_gc/spectral.hpp"

namespace spectral_gc {

/// Welch settings: von Hann window, 50% overlap, segment_len-point grid.
struct WelchConfig {
  int segment_len = 256;
};

/// Symmetric von Hann window of the given length.
Vector hann_window(int length);

/**
 * Averaged modified periodogram cross-spectra.
 *
 * Channel means are removed, segments of segment_len samples advance by
 * segment_len / 2 and a trailing partial segment is dropped.  Each segment
 * is windowed, transformed, and S_ij(nu_k) = mean_seg W_i conj(W_j) / (U L)
 * with U the mean square of the window, so white noise maps onto its
 * covariance at every frequency.
 */
SpectralMatrix welch_cross_spectrum(const TimeSeriesPanel& panel,
                                    const WelchConfig& config = {});

/// Number of full segments that fit in n_samples.
int welch_segment_count(int n_samples, int segment_len);

}  // namespace spectral_gc
