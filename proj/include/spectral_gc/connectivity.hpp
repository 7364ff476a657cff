#pragma once

#include <string>
#include <vector>

#include "spectral_gc/spectral.hpp"

namespace spectral_gc {

enum class FieldKind { tpdc, tdtf, coherency, partial_coherence, gpdc, dc };

const char* to_string(FieldKind kind);

/**
 * Complex N x N matrix per point of the one-sided band 0 <= nu < 0.5 of
 * `grid`; values[k] belongs to nu = grid.nu(k).
 */
struct ConnectivityField {
  FrequencyGrid grid;
  std::vector<CMatrix> values;
  FieldKind kind;
  std::string method_tag;

  int n_channels() const {
    return values.empty() ? 0 : static_cast<int>(values.front().rows());
  }
};

/**
 * Scalings of an innovations covariance Sigma:
 * D = diag(Sigma), R = D^{-1/2} Sigma D^{-1/2},
 * D~ = diag(Sigma^{-1}), R~ = D~^{-1/2} Sigma^{-1} D~^{-1/2},
 * rho = R - I, rho~ = R~ - I.
 */
struct InnovationStructure {
  Vector d;
  Matrix r;
  Vector d_tilde;
  Matrix r_tilde;
  Matrix rho;
  Matrix rho_tilde;
};

/// Throws SingularMatrixError when sigma is not symmetric positive definite.
InnovationStructure innovation_structure(const Matrix& sigma);

// Pointwise kernels on one transfer matrix h = H(nu).

/// Gamma = diag(S)^{-1/2} H D^{1/2} with S = H Sigma H^H.
CMatrix gamma_at(const CMatrix& h, const InnovationStructure& w);

/// Gamma .* conj(Gamma) + (Gamma rho) .* conj(Gamma).
CMatrix total_dtf_at(const CMatrix& h, const InnovationStructure& w);

/**
 * Pi = D~^{1/2} H^{-1} diag(S^{-1})^{-1/2}, the factor for which
 * Pi^H R~ Pi is the unit-diagonal partial coherence matrix
 * diag(S^{-1})^{-1/2} S^{-1} diag(S^{-1})^{-1/2}.
 * Throws SingularMatrixError when H is numerically singular.
 */
CMatrix pi_at(const CMatrix& h, const InnovationStructure& w);

/// conj(Pi) .* Pi + conj(Pi) .* (rho~ Pi); columns sum to one.
CMatrix total_pdc_at(const CMatrix& h, const InnovationStructure& w);

/// |Abar_ij|^2 d~_i / sum_k |Abar_kj|^2 d~_k with Abar = H^{-1}.
CMatrix gpdc_at(const CMatrix& h, const InnovationStructure& w);

/// |H_ij|^2 d_j / sum_k |H_ik|^2 d_k (squared directed coherence).
CMatrix dc_at(const CMatrix& h, const InnovationStructure& w);

// Fields over the one-sided band of the input grid.

/// C_ij = S_ij / sqrt(S_ii S_jj); throws NumericalError on a channel with no power.
ConnectivityField coherency(const SpectralMatrix& spectrum, std::string method_tag = {});

/// Unit-diagonal normalization of S^{-1}.
ConnectivityField partial_coherence(const SpectralMatrix& spectrum,
                                    std::string method_tag = {});

std::vector<CMatrix> gamma_factor(const SpectralFactor& factor);
std::vector<CMatrix> pi_factor(const SpectralFactor& factor);

ConnectivityField total_dtf(const SpectralFactor& factor, std::string method_tag = {});
ConnectivityField total_pdc(const SpectralFactor& factor, std::string method_tag = {});
ConnectivityField gpdc(const SpectralFactor& factor, std::string method_tag = {});
ConnectivityField directed_coherence(const SpectralFactor& factor,
                                     std::string method_tag = {});

/// Mean of |est - ref|^2 over grid points and all N^2 entries.
double mse_vs_reference(const ConnectivityField& estimate,
                        const ConnectivityField& reference);

}  // namespace spectral_gc
