#include "spectral_gc/connectivity.hpp"

#include <cmath>
#include <sstream>

#include "spectral_gc/model.hpp"

namespace spectral_gc {
namespace {

std::string at_nu(double nu) {
  std::ostringstream out;
  out << " at nu = " << nu;
  return out.str();
}

CMatrix invert_transfer(const CMatrix& h) {
  Eigen::PartialPivLU<CMatrix> lu(h);
  if (!(lu.rcond() > 1.0 / kSingularCondition))
    throw SingularMatrixError("transfer matrix is singular");
  return lu.inverse();
}

template <typename Kernel>
ConnectivityField factor_field(const SpectralFactor& factor, FieldKind kind,
                               std::string tag, Kernel kernel) {
  const InnovationStructure w = innovation_structure(factor.sigma);
  const int half = factor.grid.one_sided_size();
  ConnectivityField field{factor.grid, {}, kind, std::move(tag)};
  field.values.reserve(static_cast<std::size_t>(half));
  for (int k = 0; k < half; ++k) {
    try {
      field.values.push_back(kernel(factor.h[static_cast<std::size_t>(k)], w));
    } catch (const SingularMatrixError& e) {
      throw SingularMatrixError(e.what() + at_nu(factor.grid.nu(k)));
    }
  }
  return field;
}

Vector positive_diagonal(const CMatrix& s, double nu) {
  Vector d = s.diagonal().real();
  for (int i = 0; i < d.size(); ++i)
    if (!(d(i) > 0.0))
      throw NumericalError("channel " + std::to_string(i + 1) + " has no power" + at_nu(nu));
  return d;
}

}  // namespace

const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::tpdc: return "tPDC";
    case FieldKind::tdtf: return "tDTF";
    case FieldKind::coherency: return "coherency";
    case FieldKind::partial_coherence: return "partial-coherence";
    case FieldKind::gpdc: return "gPDC";
    case FieldKind::dc: return "DC";
  }
  return "unknown";
}

InnovationStructure innovation_structure(const Matrix& sigma) {
  const int n = static_cast<int>(sigma.rows());
  if (sigma.cols() != n || n == 0) throw ConfigError("innovations covariance must be square");
  Eigen::LLT<Matrix> llt(0.5 * (sigma + sigma.transpose()));
  if (llt.info() != Eigen::Success)
    throw SingularMatrixError("innovations covariance is not positive definite");
  const Matrix inverse = llt.solve(Matrix::Identity(n, n));

  InnovationStructure w;
  w.d = sigma.diagonal();
  w.d_tilde = inverse.diagonal();
  const Vector ds = w.d.cwiseSqrt().cwiseInverse();
  const Vector dt = w.d_tilde.cwiseSqrt().cwiseInverse();
  w.r = ds.asDiagonal() * sigma * ds.asDiagonal();
  w.r_tilde = dt.asDiagonal() * inverse * dt.asDiagonal();
  w.r = 0.5 * (w.r + w.r.transpose()).eval();
  w.r_tilde = 0.5 * (w.r_tilde + w.r_tilde.transpose()).eval();
  w.r.diagonal().setOnes();
  w.r_tilde.diagonal().setOnes();
  w.rho = w.r - Matrix::Identity(n, n);
  w.rho_tilde = w.r_tilde - Matrix::Identity(n, n);
  return w;
}

CMatrix gamma_at(const CMatrix& h, const InnovationStructure& w) {
  // diag(H Sigma H^H) with Sigma = D^{1/2} R D^{1/2}
  const CMatrix g = h * w.d.cwiseSqrt().asDiagonal();
  const Vector power = (g * w.r.cast<Complex>() * g.adjoint()).diagonal().real();
  for (int i = 0; i < power.size(); ++i)
    if (!(power(i) > 0.0))
      throw NumericalError("channel " + std::to_string(i + 1) + " has no power");
  return power.cwiseSqrt().cwiseInverse().asDiagonal() * g;
}

CMatrix total_dtf_at(const CMatrix& h, const InnovationStructure& w) {
  const CMatrix g = gamma_at(h, w);
  const CMatrix gc = g.conjugate();
  return g.cwiseProduct(gc) + (g * w.rho.cast<Complex>()).cwiseProduct(gc);
}

CMatrix pi_at(const CMatrix& h, const InnovationStructure& w) {
  const CMatrix abar = invert_transfer(h);
  const CMatrix p = w.d_tilde.cwiseSqrt().asDiagonal() * abar;
  // diag(S^{-1}) = diag(Abar^H Sigma^{-1} Abar) with Sigma^{-1} = D~^{1/2} R~ D~^{1/2}
  const Vector inverse_power = (p.adjoint() * w.r_tilde.cast<Complex>() * p).diagonal().real();
  return p * inverse_power.cwiseSqrt().cwiseInverse().asDiagonal();
}

CMatrix total_pdc_at(const CMatrix& h, const InnovationStructure& w) {
  const CMatrix p = pi_at(h, w);
  const CMatrix pc = p.conjugate();
  return pc.cwiseProduct(p) + pc.cwiseProduct(w.rho_tilde.cast<Complex>() * p);
}

CMatrix gpdc_at(const CMatrix& h, const InnovationStructure& w) {
  const Matrix weighted = w.d_tilde.asDiagonal() * invert_transfer(h).cwiseAbs2();
  const Eigen::RowVectorXd column_sums = weighted.colwise().sum();
  return (weighted * column_sums.cwiseInverse().asDiagonal()).cast<Complex>();
}

CMatrix dc_at(const CMatrix& h, const InnovationStructure& w) {
  const Matrix weighted = h.cwiseAbs2() * w.d.asDiagonal();
  const Vector row_sums = weighted.rowwise().sum();
  return (row_sums.cwiseInverse().asDiagonal() * weighted).cast<Complex>();
}

ConnectivityField coherency(const SpectralMatrix& spectrum, std::string method_tag) {
  const int half = spectrum.grid.one_sided_size();
  ConnectivityField field{spectrum.grid, {}, FieldKind::coherency, std::move(method_tag)};
  for (int k = 0; k < half; ++k) {
    const CMatrix& s = spectrum.values[static_cast<std::size_t>(k)];
    const Vector scale = positive_diagonal(s, spectrum.grid.nu(k)).cwiseSqrt().cwiseInverse();
    field.values.push_back(scale.asDiagonal() * s * scale.asDiagonal());
  }
  return field;
}

ConnectivityField partial_coherence(const SpectralMatrix& spectrum,
                                    std::string method_tag) {
  const int half = spectrum.grid.one_sided_size();
  ConnectivityField field{spectrum.grid, {}, FieldKind::partial_coherence,
                          std::move(method_tag)};
  for (int k = 0; k < half; ++k) {
    const double nu = spectrum.grid.nu(k);
    const CMatrix& s = spectrum.values[static_cast<std::size_t>(k)];
    positive_diagonal(s, nu);
    Eigen::PartialPivLU<CMatrix> lu(s);
    if (!(lu.rcond() > 1.0 / kSingularCondition))
      throw SingularMatrixError("spectral matrix is singular" + at_nu(nu));
    const CMatrix inverse = lu.inverse();
    const Vector scale = positive_diagonal(inverse, nu).cwiseSqrt().cwiseInverse();
    field.values.push_back(scale.asDiagonal() * inverse * scale.asDiagonal());
  }
  return field;
}

std::vector<CMatrix> gamma_factor(const SpectralFactor& factor) {
  return factor_field(factor, FieldKind::tdtf, {}, gamma_at).values;
}

std::vector<CMatrix> pi_factor(const SpectralFactor& factor) {
  return factor_field(factor, FieldKind::tpdc, {}, pi_at).values;
}

ConnectivityField total_dtf(const SpectralFactor& factor, std::string method_tag) {
  return factor_field(factor, FieldKind::tdtf, std::move(method_tag), total_dtf_at);
}

ConnectivityField total_pdc(const SpectralFactor& factor, std::string method_tag) {
  return factor_field(factor, FieldKind::tpdc, std::move(method_tag), total_pdc_at);
}

ConnectivityField gpdc(const SpectralFactor& factor, std::string method_tag) {
  return factor_field(factor, FieldKind::gpdc, std::move(method_tag), gpdc_at);
}

ConnectivityField directed_coherence(const SpectralFactor& factor, std::string method_tag) {
  return factor_field(factor, FieldKind::dc, std::move(method_tag), dc_at);
}

double mse_vs_reference(const ConnectivityField& estimate,
                        const ConnectivityField& reference) {
  if (!(estimate.grid == reference.grid) || estimate.values.size() != reference.values.size())
    throw ConfigError("fields are defined on different grids");
  if (estimate.kind != reference.kind)
    throw ConfigError(std::string("cannot compare ") + to_string(estimate.kind) + " with " +
                      to_string(reference.kind));
  if (estimate.values.empty()) throw ConfigError("empty field");
  const int n = reference.n_channels();
  double total = 0.0;
  for (std::size_t k = 0; k < estimate.values.size(); ++k) {
    if (estimate.values[k].rows() != n || estimate.values[k].cols() != n)
      throw ConfigError("fields have different channel counts");
    total += (estimate.values[k] - reference.values[k]).cwiseAbs2().sum();
  }
  return total / (static_cast<double>(estimate.values.size()) * n * n);
}

}  // namespace spectral_gc
