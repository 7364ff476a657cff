#include "spectral_gc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spectral_gc {
namespace {

constexpr double kRankTolerance = 1e-12;

Matrix centered_data(const TimeSeriesPanel& panel) {
  const Matrix& x = panel.data();
  Matrix centered = x.colwise() - x.rowwise().mean();
  const Vector variance = centered.rowwise().squaredNorm() / static_cast<double>(x.cols());
  const double largest = variance.maxCoeff();
  for (int i = 0; i < variance.size(); ++i)
    if (!(variance(i) > 1e-14 * largest) || variance(i) == 0.0)
      throw NumericalError("degenerate panel: channel " + std::to_string(i + 1) +
                           " has zero variance");
  return centered;
}

// Solves X1 D + D Y2 = rhs for D through the Kronecker form.
Matrix solve_sylvester(const Matrix& x1, const Matrix& y2, const Matrix& rhs) {
  const int n = static_cast<int>(rhs.rows());
  Matrix k = Matrix::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          double v = 0.0;
          if (j == l) v += x1(i, m);
          if (i == m) v += y2(l, j);
          k(i + n * j, m + n * l) = v;
        }
  const Vector b = Eigen::Map<const Vector>(rhs.data(), n * n);
  const Vector d = k.fullPivLu().solve(b);
  return Eigen::Map<const Matrix>(d.data(), n, n);
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix spd_inverse(const Matrix& m, int order) {
  Eigen::LLT<Matrix> llt(symmetrized(m));
  const Vector d = llt.matrixLLT().diagonal().cwiseAbs2();
  if (llt.info() != Eigen::Success || !(d.minCoeff() > 1e-14 * d.maxCoeff()))
    throw SingularMatrixError("prediction error covariance is singular at order " +
                              std::to_string(order) + "; channels may be linearly dependent");
  return llt.solve(Matrix::Identity(m.rows(), m.cols()));
}

double log_det_spd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(symmetrized(m));
  if (llt.info() != Eigen::Success)
    return -std::numeric_limits<double>::infinity();
  const Matrix& l = llt.matrixLLT();
  return 2.0 * l.diagonal().array().log().sum();
}

struct RegressionFit {
  std::vector<Matrix> ar;
  std::vector<Matrix> ma;
  Matrix residual_cov;
};

// Lagged least-squares design shared by every (p, q) on a common sample.
// Columns: x lags 1..p_max, e lags 1..q_max, target x(n) - e(n), e(n).
class LaggedDesign {
 public:
  LaggedDesign(const Matrix& x, const Matrix& eps, int long_order, int p_max,
               int q_max)
      : n_(static_cast<int>(x.rows())), p_max_(p_max), q_max_(q_max) {
    const int total = static_cast<int>(x.cols());
    const int first = long_order + std::max(p_max, q_max);
    rows_ = total - first;
    const int cols = n_ * (p_max + q_max) + 2 * n_;
    if (rows_ <= n_ * (p_max + q_max) + n_)
      throw ConfigError("panel of " + std::to_string(total) +
                        " samples is too short for the requested orders");
    Matrix u(rows_, cols);
    for (int row = 0; row < rows_; ++row) {
      const int t = first + row;
      for (int r = 1; r <= p_max; ++r)
        u.row(row).segment((r - 1) * n_, n_) = x.col(t - r).transpose();
      for (int s = 1; s <= q_max; ++s)
        u.row(row).segment(n_ * (p_max + s - 1), n_) =
            eps.col(t - s - long_order).transpose();
      const auto e_now = eps.col(t - long_order);
      u.row(row).segment(n_ * (p_max + q_max), n_) = (x.col(t) - e_now).transpose();
      u.row(row).segment(n_ * (p_max + q_max) + n_, n_) = e_now.transpose();
    }
    gram_ = u.transpose() * u;
    const Vector eps_mean =
        u.middleCols(n_ * (p_max + q_max) + n_, n_).colwise().mean().transpose();
    eps_cov_ = symmetrized(gram_.bottomRightCorner(n_, n_) / rows_ -
                           eps_mean * eps_mean.transpose());
  }

  int rows() const { return rows_; }
  const Matrix& innovation_cov() const { return eps_cov_; }

  RegressionFit solve(int p, int q) const {
    std::vector<int> idx;
    for (int c = 0; c < n_ * p; ++c) idx.push_back(c);
    for (int c = 0; c < n_ * q; ++c) idx.push_back(n_ * p_max_ + c);
    const int k = static_cast<int>(idx.size());
    std::vector<int> all = idx;
    for (int c = 0; c < 2 * n_; ++c) all.push_back(n_ * (p_max_ + q_max_) + c);

    const Matrix w = gram_(all, all);
    const Matrix g = w.topLeftCorner(k, k);
    const Matrix rhs = w.block(0, k, k, n_);
    Eigen::LDLT<Matrix> ldlt(g);
    const Vector d = ldlt.vectorD().cwiseAbs();
    if (ldlt.info() != Eigen::Success || d.minCoeff() <= kRankTolerance * d.maxCoeff())
      throw SingularMatrixError("rank-deficient regressor matrix in lagged least squares");
    const Matrix c = ldlt.solve(rhs);

    Matrix v(k + 2 * n_, n_);
    v.topRows(k) = -c;
    v.middleRows(k, n_).setIdentity();
    v.bottomRows(n_).setIdentity();

    RegressionFit fit;
    fit.residual_cov = symmetrized(v.transpose() * w * v / rows_);
    for (int r = 0; r < p; ++r)
      fit.ar.push_back(c.block(r * n_, 0, n_, n_).transpose());
    fit.ma.push_back(Matrix::Identity(n_, n_));
    for (int s = 0; s < q; ++s)
      fit.ma.push_back(c.block(n_ * (p + s), 0, n_, n_).transpose());
    return fit;
  }

 private:
  int n_;
  int p_max_;
  int q_max_;
  int rows_ = 0;
  Matrix gram_;
  Matrix eps_cov_;
};

// Long-AR residuals aligned so column j is e(long_order + j).
Matrix long_ar_residuals(const Matrix& centered, int long_order) {
  if (long_order < 1) throw ConfigError("long AR order must be positive");
  if (centered.cols() <= 2 * long_order)
    throw ConfigError("panel is too short for a long AR of order " +
                      std::to_string(long_order));
  return nuttall_strand(centered, long_order).forward_errors;
}

FitReport make_report(const LaggedDesign& design, int p, int q,
                      std::vector<OrderCriterion> criteria) {
  RegressionFit fit = design.solve(p, q);
  FitReport report{VarmaModel(std::move(fit.ar), std::move(fit.ma), design.innovation_cov()),
                   {p, q}, std::move(criteria), fit.residual_cov, {}};
  if (p > 0 && ar_root_report(report.model).classification != RootClass::stable)
    report.warnings.push_back("fitted AR part is not stable");
  return report;
}

}  // namespace

NuttallStrandResult nuttall_strand(const Matrix& centered, int max_order) {
  const int total = static_cast<int>(centered.cols());
  if (max_order < 0) throw ConfigError("AR order must be non-negative");
  if (total <= max_order + 1)
    throw ConfigError("panel is too short for AR order " + std::to_string(max_order));

  NuttallStrandResult out;
  Matrix forward = centered;
  Matrix backward = centered;
  Matrix pf = centered * centered.transpose() / total;
  Matrix pb = pf;
  std::vector<Matrix> a;  // forward polynomial, e_f(n) = x(n) + sum a_k x(n-k)
  std::vector<Matrix> b;  // backward polynomial
  out.coefficients.push_back({});
  out.forward_cov.push_back(pf);

  for (int m = 1; m <= max_order; ++m) {
    const int len = total - m;
    const Matrix f = forward.middleCols(m, len);
    const Matrix g = backward.middleCols(m - 1, len);
    const Matrix rff = f * f.transpose();
    const Matrix rbb = g * g.transpose();
    const Matrix rfb = f * g.transpose();

    const Matrix pf_inv = spd_inverse(pf, m - 1);
    const Matrix pb_inv = spd_inverse(pb, m - 1);
    const Matrix delta = solve_sylvester(rff * pf_inv, pb_inv * rbb, 2.0 * rfb);
    const Matrix refl_f = -delta * pb_inv;
    const Matrix refl_b = -delta.transpose() * pf_inv;

    forward.middleCols(m, len) = f + refl_f * g;
    backward.middleCols(m, len) = g + refl_b * f;
    pf = symmetrized(pf - delta * pb_inv * delta.transpose());
    pb = symmetrized(pb - delta.transpose() * pf_inv * delta);

    std::vector<Matrix> a_next(static_cast<std::size_t>(m));
    std::vector<Matrix> b_next(static_cast<std::size_t>(m));
    for (int k = 1; k < m; ++k) {
      a_next[k - 1] = a[k - 1] + refl_f * b[m - k - 1];
      b_next[k - 1] = b[k - 1] + refl_b * a[m - k - 1];
    }
    a_next[m - 1] = refl_f;
    b_next[m - 1] = refl_b;
    a = std::move(a_next);
    b = std::move(b_next);

    std::vector<Matrix> coeffs;
    coeffs.reserve(a.size());
    for (const Matrix& ak : a) coeffs.push_back(-ak);
    out.coefficients.push_back(std::move(coeffs));
    out.forward_cov.push_back(pf);
  }
  out.forward_errors = forward.rightCols(total - max_order);
  return out;
}

double hannan_quinn_value(const Matrix& residual_cov, int parameter_blocks,
                          int n_samples) {
  const int n = static_cast<int>(residual_cov.rows());
  const double ns = n_samples;
  return log_det_spd(residual_cov) +
         2.0 * parameter_blocks * n * n * std::log(std::log(ns)) / ns;
}

int hannan_quinn(std::span<const OrderCandidate> candidates, int n_samples) {
  if (candidates.empty()) throw ConfigError("no candidate orders");
  int best = candidates.front().order;
  double best_value = std::numeric_limits<double>::infinity();
  for (const OrderCandidate& c : candidates) {
    const double v = hannan_quinn_value(c.residual_cov, c.order, n_samples);
    if (v < best_value || (v == best_value && c.order < best)) {
      best_value = v;
      best = c.order;
    }
  }
  return best;
}

FitReport fit_var(const TimeSeriesPanel& panel, int p_max) {
  if (p_max < 1) throw ConfigError("p_max must be positive");
  const int n = panel.n_channels();
  const int total = panel.n_samples();
  if (total <= n * p_max + 1)
    throw ConfigError("panel of " + std::to_string(total) +
                      " samples is too short for VAR order " + std::to_string(p_max));
  const Matrix centered = centered_data(panel);
  NuttallStrandResult ns = nuttall_strand(centered, p_max);

  std::vector<OrderCandidate> candidates;
  std::vector<OrderCriterion> criteria;
  for (int p = 1; p <= p_max; ++p) {
    candidates.push_back({p, ns.forward_cov[p]});
    criteria.push_back({p, 0, hannan_quinn_value(ns.forward_cov[p], p, total)});
  }
  const int p = hannan_quinn(candidates, total);
  return FitReport{VarmaModel(ns.coefficients[p], {}, ns.forward_cov[p]),
                   {p, 0}, std::move(criteria), ns.forward_cov[p], {}};
}

FitReport fit_vma(const TimeSeriesPanel& panel, int q, int long_ar_order) {
  return fit_varma(panel, 0, q, long_ar_order);
}

FitReport fit_varma(const TimeSeriesPanel& panel, int p, int q, int long_ar_order) {
  if (p < 0 || q < 0 || p + q == 0) throw ConfigError("VARMA orders must be non-negative and not both zero");
  const Matrix centered = centered_data(panel);
  const Matrix eps = long_ar_residuals(centered, long_ar_order);
  LaggedDesign design(centered, eps, long_ar_order, p, q);
  const RegressionFit fit = design.solve(p, q);
  std::vector<OrderCriterion> criteria{
      {p, q, hannan_quinn_value(fit.residual_cov, p + q, design.rows())}};
  return make_report(design, p, q, std::move(criteria));
}

FitReport select_vma(const TimeSeriesPanel& panel, int q_max, int long_ar_order) {
  return select_varma(panel, 0, q_max, long_ar_order);
}

FitReport select_varma(const TimeSeriesPanel& panel, int p_max, int q_max,
                       int long_ar_order) {
  if (p_max < 0 || q_max < 1) throw ConfigError("order search needs q_max >= 1");
  const Matrix centered = centered_data(panel);
  const Matrix eps = long_ar_residuals(centered, long_ar_order);
  // Shrink the search to what the sample supports; orders beyond it are never selectable.
  const int n = panel.n_channels();
  const int total = panel.n_samples();
  while (q_max > 1 && total - long_ar_order - std::max(p_max, q_max) <= n * (p_max + q_max) + n)
    --q_max;
  LaggedDesign design(centered, eps, long_ar_order, p_max, q_max);

  std::vector<OrderCriterion> criteria;
  OrderCriterion best{0, 0, std::numeric_limits<double>::infinity()};
  const int p_first = p_max == 0 ? 0 : 1;
  for (int p = p_first; p <= p_max; ++p)
    for (int q = 1; q <= q_max; ++q) {
      const RegressionFit fit = design.solve(p, q);
      const double v = hannan_quinn_value(fit.residual_cov, p + q, design.rows());
      criteria.push_back({p, q, v});
      if (v < best.value) best = {p, q, v};
    }
  return make_report(design, best.p, best.q, std::move(criteria));
}

}  // namespace spectral_gc
