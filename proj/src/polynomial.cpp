#include "spectral_gc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace spectral_gc {
namespace {

constexpr int kLeibnizMaxChannels = 6;

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// Parlett-Reinsch balancing by powers of two; exact in floating point.
void balance(Matrix& m) {
  const int n = static_cast<int>(m.rows());
  constexpr double gamma = 0.95;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      const double row = m.row(i).lpNorm<1>() - std::abs(m(i, i));
      const double col = m.col(i).lpNorm<1>() - std::abs(m(i, i));
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < gamma * (col + row)) {
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
        changed = true;
      }
    }
  }
}

}  // namespace

Polynomial poly_multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Polynomial poly_trim(Polynomial c, double rel_tol) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) <= rel_tol * scale) c.pop_back();
  return c;
}

Complex poly_evaluate(const Polynomial& c, Complex u) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

Polynomial matrix_polynomial_determinant(std::span<const Matrix> coeffs) {
  if (coeffs.empty()) throw ConfigError("empty matrix polynomial");
  const int n = static_cast<int>(coeffs.front().rows());
  if (n > kLeibnizMaxChannels)
    return matrix_polynomial_determinant_interpolated(coeffs);

  // entry(i, j) as a polynomial in u
  std::vector<Polynomial> entry(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Polynomial p(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) p[k] = coeffs[k](i, j);
      entry[static_cast<std::size_t>(i * n + j)] = poly_trim(std::move(p), 0.0);
    }

  const std::size_t degree = (coeffs.size() - 1) * static_cast<std::size_t>(n);
  Polynomial det(degree + 1, 0.0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Polynomial term{1.0};
    for (int i = 0; i < n && !term.empty(); ++i) {
      const Polynomial& e = entry[static_cast<std::size_t>(i * n + perm[i])];
      if (e.size() == 1 && e[0] == 0.0) {
        term.clear();
        break;
      }
      term = poly_multiply(term, e);
    }
    const int sign = permutation_sign(perm);
    for (std::size_t k = 0; k < term.size(); ++k) det[k] += sign * term[k];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

Polynomial matrix_polynomial_determinant_interpolated(
    std::span<const Matrix> coeffs) {
  if (coeffs.empty()) throw ConfigError("empty matrix polynomial");
  const int n = static_cast<int>(coeffs.front().rows());
  const int degree = static_cast<int>(coeffs.size() - 1) * n;
  const int m = degree + 1;
  std::vector<Complex> values(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double angle = 2.0 * kPi * k / m;
    const Complex u{std::cos(angle), std::sin(angle)};
    CMatrix at = CMatrix::Zero(n, n);
    Complex power = 1.0;
    for (const Matrix& c : coeffs) {
      at += power * c.cast<Complex>();
      power *= u;
    }
    values[static_cast<std::size_t>(k)] = at.partialPivLu().determinant();
  }
  Polynomial det(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < m; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < m; ++k) {
      const double angle = -2.0 * kPi * static_cast<double>(j) * k / m;
      acc += values[static_cast<std::size_t>(k)] *
             Complex{std::cos(angle), std::sin(angle)};
    }
    det[static_cast<std::size_t>(j)] = acc.real() / m;
  }
  return det;
}

std::vector<Complex> reciprocal_polynomial_roots(const Polynomial& c_in) {
  const Polynomial c = poly_trim(c_in);
  if (c.empty() || c.front() == 0.0)
    throw ConfigError("polynomial must have a nonzero constant term");
  const int degree = static_cast<int>(c.size()) - 1;
  if (degree == 0) return {};
  if (degree == 1) return {Complex(-c[1] / c[0], 0.0)};

  // Companion matrix of the monic z-polynomial z^D + (c1/c0) z^{D-1} + ...
  Matrix companion = Matrix::Zero(degree, degree);
  companion.diagonal(-1).setOnes();
  for (int k = 0; k < degree; ++k)
    companion(0, k) = -c[static_cast<std::size_t>(k + 1)] / c[0];
  balance(companion);

  Eigen::EigenSolver<Matrix> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("companion matrix eigenvalue solver failed");
  std::vector<Complex> roots(solver.eigenvalues().begin(),
                             solver.eigenvalues().end());
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return roots;
}

}  // namespace spectral_gc
