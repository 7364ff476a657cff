#include "spectral_gc/benchmark_models.hpp"

#include <cmath>

namespace spectral_gc {
namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

VarmaModel vma1() {
  return VarmaModel({}, {Matrix::Identity(2, 2), mat2(0, 1, 0, 1)},
                    mat2(1, 1, 1, 5));
}

VarmaModel varma22() {
  const double r = 0.95;
  const double theta = kPi / 3.0;
  const double b = 0.5;
  const double a = -0.5;
  const double c = 0.7;

  Matrix a1 = Matrix::Zero(3, 3);
  a1(0, 0) = 2.0 * r * std::cos(theta);
  a1(1, 0) = b;
  a1(1, 1) = a;
  a1(2, 2) = c;
  Matrix a2 = Matrix::Zero(3, 3);
  a2(0, 0) = -r * r;

  Matrix b0(3, 3);
  b0 << 1, 0, 1,
        0, 1, 0,
        0, 1, 1;
  Matrix b1 = Matrix::Zero(3, 3);
  b1(0, 2) = 1.0;
  Matrix b2 = Matrix::Zero(3, 3);
  b2(2, 1) = 1.0;
  return VarmaModel({a1, a2}, {b0, b1, b2}, Matrix::Identity(3, 3));
}

VarmaModel nonminimum_phase_vma2() {
  return VarmaModel({}, {Matrix::Identity(2, 2), mat2(2, 1, 0, 0), mat2(4, 2, 0, 2)},
                    mat2(1, 1, 1, 5));
}

}  // namespace

VarmaModel benchmark_model(int id) {
  switch (id) {
    case 1: return vma1();
    case 2: return varma22();
    case 4: return nonminimum_phase_vma2();
    case 3:
      throw ConfigError(
          "benchmark 3 is a VAR model whose coefficients are not published "
          "with these benchmarks; supply them as a model file and use the "
          "'model' subcommand");
    default:
      throw ConfigError("unknown benchmark " + std::to_string(id) +
                        " (available: 1, 2, 4)");
  }
}

BenchmarkOrders benchmark_orders(int id) {
  switch (id) {
    case 1: return {1, std::nullopt};
    case 2: return {std::nullopt, std::pair{2, 2}};
    case 4: return {2, std::nullopt};
    default: benchmark_model(id);  // throws
  }
  return {};
}

}  // namespace spectral_gc
