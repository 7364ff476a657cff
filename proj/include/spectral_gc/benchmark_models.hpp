#pragma once

#include <optional>
#include <utility>

#include "spectral_gc/model.hpp"

namespace spectral_gc {

/// Identifiers of the built-in benchmark mechanisms.
inline constexpr int kBenchmarkIds[] = {1, 2, 4};

/**
 * Benchmark 1: bivariate VMA(1) with unidirectional x2 -> x1 coupling and
 *   correlated innovations, Sigma_w = [[1, 1], [1, 5]].
 * Benchmark 2: trivariate VARMA(2, 2) with a resonance at r = 0.95,
 *   theta = pi/3 in x1, Sigma_w = I.
 * Benchmark 4: bivariate nonminimum-phase VMA(2) with Sigma_w = [[1, 1], [1, 5]].
 *
 * Benchmark 3 is a VAR model whose coefficients are not published with
 * these benchmarks; requesting it raises ConfigError with that explanation.
 */
VarmaModel benchmark_model(int id);

/// Estimator orders used when a benchmark is analyzed with its known structure.
struct BenchmarkOrders {
  std::optional<int> vma_order;
  std::optional<std::pair<int, int>> varma_orders;
};

BenchmarkOrders benchmark_orders(int id);

}  // namespace spectral_gc
