#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spectral_gc/connectivity.hpp"
#include "spectral_gc/estimators.hpp"
#include "spectral_gc/wilson.hpp"

namespace spectral_gc {

enum class Method { var, vma, varma, wn };

const char* to_string(Method method);

/// Parses a comma-separated, case-insensitive list such as "var,vma,wn".
std::vector<Method> parse_methods(const std::string& text);

struct AnalysisConfig {
  std::vector<Method> methods{Method::var, Method::vma, Method::wn};
  int segment_len = 256;
  int var_p_max = 30;
  int long_ar_order = kDefaultLongArOrder;
  /// Fixed VMA order; when absent q is chosen by Hannan-Quinn over 1..vma_q_max.
  std::optional<int> vma_order;
  int vma_q_max = 60;
  /// Required when VARMA is requested.
  std::optional<std::pair<int, int>> varma_orders;
  WilsonOptions wilson;
};

/// One estimator applied to one panel; fields live on FrequencyGrid(segment_len).
struct MethodResult {
  Method method;
  SpectralFactor factor;
  ConnectivityField tpdc;
  ConnectivityField tdtf;
  std::optional<FitReport> fit;
};

/// Throws ConfigError for an empty method list, a VARMA request without orders
/// or a panel with fewer than two channels.
void validate_analysis(const AnalysisConfig& config, int n_channels);

std::vector<MethodResult> analyze_panel(const TimeSeriesPanel& panel,
                                        const AnalysisConfig& config);

struct ExperimentSpec {
  std::vector<int> sample_sizes{16384};
  int realizations = 100;
  std::uint64_t base_seed = 1;
  int burn_in = kDefaultBurnIn;
  unsigned jobs = 1;
  AnalysisConfig analysis;
};

struct MethodSummary {
  Method method;
  std::vector<double> tpdc_mse;  // one per realization
  std::vector<double> tdtf_mse;
  double mean_tpdc_mse = 0.0;
  double mean_tdtf_mse = 0.0;
};

/// Entry (i, j) whose reference is identically zero but whose estimate is not.
struct SpuriousLink {
  Method method;
  int i;
  int j;
  double max_real;
};

struct SampleSizeResult {
  int n_samples;
  std::vector<MethodSummary> methods;
  std::vector<MethodResult> first_realization;
  std::vector<SpuriousLink> spurious_links;
};

struct ExperimentResult {
  std::string label;
  std::string model_hash;
  std::string config_hash;
  ExperimentSpec spec;
  RootClass ma_class;
  ConnectivityField reference_tpdc;
  ConnectivityField reference_tdtf;
  std::vector<SampleSizeResult> rows;
};

/// Grid maximum of the real part above which a zero reference entry counts as detected.
inline constexpr double kSpuriousThreshold = 0.1;

/**
 * Monte Carlo comparison against the generating model.  Realization r of every
 * sample size is simulated with seed base_seed + r; realizations run on up to
 * `jobs` threads and are reduced in index order, so results do not depend on
 * scheduling.
 */
ExperimentResult run_model(const VarmaModel& model, const ExperimentSpec& spec,
                           std::string label);

/// run_model on a built-in benchmark, filling unset estimator orders from
/// benchmark_orders.
ExperimentResult run_example(int example_id, ExperimentSpec spec);

/// table.txt, table.csv, summary.json and per-sample-size realization-0 field
/// CSVs tpdc_r0_ns<N>.csv and tdtf_r0_ns<N>.csv (theory rows included).
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

nlohmann::json experiment_summary(const ExperimentResult& result);
std::string table_text(const ExperimentResult& result);
std::string table_csv(const ExperimentResult& result);

/// tpdc.csv, tdtf.csv, fields.json and fits.json for an observed panel.
void write_analysis(const std::vector<MethodResult>& results,
                    const std::filesystem::path& dir);

}  // namespace spectral_gc
