#include "spectral_gc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

#include "spectral_gc/benchmark_models.hpp"
#include "spectral_gc/export.hpp"
#include "spectral_gc/model_io.hpp"
#include "spectral_gc/welch.hpp"

namespace spectral_gc {
namespace {

constexpr double kZeroReference = 1e-12;

SpectralFactor method_factor(Method method, const TimeSeriesPanel& panel,
                             const AnalysisConfig& config, const FrequencyGrid& grid,
                             std::optional<FitReport>& fit) {
  switch (method) {
    case Method::var:
      fit = fit_var(panel, config.var_p_max);
      break;
    case Method::vma:
      fit = config.vma_order
                ? fit_vma(panel, *config.vma_order, config.long_ar_order)
                : select_vma(panel, config.vma_q_max, config.long_ar_order);
      break;
    case Method::varma:
      fit = fit_varma(panel, config.varma_orders->first, config.varma_orders->second,
                      config.long_ar_order);
      break;
    case Method::wn:
      return wilson_factorize(welch_cross_spectrum(panel, {config.segment_len}),
                              config.wilson);
  }
  return transfer_function(fit->model, grid);
}

nlohmann::json analysis_json(const AnalysisConfig& c) {
  nlohmann::json methods = nlohmann::json::array();
  for (Method m : c.methods) methods.push_back(to_string(m));
  nlohmann::json doc{{"methods", methods},
                     {"segment_len", c.segment_len},
                     {"var_p_max", c.var_p_max},
                     {"long_ar_order", c.long_ar_order},
                     {"vma_q_max", c.vma_q_max},
                     {"wilson_tol", c.wilson.tol},
                     {"wilson_max_iter", c.wilson.max_iter}};
  doc["vma_order"] = c.vma_order ? nlohmann::json(*c.vma_order) : nlohmann::json();
  doc["varma_orders"] = c.varma_orders
                            ? nlohmann::json{c.varma_orders->first, c.varma_orders->second}
                            : nlohmann::json();
  return doc;
}

std::string config_hash(const std::string& model_hash, const ExperimentSpec& spec) {
  const nlohmann::json doc{{"model", model_hash},
                           {"sample_sizes", spec.sample_sizes},
                           {"realizations", spec.realizations},
                           {"base_seed", spec.base_seed},
                           {"burn_in", spec.burn_in},
                           {"rng", kRngVersion},
                           {"analysis", analysis_json(spec.analysis)}};
  return fnv1a_hex(doc.dump());
}

// Runs body(r) for r in [0, count) on up to `jobs` threads; rethrows the
// failure with the smallest index.
template <typename Body>
void parallel_for(int count, unsigned jobs, Body body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < count; r = next++) {
      try {
        body(r);
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<SpuriousLink> spurious_links(const ConnectivityField& reference,
                                         const std::vector<MethodResult>& results) {
  std::vector<SpuriousLink> links;
  const int n = reference.n_channels();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double ref_max = 0.0;
      for (const CMatrix& v : reference.values) ref_max = std::max(ref_max, std::abs(v(i, j)));
      if (ref_max > kZeroReference) continue;
      for (const MethodResult& m : results) {
        double est_max = -std::numeric_limits<double>::infinity();
        for (const CMatrix& v : m.tpdc.values) est_max = std::max(est_max, v(i, j).real());
        if (est_max > kSpuriousThreshold) links.push_back({m.method, i, j, est_max});
      }
    }
  return links;
}

double mean(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total / static_cast<double>(v.size());
}

std::string field_rows(const ConnectivityField& reference,
                       const std::vector<MethodResult>& results, bool tpdc) {
  std::string text = field_csv(reference);
  for (const MethodResult& m : results) {
    const std::string rows = field_csv(tpdc ? m.tpdc : m.tdtf);
    text += rows.substr(rows.find('\n') + 1);
  }
  return text;
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::var: return "VAR";
    case Method::vma: return "VMA";
    case Method::varma: return "VARMA";
    case Method::wn: return "WN";
  }
  return "unknown";
}

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> methods;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::string key;
    for (char ch : item)
      if (!std::isspace(static_cast<unsigned char>(ch)))
        key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    Method m;
    if (key == "var") m = Method::var;
    else if (key == "vma") m = Method::vma;
    else if (key == "varma") m = Method::varma;
    else if (key == "wn") m = Method::wn;
    else throw ConfigError("unknown method '" + item + "' (expected var, vma, varma or wn)");
    if (std::find(methods.begin(), methods.end(), m) != methods.end())
      throw ConfigError("method '" + item + "' listed twice");
    methods.push_back(m);
  }
  if (methods.empty()) throw ConfigError("at least one method is required");
  return methods;
}

void validate_analysis(const AnalysisConfig& config, int n_channels) {
  if (config.methods.empty()) throw ConfigError("at least one method is required");
  if (n_channels < 2) throw ConfigError("connectivity analysis needs at least two channels");
  if (config.segment_len < 2 || config.segment_len % 2 != 0)
    throw ConfigError("segment length must be a positive even integer");
  if (config.var_p_max < 1) throw ConfigError("VAR p_max must be positive");
  if (config.vma_order && *config.vma_order < 1) throw ConfigError("VMA order must be positive");
  const bool wants_varma = std::find(config.methods.begin(), config.methods.end(),
                                     Method::varma) != config.methods.end();
  if (wants_varma && !config.varma_orders)
    throw ConfigError("VARMA requires orders (--orders p,q)");
  if (config.varma_orders &&
      (config.varma_orders->first < 0 || config.varma_orders->second < 0 ||
       config.varma_orders->first + config.varma_orders->second == 0))
    throw ConfigError("VARMA orders must be non-negative and not both zero");
}

std::vector<MethodResult> analyze_panel(const TimeSeriesPanel& panel,
                                        const AnalysisConfig& config) {
  validate_analysis(config, panel.n_channels());
  const FrequencyGrid grid(config.segment_len);
  std::vector<MethodResult> results;
  for (Method method : config.methods) {
    std::optional<FitReport> fit;
    SpectralFactor factor = method_factor(method, panel, config, grid, fit);
    ConnectivityField tpdc = total_pdc(factor, to_string(method));
    ConnectivityField tdtf = total_dtf(factor, to_string(method));
    results.push_back({method, std::move(factor), std::move(tpdc), std::move(tdtf),
                       std::move(fit)});
  }
  return results;
}

ExperimentResult run_model(const VarmaModel& model, const ExperimentSpec& spec,
                           std::string label) {
  if (spec.realizations < 1) throw ConfigError("realizations must be at least 1");
  if (spec.sample_sizes.empty()) throw ConfigError("at least one sample size is required");
  for (int n : spec.sample_sizes)
    if (n < 1) throw ConfigError("sample sizes must be positive");
  validate_analysis(spec.analysis, model.n_channels());
  const RootReport ar = ar_root_report(model);
  if (ar.classification != RootClass::stable)
    throw UnstableModelError("generating model is not stable (largest AR root magnitude " +
                             format_number(ar.magnitudes.front()) + ")");

  const FrequencyGrid grid(spec.analysis.segment_len);
  const SpectralFactor reference = canonical_factor(model, grid);
  ExperimentResult result{std::move(label),
                          model_hash(model),
                          {},
                          spec,
                          ma_root_report(model).classification,
                          total_pdc(reference, "theory"),
                          total_dtf(reference, "theory"),
                          {}};
  result.config_hash = config_hash(result.model_hash, spec);

  for (int n_samples : spec.sample_sizes) {
    const auto count = static_cast<std::size_t>(spec.realizations);
    const std::size_t n_methods = spec.analysis.methods.size();
    std::vector<std::vector<double>> pdc(n_methods, std::vector<double>(count));
    std::vector<std::vector<double>> dtf(n_methods, std::vector<double>(count));
    std::vector<MethodResult> first;

    parallel_for(spec.realizations, spec.jobs, [&](int r) {
      const TimeSeriesPanel panel =
          simulate(model, n_samples, spec.base_seed + static_cast<std::uint64_t>(r), spec.burn_in);
      std::vector<MethodResult> fits;
      try {
        fits = analyze_panel(panel, spec.analysis);
      } catch (const NumericalError& e) {
        throw NumericalError("realization " + std::to_string(r) + " (n_s = " +
                             std::to_string(n_samples) + "): " + e.what());
      }
      for (std::size_t m = 0; m < n_methods; ++m) {
        pdc[m][static_cast<std::size_t>(r)] = mse_vs_reference(fits[m].tpdc, result.reference_tpdc);
        dtf[m][static_cast<std::size_t>(r)] = mse_vs_reference(fits[m].tdtf, result.reference_tdtf);
      }
      if (r == 0) first = std::move(fits);
    });

    SampleSizeResult row{n_samples, {}, std::move(first), {}};
    for (std::size_t m = 0; m < n_methods; ++m)
      row.methods.push_back({spec.analysis.methods[m], pdc[m], dtf[m], mean(pdc[m]), mean(dtf[m])});
    row.spurious_links = spurious_links(result.reference_tpdc, row.first_realization);
    result.rows.push_back(std::move(row));
  }
  return result;
}

ExperimentResult run_example(int example_id, ExperimentSpec spec) {
  const VarmaModel model = benchmark_model(example_id);
  const BenchmarkOrders orders = benchmark_orders(example_id);
  if (!spec.analysis.vma_order) spec.analysis.vma_order = orders.vma_order;
  if (!spec.analysis.varma_orders) spec.analysis.varma_orders = orders.varma_orders;
  return run_model(model, spec, "example " + std::to_string(example_id));
}

std::string table_text(const ExperimentResult& result) {
  std::ostringstream out;
  out << "tPDC mean squared error vs theory, " << result.label << ", R = "
      << result.spec.realizations << "\n";
  out << std::setw(8) << "n_s";
  for (Method m : result.spec.analysis.methods) out << std::setw(14) << to_string(m);
  out << "\n";
  out << std::scientific << std::setprecision(3);
  for (const SampleSizeResult& row : result.rows) {
    out << std::setw(8) << row.n_samples;
    for (const MethodSummary& s : row.methods) out << std::setw(14) << s.mean_tpdc_mse;
    out << "\n";
  }
  return out.str();
}

std::string table_csv(const ExperimentResult& result) {
  std::string text = "n_samples,method,realizations,mean_tpdc_mse,mean_tdtf_mse\n";
  for (const SampleSizeResult& row : result.rows)
    for (const MethodSummary& s : row.methods)
      text += std::to_string(row.n_samples) + "," + to_string(s.method) + "," +
              std::to_string(s.tpdc_mse.size()) + "," + format_number(s.mean_tpdc_mse) + "," +
              format_number(s.mean_tdtf_mse) + "\n";
  return text;
}

nlohmann::json experiment_summary(const ExperimentResult& result) {
  std::vector<std::uint64_t> seeds;
  for (int r = 0; r < result.spec.realizations; ++r)
    seeds.push_back(result.spec.base_seed + static_cast<std::uint64_t>(r));

  nlohmann::json rows = nlohmann::json::array();
  bool spurious = false;
  for (const SampleSizeResult& row : result.rows) {
    nlohmann::json methods = nlohmann::json::object();
    for (const MethodSummary& s : row.methods)
      methods[to_string(s.method)] = {{"mean_tpdc_mse", s.mean_tpdc_mse},
                                      {"mean_tdtf_mse", s.mean_tdtf_mse},
                                      {"tpdc_mse_r0", s.tpdc_mse.front()},
                                      {"tdtf_mse_r0", s.tdtf_mse.front()}};
    nlohmann::json fits = nlohmann::json::object();
    for (const MethodResult& m : row.first_realization)
      if (m.fit) fits[to_string(m.method)] = fit_report_to_json(*m.fit);
    nlohmann::json links = nlohmann::json::array();
    for (const SpuriousLink& l : row.spurious_links)
      links.push_back({{"method", to_string(l.method)},
                       {"i", l.i + 1},
                       {"j", l.j + 1},
                       {"max_real", l.max_real}});
    spurious = spurious || !row.spurious_links.empty();
    rows.push_back({{"n_samples", row.n_samples},
                    {"methods", methods},
                    {"fits_r0", fits},
                    {"spurious_links_r0", links},
                    {"tpdc_csv", "tpdc_r0_ns" + std::to_string(row.n_samples) + ".csv"},
                    {"tdtf_csv", "tdtf_r0_ns" + std::to_string(row.n_samples) + ".csv"}});
  }
  return {{"label", result.label},
          {"config_hash", result.config_hash},
          {"model_hash", result.model_hash},
          {"rng", kRngVersion},
          {"burn_in", result.spec.burn_in},
          {"base_seed", result.spec.base_seed},
          {"seeds", seeds},
          {"analysis", analysis_json(result.spec.analysis)},
          {"ma_roots", to_string(result.ma_class)},
          {"nonminimum_phase_generator", result.ma_class == RootClass::nonminimum_phase},
          {"spurious_link_detected", spurious},
          {"rows", rows}};
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_text_file(dir / "table.txt", table_text(result));
  write_text_file(dir / "table.csv", table_csv(result));
  write_text_file(dir / "summary.json", experiment_summary(result).dump(2) + "\n");
  for (const SampleSizeResult& row : result.rows) {
    const std::string suffix = "_r0_ns" + std::to_string(row.n_samples) + ".csv";
    write_text_file(dir / ("tpdc" + suffix),
                    field_rows(result.reference_tpdc, row.first_realization, true));
    write_text_file(dir / ("tdtf" + suffix),
                    field_rows(result.reference_tdtf, row.first_realization, false));
  }
}

void write_analysis(const std::vector<MethodResult>& results,
                    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::string tpdc_text = "nu,i,j,re,im,kind,method\n";
  std::string tdtf_text = tpdc_text;
  nlohmann::json fields = nlohmann::json::array();
  nlohmann::json fits = nlohmann::json::object();
  for (const MethodResult& m : results) {
    const std::string p = field_csv(m.tpdc);
    const std::string d = field_csv(m.tdtf);
    tpdc_text += p.substr(p.find('\n') + 1);
    tdtf_text += d.substr(d.find('\n') + 1);
    fields.push_back(field_to_json(m.tpdc));
    fields.push_back(field_to_json(m.tdtf));
    if (m.fit) fits[to_string(m.method)] = fit_report_to_json(*m.fit);
    else
      fits[to_string(m.method)] = {{"wilson_iterations", m.factor.diagnostics.iterations},
                                   {"wilson_residual", m.factor.diagnostics.residual}};
  }
  write_text_file(dir / "tpdc.csv", tpdc_text);
  write_text_file(dir / "tdtf.csv", tdtf_text);
  write_text_file(dir / "fields.json", fields.dump() + "\n");
  write_text_file(dir / "fits.json", fits.dump(2) + "\n");
}

}  // namespace spectral_gc
