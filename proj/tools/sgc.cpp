// sgc: frequency-domain connectivity experiments and analysis.
//
// Exit status: 0 success, 1 unexpected failure, 2 usage or configuration
// error, 3 numerical failure, 4 file I/O failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectral_gc/benchmark_models.hpp"
#include "spectral_gc/experiment.hpp"
#include "spectral_gc/model_io.hpp"

namespace sgc = spectral_gc;

namespace {

enum ExitCode { kOk = 0, kUnexpected = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw sgc::ConfigError(flag + ": '" + item + "' is not an integer");
    }
  }
  if (values.empty()) throw sgc::ConfigError(flag + " needs at least one value");
  return values;
}

struct Options {
  std::string ns = "16384";
  int realizations = 100;
  std::string methods;
  std::string orders;
  std::optional<int> vma_order;
  int vma_q_max = sgc::AnalysisConfig{}.vma_q_max;
  int p_max = sgc::AnalysisConfig{}.var_p_max;
  int seg_len = 256;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out = "out";
};

void add_analysis_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--methods", o.methods, "Comma list of var,vma,varma,wn");
  cmd->add_option("--orders", o.orders, "VARMA orders p,q");
  cmd->add_option("--vma-order", o.vma_order, "Fixed VMA order (default: Hannan-Quinn)");
  cmd->add_option("--vma-q-max", o.vma_q_max, "Largest VMA order searched")->capture_default_str();
  cmd->add_option("--p-max", o.p_max, "Largest VAR order searched")->capture_default_str();
  cmd->add_option("--seg-len", o.seg_len, "Welch segment length and grid size")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
}

void add_experiment_flags(CLI::App* cmd, Options& o) {
  add_analysis_flags(cmd, o);
  cmd->add_option("--ns", o.ns, "Sample sizes, comma separated")->capture_default_str();
  cmd->add_option("--realizations", o.realizations, "Monte Carlo realizations")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Base seed; realization r uses seed + r")
      ->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "Concurrent realizations")->capture_default_str();
}

sgc::AnalysisConfig analysis_config(const Options& o, std::vector<sgc::Method> fallback) {
  sgc::AnalysisConfig config;
  config.methods = o.methods.empty() ? std::move(fallback) : sgc::parse_methods(o.methods);
  config.segment_len = o.seg_len;
  config.var_p_max = o.p_max;
  config.vma_q_max = o.vma_q_max;
  config.vma_order = o.vma_order;
  if (!o.orders.empty()) {
    const std::vector<int> pq = parse_int_list(o.orders, "--orders");
    if (pq.size() != 2) throw sgc::ConfigError("--orders expects p,q");
    config.varma_orders = std::pair{pq[0], pq[1]};
  }
  return config;
}

sgc::ExperimentSpec experiment_spec(const Options& o, std::vector<sgc::Method> fallback) {
  sgc::ExperimentSpec spec;
  spec.sample_sizes = parse_int_list(o.ns, "--ns");
  spec.realizations = o.realizations;
  spec.base_seed = o.seed;
  spec.jobs = o.jobs;
  spec.analysis = analysis_config(o, std::move(fallback));
  return spec;
}

void report(const sgc::ExperimentResult& result, const std::string& out) {
  sgc::write_experiment(result, out);
  std::cout << sgc::table_text(result);
  const nlohmann::json summary = sgc::experiment_summary(result);
  std::cout << "nonminimum_phase_generator: " << summary["nonminimum_phase_generator"]
            << "\nspurious_link_detected: " << summary["spurious_link_detected"]
            << "\nresults written to " << out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total PDC / total DTF connectivity from VAR, VMA, VARMA and Wilson factors"};
  app.require_subcommand(1);
  Options o;

  int example_id = 0;
  auto* example = app.add_subcommand("example", "Monte Carlo run of a built-in benchmark");
  example->add_option("id", example_id, "Benchmark id (1, 2 or 4)")->required();
  add_experiment_flags(example, o);

  std::string model_path;
  auto* model = app.add_subcommand("model", "Monte Carlo run of a model given as JSON");
  model->add_option("file", model_path, "Model JSON file")->required();
  add_experiment_flags(model, o);

  std::string panel_path;
  auto* analyze = app.add_subcommand("analyze", "Connectivity of an observed panel CSV");
  analyze->add_option("panel", panel_path, "CSV with header t,x1,...,xN")->required();
  add_analysis_flags(analyze, o);

  std::string source;
  int n_samples = 16384;
  auto* simulate = app.add_subcommand("simulate", "Write a simulated panel CSV");
  simulate->add_option("source", source, "Benchmark id or model JSON file")->required();
  simulate->add_option("--ns", n_samples, "Samples")->capture_default_str();
  simulate->add_option("--seed", o.seed, "Seed")->capture_default_str();
  simulate->add_option("--out", o.out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (example->parsed()) {
      const auto defaults = example_id == 2
                                ? std::vector{sgc::Method::var, sgc::Method::vma,
                                              sgc::Method::varma, sgc::Method::wn}
                                : std::vector{sgc::Method::var, sgc::Method::vma, sgc::Method::wn};
      report(sgc::run_example(example_id, experiment_spec(o, defaults)), o.out);
    } else if (model->parsed()) {
      const sgc::VarmaModel m = sgc::read_model_file(model_path);
      report(sgc::run_model(m, experiment_spec(o, {sgc::Method::var, sgc::Method::vma,
                                                   sgc::Method::wn}),
                            model_path),
             o.out);
    } else if (analyze->parsed()) {
      const sgc::TimeSeriesPanel panel = sgc::read_panel_csv(panel_path);
      const auto results = sgc::analyze_panel(
          panel, analysis_config(o, {sgc::Method::var, sgc::Method::vma, sgc::Method::wn}));
      sgc::write_analysis(results, o.out);
      std::cout << "results written to " << o.out << "\n";
    } else if (simulate->parsed()) {
      const bool is_file = source.find_first_not_of("0123456789") != std::string::npos;
      const sgc::VarmaModel m =
          is_file ? sgc::read_model_file(source) : sgc::benchmark_model(std::stoi(source));
      sgc::write_panel_csv(sgc::simulate(m, n_samples, o.seed), o.out);
      sgc::write_panel_metadata({o.seed, sgc::model_hash(m), sgc::kDefaultBurnIn},
                                o.out + ".json");
    }
  } catch (const sgc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const sgc::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const sgc::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kUnexpected;
  }
  return kOk;
}
