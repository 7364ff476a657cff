// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is the number of failed criteria.  With --report-only the
// status is 0 whenever every criterion was evaluated, so the run can sit in
// the regular test suite while its verdicts stay visible in the log.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracle.hpp"
#include "spectral_gc/benchmark_models.hpp"
#include "spectral_gc/experiment.hpp"
#include "spectral_gc/export.hpp"

using namespace spectral_gc;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "  ok   " : "  MISS ") + what);
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

const MethodSummary& summary_of(const SampleSizeResult& row, Method m) {
  for (const MethodSummary& s : row.methods)
    if (s.method == m) return s;
  throw ConfigError(std::string("method not run: ") + to_string(m));
}

const MethodResult& first_of(const SampleSizeResult& row, Method m) {
  for (const MethodResult& r : row.first_realization)
    if (r.method == m) return r;
  throw ConfigError(std::string("method not run: ") + to_string(m));
}

ExperimentResult table_run(int id, std::vector<Method> methods) {
  ExperimentSpec spec;
  spec.sample_sizes = {1024, 4096, 16384};
  spec.realizations = 100;
  spec.base_seed = 1;
  spec.jobs = worker_count();
  spec.analysis.methods = std::move(methods);
  return run_example(id, spec);
}

bool within_factor(double value, double target, double factor) {
  return value <= target * factor && value >= target / factor;
}

// 1: benchmark 1 table row at 16384.
Verdict table_example1(const ExperimentResult& ex1) {
  Verdict v;
  const SampleSizeResult& row = ex1.rows.back();
  const std::pair<Method, double> targets[] = {
      {Method::var, 6.84e-6}, {Method::vma, 1.27e-5}, {Method::wn, 0.15e-2}};
  for (const auto& [m, target] : targets) {
    const double mse = summary_of(row, m).mean_tpdc_mse;
    v.check(within_factor(mse, target, 3.0),
            std::string(to_string(m)) + " mean tPDC MSE " + sci(mse) + " vs " + sci(target) +
                " (x3 band)");
  }
  return v;
}

// 2: benchmark 2 table row at 16384 and its ordering.
Verdict table_example2(const ExperimentResult& ex2) {
  Verdict v;
  const SampleSizeResult& row = ex2.rows.back();
  const double var = summary_of(row, Method::var).mean_tpdc_mse;
  const double vma = summary_of(row, Method::vma).mean_tpdc_mse;
  const double varma = summary_of(row, Method::varma).mean_tpdc_mse;
  const double wn = summary_of(row, Method::wn).mean_tpdc_mse;
  v.check(within_factor(varma, 2.96e-8, 3.0),
          "VARMA mean tPDC MSE " + sci(varma) + " vs 2.960e-08 (x3 band)");
  v.check(varma < var && var < vma && vma < wn,
          "ordering VARMA < VAR < VMA < WN: " + sci(varma) + ", " + sci(var) + ", " + sci(vma) +
              ", " + sci(wn));
  return v;
}

// 3: every method improves with sample size.
Verdict monotonicity(const std::vector<const ExperimentResult*>& runs) {
  Verdict v;
  for (const ExperimentResult* run : runs)
    for (const MethodSummary& first : run->rows.front().methods) {
      std::string trail;
      bool ok = true;
      double previous = INFINITY;
      for (const SampleSizeResult& row : run->rows) {
        const double mse = summary_of(row, first.method).mean_tpdc_mse;
        ok = ok && mse < previous;
        previous = mse;
        trail += (trail.empty() ? "" : " > ") + sci(mse);
      }
      v.check(ok, run->label + " " + to_string(first.method) + ": " + trail);
    }
  return v;
}

// 4: Wilson factor of the benchmark 2 spectrum on 512 points.
Verdict wilson_quality() {
  Verdict v;
  const VarmaModel ex2 = benchmark_model(2);
  const FrequencyGrid grid(512);
  const SpectralMatrix s = theoretical_spectrum(ex2, grid);
  const SpectralFactor f = wilson_factorize(s, {1e-12, 1000});
  const SpectralMatrix back = reassemble_spectrum(f);
  // B_0 of benchmark 2 is not the identity; the identity-lag factor is the
  // representation a causal factorization can return.
  const SpectralFactor ref = canonical_factor(ex2, grid);

  double residual = 0.0, h_err = 0.0, h_scale = 0.0;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    residual = std::max(residual, (back.values[k] - s.values[k]).cwiseAbs().maxCoeff());
    h_err = std::max(h_err, (f.h[k] - ref.h[k]).cwiseAbs().maxCoeff());
    h_scale = std::max(h_scale, ref.h[k].cwiseAbs().maxCoeff());
  }
  const double sigma_err = (f.sigma - ref.sigma).cwiseAbs().maxCoeff();
  v.check(residual < 1e-5, "max-entry reconstruction residual " + sci(residual) +
                               " (relative to spectral scale " +
                               sci(factorization_residual(f, s)) + ")");
  v.check(h_err < 1e-5, "max-entry |H - H_ref| " + sci(h_err) + " (relative " +
                            sci(h_err / h_scale) + ")");
  v.check(sigma_err < 1e-5, "max-entry |Sigma - Sigma_ref| " + sci(sigma_err));
  return v;
}

// 5: VMA fits of the nonminimum-phase benchmark are invertible.
Verdict minimum_phase_fits() {
  Verdict v;
  const VarmaModel ex4 = benchmark_model(4);
  const int q = *benchmark_orders(4).vma_order;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const FitReport fit = fit_vma(simulate(ex4, 16384, seed), q);
    for (double m : ma_root_report(fit.model).magnitudes) worst = std::max(worst, m);
  }
  v.check(worst < 1.0 + 1e-6, "largest fitted MA root magnitude over 10 panels " + sci(worst));
  return v;
}

// 6: spurious 1 -> 2 connectivity on benchmark 4.
Verdict nonminimum_phase_failure(const ExperimentResult& ex4) {
  Verdict v;
  double theory_max = 0.0;
  for (const CMatrix& m : ex4.reference_tpdc.values) theory_max = std::max(theory_max, std::abs(m(1, 0)));
  v.check(theory_max == 0.0, "theoretical tPDC(2,1) max |.| " + sci(theory_max));

  const SampleSizeResult& row = ex4.rows.back();
  const std::vector<Method> methods = ex4.spec.analysis.methods;
  for (Method m : methods) {
    double peak = -INFINITY;
    for (const CMatrix& x : first_of(row, m).tpdc.values) peak = std::max(peak, x(1, 0).real());
    v.check(peak > 0.1, std::string(to_string(m)) + " tPDC(2,1) grid max of real part " + sci(peak));
  }
  for (std::size_t a = 0; a < methods.size(); ++a)
    for (std::size_t b = a + 1; b < methods.size(); ++b) {
      const double mse = mse_vs_reference(first_of(row, methods[a]).tpdc, first_of(row, methods[b]).tpdc);
      v.check(mse < 1e-2, std::string(to_string(methods[a])) + " vs " + to_string(methods[b]) +
                              " tPDC MSE " + sci(mse));
    }
  for (Method m : methods) {
    const double mse = summary_of(row, m).tpdc_mse.front();
    v.check(mse > 1e-1, std::string(to_string(m)) + " vs theory tPDC MSE " + sci(mse) +
                            " (mean over realizations " + sci(summary_of(row, m).mean_tpdc_mse) +
                            ")");
  }
  return v;
}

// 7: coherency, partial coherence and diagonal-Sigma reductions.
Verdict identities() {
  Verdict v;
  double eq10 = 0.0, unit_diag = 0.0, literal_inverse = 0.0, partial = 0.0;
  for (int id : kBenchmarkIds) {
    const SpectralFactor f = canonical_factor(benchmark_model(id), FrequencyGrid(256));
    const InnovationStructure w = innovation_structure(f.sigma);
    const SpectralMatrix s = reassemble_spectrum(f);
    const ConnectivityField coh = coherency(s);
    const ConnectivityField pc = partial_coherence(s);
    const auto gammas = gamma_factor(f);
    const auto pis = pi_factor(f);
    const CMatrix r = w.r.cast<Complex>(), rt = w.r_tilde.cast<Complex>();
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      const CMatrix c = gammas[k] * r * gammas[k].adjoint();
      eq10 = std::max(eq10, (c - coh.values[k]).cwiseAbs().maxCoeff());
      unit_diag = std::max(unit_diag, (c.diagonal().array() - 1.0).abs().maxCoeff());
      const CMatrix k_mat = pis[k].adjoint() * rt * pis[k];
      literal_inverse = std::max(literal_inverse, (k_mat - coh.values[k].inverse()).cwiseAbs().maxCoeff());
      partial = std::max(partial, (k_mat - pc.values[k]).cwiseAbs().maxCoeff());
    }
  }
  v.check(eq10 < 1e-8, "Gamma R Gamma^H = coherency, max error " + sci(eq10));
  v.check(unit_diag < 1e-8, "coherency unit diagonal, max error " + sci(unit_diag));
  v.check(literal_inverse < 1e-8,
          "Pi^H R~ Pi = C^{-1}, max error " + sci(literal_inverse) +
              " (unit-diagonal partial coherence form: " + sci(partial) + ")");

  const SpectralFactor f2 = transfer_function(benchmark_model(2), FrequencyGrid(256));
  const ConnectivityField pdc = total_pdc(f2), g = gpdc(f2), dtf = total_dtf(f2), dc = directed_coherence(f2);
  double to_gpdc = 0.0, to_dc = 0.0;
  for (std::size_t k = 0; k < pdc.values.size(); ++k) {
    to_gpdc = std::max(to_gpdc, (pdc.values[k] - g.values[k]).cwiseAbs().maxCoeff());
    to_dc = std::max(to_dc, (dtf.values[k] - dc.values[k]).cwiseAbs().maxCoeff());
  }
  v.check(to_gpdc < 1e-10, "tPDC = gPDC under Sigma = I, max error " + sci(to_gpdc));
  v.check(to_dc < 1e-10, "tDTF = DC under Sigma = I, max error " + sci(to_dc));
  return v;
}

// 8: tPDC against the long-double reference evaluation.
Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int id : kBenchmarkIds) {
    const VarmaModel model = benchmark_model(id);
    const Matrix& b0 = model.ma_blocks().front();
    const InnovationStructure w = innovation_structure(b0 * model.innovations_cov() * b0.transpose());
    const CMatrix b0_inv = b0.inverse().cast<Complex>();
    long double worst = 0.0L;
    for (int trial = 0; trial < 16; ++trial) {
      const double nu = u(rng);
      const oracle::Chain c = oracle::evaluate(oracle::canonical(
          model.ar_blocks(), model.ma_blocks(), model.innovations_cov(), static_cast<long double>(nu)));
      worst = std::max(worst, oracle::max_abs_diff(c.tpdc, total_pdc_at(transfer_at(model, nu) * b0_inv, w)));
    }
    v.check(worst < 1e-10L, "benchmark " + std::to_string(id) + " max |tPDC - oracle| " +
                                sci(static_cast<double>(worst)));
  }
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 9: identical seeds give identical exports.
Verdict determinism() {
  Verdict v;
  ExperimentSpec spec;
  spec.sample_sizes = {1024, 4096};
  spec.realizations = 4;
  spec.base_seed = 77;
  spec.analysis.methods = {Method::var, Method::vma, Method::varma, Method::wn};
  const fs::path root = fs::temp_directory_path() / "sgc_acceptance_determinism";
  fs::remove_all(root);
  write_experiment(run_example(2, spec), root / "a");
  spec.jobs = worker_count();
  write_experiment(run_example(2, spec), root / "b");
  int compared = 0;
  bool same = true;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    if (entry.path().extension() != ".csv") continue;
    ++compared;
    same = same && slurp(entry.path()) == slurp(root / "b" / entry.path().filename());
  }
  v.check(same && compared == 5, std::to_string(compared) + " CSV files byte-identical across repeated runs");
  fs::remove_all(root);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const bool report_only = argc > 1 && std::strcmp(argv[1], "--report-only") == 0;

  std::printf("running Monte Carlo tables (R = 100)...\n");
  std::fflush(stdout);
  const ExperimentResult ex1 = table_run(1, {Method::var, Method::vma, Method::wn});
  const ExperimentResult ex2 = table_run(2, {Method::var, Method::vma, Method::varma, Method::wn});
  ExperimentSpec spec4;
  spec4.realizations = 20;
  spec4.jobs = worker_count();
  const ExperimentResult ex4 = run_example(4, spec4);
  std::printf("%s\n%s\n%s\n", table_text(ex1).c_str(), table_text(ex2).c_str(), table_text(ex4).c_str());

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"benchmark 1 tPDC MSE at 16384 within x3 of the reference row", [&] { return table_example1(ex1); }},
      {"benchmark 2 VARMA MSE within x3 and parsimony ordering", [&] { return table_example2(ex2); }},
      {"MSE decreases with sample size", [&] { return monotonicity({&ex1, &ex2}); }},
      {"Wilson factorization of benchmark 2 on 512 points", wilson_quality},
      {"fitted VMA on benchmark 4 is minimum phase", minimum_phase_fits},
      {"spurious 1 -> 2 tPDC on nonminimum-phase benchmark 4", [&] { return nonminimum_phase_failure(ex4); }},
      {"coherency, partial coherence and reduction identities", identities},
      {"tPDC matches independent oracle", oracle_equivalence},
      {"byte-identical exports for identical seeds", determinism},
  };

  int failed = 0, errors = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.details.push_back(std::string("  error ") + e.what());
      ++errors;
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s %zu: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const std::string& d : v.details) std::printf("%s\n", d.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return report_only ? (errors > 0 ? 1 : 0) : failed;
}
