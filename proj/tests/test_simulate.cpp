#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "spectral_gc/benchmark_models.hpp"
#include "spectral_gc/model_io.hpp"
#include "spectral_gc/simulate.hpp"

using namespace spectral_gc;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("Gaussian stream moments") {
  GaussianStream g(42);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = g.next();
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("simulation is deterministic per seed") {
  const VarmaModel ex2 = benchmark_model(2);
  const TimeSeriesPanel a = simulate(ex2, 500, 9);
  const TimeSeriesPanel b = simulate(ex2, 500, 9);
  const TimeSeriesPanel c = simulate(ex2, 500, 10);
  CHECK(a.data() == b.data());
  CHECK(a.data() != c.data());
  CHECK(a.n_channels() == 3);
  CHECK(a.n_samples() == 500);
}

TEST_CASE("identity model reproduces its innovations covariance") {
  const VarmaModel identity({}, {}, Matrix::Identity(2, 2));
  const Matrix cov = sample_covariance(simulate(identity, 100000, 1));
  CHECK((cov - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 0.02);
  CHECK(cov(0, 0) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(cov(1, 1) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("MA variance identity on benchmark 1") {
  const Matrix cov = sample_covariance(simulate(benchmark_model(1), 100000, 2));
  // var(w2(n) + w2(n-1)) = 2 * 5; var(w1(n) + w2(n-1)) = 1 + 5
  CHECK(cov(1, 1) == doctest::Approx(10.0).epsilon(0.03));
  CHECK(cov(0, 0) == doctest::Approx(6.0).epsilon(0.03));
}

TEST_CASE("sample covariance edge cases") {
  CHECK(sample_covariance(TimeSeriesPanel(Matrix::Constant(2, 50, 3.0))).isZero());
  const VarmaModel scalar({}, {}, Matrix::Identity(1, 1));
  const double v = sample_covariance(simulate(scalar, 16384, 5))(0, 0);
  CHECK(v >= 0.95);
  CHECK(v <= 1.05);
}

TEST_CASE("unstable models are refused") {
  Matrix a(1, 1);
  a << 1.1;
  CHECK_THROWS_AS(simulate(VarmaModel({a}, {}, Matrix::Identity(1, 1)), 100, 1),
                  UnstableModelError);
}

TEST_CASE("nonminimum-phase models simulate") {
  const TimeSeriesPanel p = simulate(benchmark_model(4), 1000, 3);
  CHECK(p.data().allFinite());
}

TEST_CASE("panel validation") {
  Matrix bad = Matrix::Zero(2, 3);
  bad(1, 1) = INFINITY;
  CHECK_THROWS_AS(TimeSeriesPanel{bad}, ConfigError);
  CHECK_THROWS_AS(TimeSeriesPanel{Matrix(0, 3)}, ConfigError);
}

TEST_CASE("panel CSV round trip is exact") {
  const TimeSeriesPanel p = simulate(benchmark_model(2), 300, 4);
  const auto path = temp_file("sgc_test_panel.csv");
  write_panel_csv(p, path);
  CHECK(read_panel_csv(path).data() == p.data());

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x1,x2,x3");
  std::filesystem::remove(path);
}

TEST_CASE("panel CSV errors name the line") {
  const auto path = temp_file("sgc_test_bad.csv");
  std::ofstream(path) << "t,x1,x2\n0,1,2\n1,3\n2,4,5\n";
  try {
    read_panel_csv(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::ofstream(path) << "t,x1,x2\n0,1,abc\n";
  CHECK_THROWS_AS(read_panel_csv(path), ParseError);
  std::ofstream(path) << "time,a\n0,1\n";
  CHECK_THROWS_AS(read_panel_csv(path), ParseError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_panel_csv(path), IoError);
}

TEST_CASE("panel metadata round trip") {
  const auto path = temp_file("sgc_test_meta.json");
  const PanelMetadata meta{123456789012345ULL, model_hash(benchmark_model(1)), 1000};
  write_panel_metadata(meta, path);
  const PanelMetadata back = read_panel_metadata(path);
  CHECK(back.seed == meta.seed);
  CHECK(back.model_hash == meta.model_hash);
  CHECK(back.burn_in == meta.burn_in);
  std::filesystem::remove(path);
}
