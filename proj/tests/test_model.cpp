#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "spectral_gc/benchmark_models.hpp"
#include "spectral_gc/model_io.hpp"

using namespace spectral_gc;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

bool has_root(const RootReport& r, Complex z, double tol = 1e-9) {
  return std::any_of(r.roots.begin(), r.roots.end(),
                     [&](Complex x) { return std::abs(x - z) < tol; });
}

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("model validation") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(VarmaModel({}, {}, Matrix::Identity(2, 3)), ConfigError);
  CHECK_THROWS_AS(VarmaModel({Matrix::Identity(3, 3)}, {}, i2), ConfigError);
  CHECK_THROWS_AS(VarmaModel({}, {}, mat2(1, 0.5, 0.4, 1)), ConfigError);
  CHECK_THROWS_AS(VarmaModel({}, {}, mat2(1, 2, 2, 1)), ConfigError);
  CHECK_THROWS_AS(VarmaModel({}, {mat2(1, 1, 1, 1)}, i2), ConfigError);
  CHECK_THROWS_AS(VarmaModel({mat2(NAN, 0, 0, 0)}, {}, i2), ConfigError);

  const VarmaModel m({}, {}, i2);
  CHECK(m.ar_order() == 0);
  CHECK(m.ma_order() == 0);
  CHECK(m.ma_blocks().front().isIdentity());
}

TEST_CASE("benchmark 3 is rejected with an explanation") {
  CHECK_THROWS_WITH_AS(benchmark_model(3), doctest::Contains("not published"), ConfigError);
  CHECK_THROWS_AS(benchmark_model(5), ConfigError);
}

TEST_CASE("AR polynomial evaluation") {
  const VarmaModel ex2 = benchmark_model(2);
  const CMatrix a0 = eval_ar_polynomial(ex2, 0.0);
  CHECK(a0(0, 0).real() == doctest::Approx(1.0 - 2.0 * 0.95 * 0.5 + 0.95 * 0.95));
  CHECK(a0(0, 0).real() == doctest::Approx(0.9525));
  Matrix expected = Matrix::Identity(3, 3) - ex2.ar_blocks()[0] - ex2.ar_blocks()[1];
  CHECK(max_diff(a0, expected.cast<Complex>()) < 1e-14);
  CHECK(eval_ar_polynomial(benchmark_model(1), 0.37).isIdentity());
}

TEST_CASE("MA polynomial evaluation") {
  CHECK(max_diff(eval_ma_polynomial(benchmark_model(4), 0.0),
                 mat2(7, 3, 0, 3).cast<Complex>()) < 1e-14);
  CHECK(max_diff(eval_ma_polynomial(benchmark_model(1), 0.5),
                 mat2(1, -1, 0, 0).cast<Complex>()) < 1e-14);
  const VarmaModel identity({}, {}, Matrix::Identity(2, 2));
  CHECK(eval_ma_polynomial(identity, 0.2).isIdentity());
}

TEST_CASE("transfer function and theoretical spectrum") {
  const FrequencyGrid grid(16);
  const VarmaModel identity({}, {}, Matrix::Identity(2, 2));
  for (const CMatrix& h : transfer_function(identity, grid).h) CHECK(h.isIdentity());
  for (const CMatrix& s : theoretical_spectrum(identity, grid).values) CHECK(s.isIdentity());

  const VarmaModel ex1 = benchmark_model(1);
  const SpectralFactor f = transfer_function(ex1, grid);
  for (int k = 0; k < grid.size(); ++k)
    CHECK(max_diff(f.h[static_cast<std::size_t>(k)], eval_ma_polynomial(ex1, grid.nu(k))) < 1e-15);

  const SpectralMatrix s = theoretical_spectrum(ex1, grid);
  CHECK(max_diff(s.values[0], mat2(8, 12, 12, 20).cast<Complex>()) < 1e-12);
}

TEST_CASE("transfer_at names the singular frequency") {
  const VarmaModel unit_root({Matrix::Identity(2, 2)}, {}, Matrix::Identity(2, 2));
  CHECK_THROWS_WITH_AS(transfer_function(unit_root, FrequencyGrid(8)),
                       doctest::Contains("nu = 0"), SingularMatrixError);
}

TEST_CASE("canonical factor keeps the spectrum and has identity zero lag") {
  const VarmaModel ex2 = benchmark_model(2);
  // Fine enough that the resonant impulse response does not alias.
  const FrequencyGrid grid(1024);
  const SpectralFactor c = canonical_factor(ex2, grid);
  const SpectralMatrix a = theoretical_spectrum(ex2, grid);
  const SpectralMatrix b = reassemble_spectrum(c);
  for (int k = 0; k < grid.size(); ++k)
    CHECK(max_diff(a.values[static_cast<std::size_t>(k)], b.values[static_cast<std::size_t>(k)]) <
          1e-11);
  const auto lags = impulse_response(c);
  CHECK(max_diff(lags[0], CMatrix::Identity(3, 3)) < 1e-10);
}

TEST_CASE("AR root report") {
  const RootReport r2 = ar_root_report(benchmark_model(2));
  CHECK(r2.classification == RootClass::stable);
  CHECK(r2.roots.size() == 4);
  CHECK(has_root(r2, std::polar(0.95, kPi / 3.0)));
  CHECK(has_root(r2, std::polar(0.95, -kPi / 3.0)));
  CHECK(has_root(r2, Complex(-0.5, 0.0)));
  CHECK(has_root(r2, Complex(0.7, 0.0)));
  for (std::size_t i = 0; i < r2.roots.size(); ++i)
    CHECK(std::abs(r2.magnitudes[i] - std::abs(r2.roots[i])) < 1e-12);

  const RootReport none = ar_root_report(benchmark_model(1));
  CHECK(none.roots.empty());
  CHECK(none.classification == RootClass::stable);

  Matrix a(1, 1);
  a << 1.1;
  const RootReport unstable = ar_root_report(VarmaModel({a}, {}, Matrix::Identity(1, 1)));
  REQUIRE(unstable.roots.size() == 1);
  CHECK(unstable.magnitudes[0] == doctest::Approx(1.1));
  CHECK(unstable.classification == RootClass::unstable);
}

TEST_CASE("MA root report") {
  const RootReport r4 = ma_root_report(benchmark_model(4));
  CHECK(r4.classification == RootClass::nonminimum_phase);
  REQUIRE(r4.roots.size() == 4);
  CHECK(has_root(r4, Complex(-1.0, std::sqrt(3.0))));
  CHECK(has_root(r4, Complex(-1.0, -std::sqrt(3.0))));
  CHECK(has_root(r4, Complex(0.0, std::sqrt(2.0))));
  CHECK(has_root(r4, Complex(0.0, -std::sqrt(2.0))));
  std::vector<double> mags = r4.magnitudes;
  std::sort(mags.begin(), mags.end());
  CHECK(mags[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(mags[3] == doctest::Approx(2.0));

  const RootReport r1 = ma_root_report(benchmark_model(1));
  REQUIRE(r1.roots.size() == 1);
  CHECK(std::abs(r1.roots[0] - Complex(-1.0, 0.0)) < 1e-12);
  CHECK(r1.classification == RootClass::minimum_phase);

  const RootReport r2 = ma_root_report(benchmark_model(2));
  CHECK(r2.roots.empty());
  CHECK(r2.classification == RootClass::minimum_phase);
}

TEST_CASE("model JSON round trip and hash") {
  const VarmaModel ex2 = benchmark_model(2);
  const VarmaModel back = model_from_json(model_to_json(ex2));
  CHECK(back.ar_order() == 2);
  CHECK(back.ma_order() == 2);
  for (int r = 0; r < 2; ++r) CHECK(back.ar_blocks()[r] == ex2.ar_blocks()[r]);
  for (int s = 0; s <= 2; ++s) CHECK(back.ma_blocks()[s] == ex2.ma_blocks()[s]);
  CHECK(model_hash(back) == model_hash(ex2));
  CHECK(model_hash(ex2) != model_hash(benchmark_model(1)));

  const auto path = std::filesystem::temp_directory_path() / "sgc_test_model.json";
  write_model_file(ex2, path);
  CHECK(model_hash(read_model_file(path)) == model_hash(ex2));

  std::ofstream(path) << "{ \"n_channels\": 2, ";
  CHECK_THROWS_AS(read_model_file(path), ParseError);
  std::ofstream(path) << R"({"n_channels": 2, "sigma": [[1, 0], [0]]})";
  CHECK_THROWS_AS(read_model_file(path), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_model_file(path), IoError);
}
