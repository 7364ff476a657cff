#include "spectral_gc/simulate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spectral_gc/export.hpp"

namespace spectral_gc {

TimeSeriesPanel::TimeSeriesPanel(Matrix data) : data_(std::move(data)) {
  if (data_.rows() < 1) throw ConfigError("panel needs at least one channel");
  if (data_.cols() < 1) throw ConfigError("panel needs at least one sample");
  if (!data_.allFinite()) throw ConfigError("panel contains non-finite values");
}

double GaussianStream::uniform_open() {
  // 53 random bits mapped into (0, 1)
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * kPi * uniform_open();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

TimeSeriesPanel simulate(const VarmaModel& model, int n_samples,
                         std::uint64_t seed, int burn_in) {
  if (n_samples < 1) throw ConfigError("n_samples must be positive");
  if (burn_in < 0) throw ConfigError("burn_in must be non-negative");
  const RootReport roots = ar_root_report(model);
  if (roots.classification != RootClass::stable)
    throw UnstableModelError("cannot simulate an unstable model (largest AR root magnitude " +
                             std::to_string(roots.magnitudes.front()) + ")");

  const int n = model.n_channels();
  const int p = model.ar_order();
  const int q = model.ma_order();
  const int total = burn_in + n_samples;

  Eigen::LLT<Matrix> llt(model.innovations_cov());
  const Matrix chol = llt.matrixL();

  GaussianStream gauss(seed);
  Matrix w(n, total);
  Vector z(n);
  for (int t = 0; t < total; ++t) {
    for (int i = 0; i < n; ++i) z(i) = gauss.next();
    w.col(t) = chol * z;
  }

  Matrix x = Matrix::Zero(n, total);
  for (int t = 0; t < total; ++t) {
    Vector acc = Vector::Zero(n);
    for (int r = 1; r <= p && r <= t; ++r) acc += model.ar_blocks()[r - 1] * x.col(t - r);
    for (int s = 0; s <= q && s <= t; ++s) acc += model.ma_blocks()[s] * w.col(t - s);
    x.col(t) = acc;
  }
  return TimeSeriesPanel(x.rightCols(n_samples));
}

Matrix sample_covariance(const TimeSeriesPanel& panel) {
  const Matrix& x = panel.data();
  const Vector mean = x.rowwise().mean();
  const Matrix centered = x.colwise() - mean;
  return centered * centered.transpose() / static_cast<double>(x.cols());
}

void write_panel_csv(const TimeSeriesPanel& panel, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write panel file " + path.string());
  out << 't';
  for (int i = 1; i <= panel.n_channels(); ++i) out << ",x" << i;
  out << '\n';
  std::string line;
  for (int t = 0; t < panel.n_samples(); ++t) {
    line = std::to_string(t);
    for (int i = 0; i < panel.n_channels(); ++i) {
      line += ',';
      line += format_number(panel.data()(i, t));
    }
    out << line << '\n';
  }
}

TimeSeriesPanel read_panel_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open panel file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 2 || header.front() != "t")
    throw ParseError(path.string() + ": header must be t,x1,...,xN", 1);
  const int n = static_cast<int>(header.size()) - 1;

  std::vector<double> values;
  int line_no = 1;
  int rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col > n)
        throw ParseError(path.string() + ": line " + std::to_string(line_no) +
                             " has too many fields", line_no);
      if (col > 0) {
        double v = 0.0;
        std::size_t used = 0;
        try {
          v = std::stod(cell, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != cell.size() || !std::isfinite(v))
          throw ParseError(path.string() + ": line " + std::to_string(line_no) +
                               ": invalid number '" + cell + "'", line_no);
        values.push_back(v);
      }
      ++col;
    }
    if (col != n + 1)
      throw ParseError(path.string() + ": line " + std::to_string(line_no) +
                           " has " + std::to_string(col) + " fields, expected " +
                           std::to_string(n + 1), line_no);
    ++rows;
  }
  if (rows == 0) throw ParseError(path.string() + ": no samples", line_no);
  Matrix data(n, rows);
  for (int t = 0; t < rows; ++t)
    for (int i = 0; i < n; ++i)
      data(i, t) = values[static_cast<std::size_t>(t * n + i)];
  return TimeSeriesPanel(std::move(data));
}

void write_panel_metadata(const PanelMetadata& meta, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["seed"] = meta.seed;
  doc["model_hash"] = meta.model_hash;
  doc["burn_in"] = meta.burn_in;
  doc["rng"] = kRngVersion;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write metadata file " + path.string());
  out << doc.dump(2) << '\n';
}

PanelMetadata read_panel_metadata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open metadata file " + path.string());
  try {
    const auto doc = nlohmann::json::parse(in);
    return {doc.at("seed").get<std::uint64_t>(), doc.at("model_hash").get<std::string>(),
            doc.at("burn_in").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

}  // namespace spectral_gc
