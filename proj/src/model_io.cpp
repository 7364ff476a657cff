#include "spectral_gc/model_io.hpp"

#include <cstdio>
#include <fstream>

namespace spectral_gc {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& doc, int n, const std::string& what) {
  if (!doc.is_array() || static_cast<int>(doc.size()) != n)
    throw ConfigError(what + ": expected an array of " + std::to_string(n) +
                      " rows");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ConfigError(what + ": row " + std::to_string(i + 1) + " must hold " +
                        std::to_string(n) + " numbers");
    for (int j = 0; j < n; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number())
        throw ConfigError(what + ": non-numeric entry at (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

json model_to_json(const VarmaModel& model) {
  json doc;
  doc["n_channels"] = model.n_channels();
  json ar = json::array();
  for (const Matrix& a : model.ar_blocks()) ar.push_back(matrix_to_json(a));
  doc["ar"] = std::move(ar);
  json ma = json::array();
  for (const Matrix& b : model.ma_blocks()) ma.push_back(matrix_to_json(b));
  doc["ma"] = std::move(ma);
  doc["sigma"] = matrix_to_json(model.innovations_cov());
  return doc;
}

VarmaModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("model document must be a JSON object");
  if (!doc.contains("n_channels") || !doc["n_channels"].is_number_integer())
    throw ConfigError("model document needs an integer n_channels");
  const int n = doc["n_channels"].get<int>();
  if (n <= 0) throw ConfigError("n_channels must be positive");
  if (!doc.contains("sigma")) throw ConfigError("model document needs sigma");

  auto read_blocks = [&](const char* key) {
    std::vector<Matrix> blocks;
    if (!doc.contains(key)) return blocks;
    const json& list = doc[key];
    if (!list.is_array())
      throw ConfigError(std::string(key) + " must be an array of matrices");
    for (std::size_t k = 0; k < list.size(); ++k)
      blocks.push_back(matrix_from_json(
          list[k], n, std::string(key) + "[" + std::to_string(k) + "]"));
    return blocks;
  };
  return VarmaModel(read_blocks("ar"), read_blocks("ma"),
                    matrix_from_json(doc["sigma"], n, "sigma"));
}

VarmaModel read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("model file " + path.string() + ": " + e.what(), 0);
  }
  return model_from_json(doc);
}

void write_model_file(const VarmaModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file " + path.string());
  out << model_to_json(model).dump(2) << '\n';
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string model_hash(const VarmaModel& model) {
  return fnv1a_hex(model_to_json(model).dump());
}

}  // namespace spectral_gc
