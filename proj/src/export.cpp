#include "spectral_gc/export.hpp"

#include <charconv>
#include <fstream>

#include "spectral_gc/model_io.hpp"

namespace spectral_gc {
namespace {

void append_row(std::string& out, double nu, int i, int j, Complex v) {
  out += format_number(nu);
  out += ',';
  out += std::to_string(i + 1);
  out += ',';
  out += std::to_string(j + 1);
  out += ',';
  out += format_number(v.real());
  out += ',';
  out += format_number(v.imag());
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void write_spectrum_csv(const SpectralMatrix& spectrum, const std::filesystem::path& path) {
  std::string text = "nu,i,j,re,im\n";
  const int n = spectrum.n_channels();
  for (int k = 0; k < spectrum.grid.size(); ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        append_row(text, spectrum.grid.nu(k), i, j,
                   spectrum.values[static_cast<std::size_t>(k)](i, j));
        text += '\n';
      }
  write_text_file(path, text);
}

std::string field_csv(const ConnectivityField& field) {
  std::string text = "nu,i,j,re,im,kind,method\n";
  const std::string suffix =
      std::string(",") + to_string(field.kind) + "," + field.method_tag + "\n";
  const int n = field.n_channels();
  for (std::size_t k = 0; k < field.values.size(); ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        append_row(text, field.grid.nu(static_cast<int>(k)), i, j, field.values[k](i, j));
        text += suffix;
      }
  return text;
}

void write_field_csv(const ConnectivityField& field, const std::filesystem::path& path) {
  write_text_file(path, field_csv(field));
}

nlohmann::json field_to_json(const ConnectivityField& field) {
  nlohmann::json nu = nlohmann::json::array();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    nu.push_back(field.grid.nu(static_cast<int>(k)));
    re.push_back(matrix_to_json(field.values[k].real()));
    im.push_back(matrix_to_json(field.values[k].imag()));
  }
  return {{"kind", to_string(field.kind)},
          {"method", field.method_tag},
          {"n_channels", field.n_channels()},
          {"n_points", field.grid.size()},
          {"one_sided", static_cast<int>(field.values.size())},
          {"nu", nu},
          {"re", re},
          {"im", im}};
}

nlohmann::json fit_report_to_json(const FitReport& report) {
  nlohmann::json criteria = nlohmann::json::array();
  for (const OrderCriterion& c : report.criterion_values)
    criteria.push_back({{"p", c.p}, {"q", c.q}, {"hq", c.value}});
  return {{"model", model_to_json(report.model)},
          {"selected_order", {report.selected_order.first, report.selected_order.second}},
          {"criterion_values", criteria},
          {"residual_cov", matrix_to_json(report.residual_cov)},
          {"warnings", report.warnings}};
}

}  // namespace spectral_gc
