#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "spectral_gc/connectivity.hpp"
#include "spectral_gc/estimators.hpp"
#include "spectral_gc/spectral.hpp"

namespace spectral_gc {

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

/// Rows `nu,i,j,re,im` over the full grid, indices 1-based.
void write_spectrum_csv(const SpectralMatrix& spectrum, const std::filesystem::path& path);

/// Rows `nu,i,j,re,im,kind,method` over the one-sided band, indices 1-based.
std::string field_csv(const ConnectivityField& field);
void write_field_csv(const ConnectivityField& field, const std::filesystem::path& path);

/// Field plus grid metadata: n_points, one_sided, nu, re[k][i][j], im[k][i][j].
nlohmann::json field_to_json(const ConnectivityField& field);

nlohmann::json fit_report_to_json(const FitReport& report);

/// Writes `text` to `path`; throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace spectral_gc
