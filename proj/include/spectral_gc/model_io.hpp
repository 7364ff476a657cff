#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "spectral_gc/model.hpp"

namespace spectral_gc {

/**
 * Model file schema:
 *
 *   { "n_channels": N,
 *     "ar": [ A_1, ..., A_p ],        // optional, absent means p = 0
 *     "ma": [ B_0, B_1, ..., B_q ],   // optional, absent means B_0 = I
 *     "sigma": Sigma_w }
 *
 * Each matrix is an array of N rows of N numbers.
 */
nlohmann::json model_to_json(const VarmaModel& model);
VarmaModel model_from_json(const nlohmann::json& doc);

VarmaModel read_model_file(const std::filesystem::path& path);
void write_model_file(const VarmaModel& model, const std::filesystem::path& path);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& doc, int n, const std::string& what);

/// 64-bit FNV-1a digest, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Digest of the canonical JSON form of a model.
std::string model_hash(const VarmaModel& model);

}  // namespace spectral_gc
