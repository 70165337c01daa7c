#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "faddeev/extraction.hpp"
#include "json.hpp"

namespace faddeev {

using json = nlohmann::ordered_json;

/// 17 significant digits, so every double survives a text round trip.
std::string format_double(double v);

/// JSON text with every floating-point number printed by format_double.
std::string dump_json(const json& j, int indent = 2);

/// Complex numbers are [re, im].
json to_json(cplx z);
cplx complex_from_json(const json& j);

/// S-matrix file: energies, quadrature (points, weights, recoupled
/// transform), S and incident matrices, solved flags and defects.
json smatrix_to_json(const ScatteringMatrix& s, double bound_energy);
/// Inverse of smatrix_to_json; throws std::runtime_error on missing or
/// inconsistent fields.
ScatteringMatrix smatrix_from_json(const json& j);

/// Breakup amplitudes of one solved column, one row per (channel, alpha).
std::string breakup_csv(const ColumnExtraction& col);

/// Writes bytes as given (LF line endings stay LF); creates parent folders.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace faddeev
