#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abssep/spectrum.hpp"

namespace abssep {

/// Raw eigenvalues plus the dims recorded alongside them, if any.
struct SpectrumInput {
  std::vector<double> values;
  std::optional<SystemDims> dims;
};

/// "NxM" -> bipartite(N, M).
SystemDims parse_dims(std::string_view text);

nlohmann::json dims_to_json(const SystemDims& dims);
SystemDims dims_from_json(const nlohmann::json& j);

/// {"eigenvalues": [...], "dims": {...}} or a bare array.
SpectrumInput spectrum_from_json(const nlohmann::json& j);

/// JSON document, or plain text with one value per line ('#' starts a comment).
SpectrumInput parse_spectrum_text(std::string_view content);

/// "0.1,0.2,0.7" (whitespace tolerated).
std::vector<double> parse_value_list(std::string_view text);

/// A readable file path is loaded; anything else is parsed as a value list.
SpectrumInput load_spectrum_arg(const std::string& arg);

}  // namespace abssep
