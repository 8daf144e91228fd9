#include "abssep/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "abssep/error.hpp"

namespace abssep {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token) {
  token = trim(token);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

int parse_int(std::string_view token) {
  token = trim(token);
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(token) + "'");
  }
  return value;
}

int json_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw Error(ErrorCode::ParseError, std::string("dims field '") + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

}  // namespace

SystemDims parse_dims(std::string_view text) {
  text = trim(text);
  const auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) throw Error(ErrorCode::ParseError, "dims must look like NxM");
  return SystemDims::bipartite(parse_int(text.substr(0, x)), parse_int(text.substr(x + 1)));
}

nlohmann::json dims_to_json(const SystemDims& dims) {
  switch (dims.layout()) {
    case Layout::Bipartite: return {{"type", "bipartite"}, {"n", dims.n()}, {"m", dims.m()}};
    case Layout::Multiqudit: return {{"type", "multiqudit"}, {"d", dims.local_dim()}, {"n", dims.parties()}};
    case Layout::Symmetric: return {{"type", "symmetric"}, {"d", dims.local_dim()}, {"n", dims.parties()}};
    case Layout::Single: return {{"type", "single"}, {"d", dims.local_dim()}};
  }
  return nullptr;
}

SystemDims dims_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw Error(ErrorCode::ParseError, "dims must be an object with a 'type'");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "bipartite") return SystemDims::bipartite(json_int(j, "n"), json_int(j, "m"));
  if (type == "multiqudit") return SystemDims::multiqudit(json_int(j, "d"), json_int(j, "n"));
  if (type == "symmetric") return SystemDims::symmetric(json_int(j, "d"), json_int(j, "n"));
  if (type == "single") return SystemDims::single(json_int(j, "d"));
  throw Error(ErrorCode::ParseError, "unknown dims type '" + type + "'");
}

SpectrumInput spectrum_from_json(const nlohmann::json& j) {
  SpectrumInput out;
  const nlohmann::json* values = &j;
  if (j.is_object()) {
    if (!j.contains("eigenvalues")) throw Error(ErrorCode::ParseError, "missing 'eigenvalues'");
    values = &j.at("eigenvalues");
    if (j.contains("dims") && !j.at("dims").is_null()) out.dims = dims_from_json(j.at("dims"));
  }
  if (!values->is_array()) throw Error(ErrorCode::ParseError, "'eigenvalues' must be an array");
  for (const auto& v : *values) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, "eigenvalues must be numbers");
    out.values.push_back(v.get<double>());
  }
  return out;
}

SpectrumInput parse_spectrum_text(std::string_view content) {
  const auto body = trim(content);
  if (!body.empty() && (body.front() == '{' || body.front() == '[')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    return spectrum_from_json(j);
  }
  SpectrumInput out;
  std::istringstream lines{std::string(body)};
  std::string line;
  while (std::getline(lines, line)) {
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    out.values.push_back(parse_double(view));
  }
  return out;
}

std::vector<double> parse_value_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

SpectrumInput load_spectrum_arg(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + arg);
    std::ostringstream content;
    content << in.rdbuf();
    return parse_spectrum_text(content.str());
  }
  SpectrumInput out;
  out.values = parse_value_list(arg);
  return out;
}

}  // namespace abssep
