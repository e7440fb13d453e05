#include "specmodes/formats.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>

#include "specmodes/error.hpp"

namespace specmodes {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line =
        1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(line, e.what());
  }
}

void check_keys(const json& j, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "top-level value must be an object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) throw Error(ErrorCode::SchemaError, "unknown key \"" + key + "\"");
  }
  for (auto key : required) {
    if (!j.contains(key)) {
      throw Error(ErrorCode::SchemaError, "missing key \"" + std::string(key) + "\"");
    }
  }
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw Error(ErrorCode::SchemaError, "\"" + key + "\" must be a number");
  return j.get<double>();
}

std::vector<double> get_numbers(const json& j, const std::string& key) {
  if (!j.is_array()) throw Error(ErrorCode::SchemaError, "\"" + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(get_number(v, key));
  return out;
}

std::vector<std::vector<double>> get_number_lists(const json& j, const std::string& key) {
  if (!j.is_array()) {
    throw Error(ErrorCode::SchemaError, "\"" + key + "\" must be an array of arrays");
  }
  std::vector<std::vector<double>> out;
  for (const auto& row : j) out.push_back(get_numbers(row, key));
  return out;
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) throw Error(ErrorCode::SchemaError, "\"" + key + "\" must be a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw Error(ErrorCode::SchemaError, "\"" + key + "\" must be a boolean");
  return j.get<bool>();
}

std::size_t get_count(const json& j, const std::string& key) {
  if (!j.is_number_unsigned()) {
    throw Error(ErrorCode::SchemaError, "\"" + key + "\" must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failure on " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path.string());
}

ArrayConfig parse_config(const std::string& json_text) {
  const json j = parse_json(json_text);
  check_keys(j, {"n", "inductance_h", "base_frequencies_hz", "coupling_coefficients"}, {"note"});
  if (j.contains("note")) get_string(j["note"], "note");
  ArrayConfig cfg;
  cfg.n = get_count(j["n"], "n");
  cfg.inductance_h = get_number(j["inductance_h"], "inductance_h");
  cfg.base_frequencies_hz = get_numbers(j["base_frequencies_hz"], "base_frequencies_hz");
  cfg.coupling_coefficients = get_numbers(j["coupling_coefficients"], "coupling_coefficients");
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return cfg;
}

ArrayConfig read_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

void write_config(const ArrayConfig& cfg, const std::filesystem::path& path) {
  json j;
  j["n"] = cfg.n;
  j["inductance_h"] = cfg.inductance_h;
  j["base_frequencies_hz"] = cfg.base_frequencies_hz;
  j["coupling_coefficients"] = cfg.coupling_coefficients;
  write_text_file(path, dump(j));
}

MeasurementSet parse_measurement(const std::string& json_text) {
  const json j = parse_json(json_text);
  check_keys(j, {"full_peaks_hz", "sub_peaks_hz"}, {"label"});
  MeasurementSet ms;
  ms.full_peaks_hz = get_numbers(j["full_peaks_hz"], "full_peaks_hz");
  ms.sub_peaks_hz = get_number_lists(j["sub_peaks_hz"], "sub_peaks_hz");
  if (j.contains("label")) ms.label = get_string(j["label"], "label");
  try {
    ms.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return ms;
}

MeasurementSet read_measurement(const std::filesystem::path& path) {
  return parse_measurement(read_text_file(path));
}

std::string measurement_to_json(const MeasurementSet& ms) {
  json j;
  j["label"] = ms.label;
  j["full_peaks_hz"] = ms.full_peaks_hz;
  j["sub_peaks_hz"] = ms.sub_peaks_hz;
  return dump(j);
}

void write_measurement(const MeasurementSet& ms, const std::filesystem::path& path) {
  write_text_file(path, measurement_to_json(ms));
}

std::string report_to_json(const RecoveryReport& report) {
  const std::size_t n = report.modes.size();
  json j;
  j["label"] = report.label;
  j["n"] = n;
  j["modes"] = std::vector<double>(report.modes.magnitudes.entries().begin(),
                                   report.modes.magnitudes.entries().end());
  j["lambda_full_s2"] = report.lambda_full.values;
  json subs = json::array();
  for (const auto& s : report.lambda_subs.by_deletion) subs.push_back(s.values);
  j["lambda_subs_s2"] = subs;
  j["symmetrization_deltas"] = report.symmetrization_deltas;
  j["repair_deltas"] = report.repair_deltas;
  json zeroed = json::array();
  for (const auto& [i, k] : report.zeroed_components) zeroed.push_back({i, k});
  j["zeroed_components"] = zeroed;
  j["warnings"] = report.warnings;
  j["symmetrized"] = report.symmetrized;
  j["non_hermitian"] = report.non_hermitian;
  return dump(j);
}

void write_report(const RecoveryReport& report, const std::filesystem::path& path) {
  write_text_file(path, report_to_json(report));
}

RecoveryReport parse_report(const std::string& json_text) {
  const json j = parse_json(json_text);
  check_keys(j, {"n", "modes", "lambda_full_s2", "lambda_subs_s2", "symmetrization_deltas",
                 "repair_deltas", "zeroed_components", "warnings", "symmetrized",
                 "non_hermitian"},
             {"label"});
  RecoveryReport r;
  if (j.contains("label")) r.label = get_string(j["label"], "label");
  const std::size_t n = get_count(j["n"], "n");
  auto modes = get_numbers(j["modes"], "modes");
  if (modes.size() != n * n) {
    throw Error(ErrorCode::SchemaError, "\"modes\" must hold n*n = " + std::to_string(n * n) +
                                            " values");
  }
  r.modes = ModeMatrix{RealMatrix(n, std::move(modes))};
  r.lambda_full.values = get_numbers(j["lambda_full_s2"], "lambda_full_s2");
  for (auto& s : get_number_lists(j["lambda_subs_s2"], "lambda_subs_s2")) {
    r.lambda_subs.by_deletion.push_back(Spectrum{std::move(s)});
  }
  r.symmetrization_deltas = get_number_lists(j["symmetrization_deltas"], "symmetrization_deltas");
  r.repair_deltas = get_number_lists(j["repair_deltas"], "repair_deltas");
  const json& zeroed = j["zeroed_components"];
  if (!zeroed.is_array()) throw Error(ErrorCode::SchemaError, "\"zeroed_components\" must be an array");
  for (const auto& pair : zeroed) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorCode::SchemaError, "\"zeroed_components\" entries must be [mode, component]");
    }
    r.zeroed_components.emplace_back(get_count(pair[0], "zeroed_components"),
                                     get_count(pair[1], "zeroed_components"));
  }
  const json& warnings = j["warnings"];
  if (!warnings.is_array()) throw Error(ErrorCode::SchemaError, "\"warnings\" must be an array");
  for (const auto& w : warnings) r.warnings.push_back(get_string(w, "warnings"));
  r.symmetrized = get_bool(j["symmetrized"], "symmetrized");
  r.non_hermitian = get_bool(j["non_hermitian"], "non_hermitian");

  if (r.lambda_full.size() != n) {
    throw Error(ErrorCode::SchemaError, "\"lambda_full_s2\" must hold n values");
  }
  try {
    check_consistent(r.lambda_full, r.lambda_subs);
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, std::string("\"lambda_subs_s2\": ") + e.what());
  }
  return r;
}

std::string peaks_to_json(const std::vector<double>& peaks_hz) {
  json j;
  j["peaks_hz"] = peaks_hz;
  return dump(j);
}

RecoveryReport read_report(const std::filesystem::path& path) {
  return parse_report(read_text_file(path));
}

}  // namespace specmodes
