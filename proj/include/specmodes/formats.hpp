#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "specmodes/recovery.hpp"
#include "specmodes/resonator.hpp"

namespace specmodes {

// JSON file formats. Readers are strict: unknown or missing keys raise
// SchemaError naming the key, malformed JSON raises ParseError with the line,
// unreadable files raise IoError. Schemas are documented in docs/formats.md.

ArrayConfig read_config(const std::filesystem::path& path);
ArrayConfig parse_config(const std::string& json_text);
void write_config(const ArrayConfig& cfg, const std::filesystem::path& path);

MeasurementSet read_measurement(const std::filesystem::path& path);
MeasurementSet parse_measurement(const std::string& json_text);
std::string measurement_to_json(const MeasurementSet& ms);
void write_measurement(const MeasurementSet& ms, const std::filesystem::path& path);

RecoveryReport read_report(const std::filesystem::path& path);
RecoveryReport parse_report(const std::string& json_text);
std::string report_to_json(const RecoveryReport& report);
void write_report(const RecoveryReport& report, const std::filesystem::path& path);

/// {"peaks_hz": [...]} for a single detected peak list.
std::string peaks_to_json(const std::vector<double>& peaks_hz);

/// Whole-file read/write helpers raising IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace specmodes
