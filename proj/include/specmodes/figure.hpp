#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "specmodes/recovery.hpp"

namespace specmodes {

/// Two-panel SVG. Left: spectrum as vertical lines on a frequency axis,
/// full spectrum bold (class "full"), subspectra thin (class "sub").
/// Right: one bar chart per mode, recovered magnitudes in red (class
/// "recovered") with model magnitudes as black outlines (class "model")
/// when given. Output depends only on the inputs.
std::string render_figure_svg(const RecoveryReport& report,
                              const std::optional<ModeMatrix>& model_modes);

void render_figure(const RecoveryReport& report, const std::optional<ModeMatrix>& model_modes,
                   const std::filesystem::path& path);

}  // namespace specmodes
