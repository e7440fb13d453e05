#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace specmodes {

struct TracePoint {
  double frequency_hz = 0.0;
  double magnitude = 0.0;
  bool operator==(const TracePoint&) const = default;
};

/// |S11|-style magnitude sampled on a strictly increasing frequency grid.
struct Trace {
  std::vector<TracePoint> points;

  /// Throws TooFewPoints (< 3 samples) or ParseError naming the 1-based
  /// sample index of the first offending point.
  void validate() const;
};

enum class Polarity { Dips, Peaks };

struct PeakOptions {
  Polarity polarity = Polarity::Dips;
  double min_prominence = 0.05;  // fraction of the trace's magnitude range
  double min_separation_hz = 0.0;
  std::optional<std::size_t> expected_count;

  void validate() const;
};

/// Local extrema whose topographic prominence reaches
/// min_prominence * (max - min magnitude), kept greedily in order of
/// decreasing prominence subject to min_separation_hz, each refined by a
/// parabola through the extremal sample and its two neighbours. Ascending.
std::vector<double> detect_peaks(const Trace& trace, const PeakOptions& opts);

/// CSV with mandatory header "frequency_hz,magnitude"; '#' starts a comment
/// line. Throws IoError, or ParseError carrying the file line number.
Trace read_trace(const std::filesystem::path& path);
void write_trace(const Trace& trace, const std::filesystem::path& path);

/// Synthetic reflection trace: product of Lorentzian dips of the given
/// depth and half-width centred on `centers_hz`, sampled at `samples`
/// evenly spaced points on [f_lo, f_hi].
Trace synthesize_trace(std::span<const double> centers_hz, double half_width_hz, double f_lo,
                       double f_hi, std::size_t samples, double depth = 0.9);

}  // namespace specmodes
