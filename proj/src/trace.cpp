#include "specmodes/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <string>
#include <string_view>

#include "specmodes/error.hpp"

namespace specmodes {

namespace {

constexpr std::string_view kHeader = "frequency_hz,magnitude";

struct Candidate {
  std::size_t index;
  double prominence;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

// Height of peak `p` above the higher of the two lowest points separating it
// from taller terrain (or the trace edge) on either side.
double prominence(const std::vector<double>& y, std::size_t p) {
  double left_base = y[p];
  for (std::size_t k = p; k-- > 0;) {
    if (y[k] > y[p]) break;
    left_base = std::min(left_base, y[k]);
  }
  double right_base = y[p];
  for (std::size_t k = p + 1; k < y.size(); ++k) {
    if (y[k] > y[p]) break;
    right_base = std::min(right_base, y[k]);
  }
  return y[p] - std::max(left_base, right_base);
}

double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double a = x1 - x0;
  const double b = x1 - x2;
  const double denom = a * (y1 - y2) - b * (y1 - y0);
  if (denom == 0.0) return x1;
  const double x = x1 - 0.5 * (a * a * (y1 - y2) - b * b * (y1 - y0)) / denom;
  return std::clamp(x, x0, x2);
}

}  // namespace

void Trace::validate() const {
  if (points.size() < 3) {
    throw Error(ErrorCode::TooFewPoints,
                "trace has " + std::to_string(points.size()) + " points, need at least 3");
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& pt = points[k];
    if (!std::isfinite(pt.frequency_hz) || !std::isfinite(pt.magnitude) || pt.magnitude < 0.0) {
      throw ParseError(k + 1, "sample must have finite frequency and magnitude >= 0");
    }
    if (k > 0 && !(pt.frequency_hz > points[k - 1].frequency_hz)) {
      throw ParseError(k + 1, "frequency is not strictly increasing");
    }
  }
}

void PeakOptions::validate() const {
  if (!(min_prominence > 0.0 && min_prominence < 1.0)) {
    throw Error(ErrorCode::NonPositiveInput, "min_prominence must lie in (0, 1)");
  }
  if (!(min_separation_hz >= 0.0)) {
    throw Error(ErrorCode::NonPositiveInput, "min_separation_hz must be >= 0");
  }
}

std::vector<double> detect_peaks(const Trace& trace, const PeakOptions& opts) {
  trace.validate();
  opts.validate();

  const auto& pts = trace.points;
  const std::size_t n = pts.size();
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = opts.polarity == Polarity::Dips ? -pts[k].magnitude : pts[k].magnitude;
  }
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const double threshold = opts.min_prominence * (*hi - *lo);

  std::vector<Candidate> candidates;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (!(y[k] > y[k - 1])) continue;
    std::size_t last = k;
    while (last + 1 < n && y[last + 1] == y[k]) ++last;
    if (last + 1 < n && y[last + 1] < y[k]) {
      const std::size_t centre = k + (last - k) / 2;
      const double prom = prominence(y, centre);
      if (prom > 0.0 && prom >= threshold) candidates.push_back({centre, prom});
    }
    k = last;
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.prominence > b.prominence; });

  std::vector<std::size_t> kept;
  for (const auto& c : candidates) {
    const double f = pts[c.index].frequency_hz;
    const bool clear = std::all_of(kept.begin(), kept.end(), [&](std::size_t other) {
      return std::abs(pts[other].frequency_hz - f) >= opts.min_separation_hz;
    });
    if (clear) kept.push_back(c.index);
  }

  std::vector<double> found;
  found.reserve(kept.size());
  for (std::size_t p : kept) {
    found.push_back(parabolic_vertex(pts[p - 1].frequency_hz, y[p - 1], pts[p].frequency_hz, y[p],
                                     pts[p + 1].frequency_hz, y[p + 1]));
  }
  std::sort(found.begin(), found.end());

  if (opts.expected_count && found.size() != *opts.expected_count) {
    throw Error(ErrorCode::CountMismatch, "expected " + std::to_string(*opts.expected_count) +
                                              " peaks, found " + std::to_string(found.size()));
  }
  return found;
}

Trace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());

  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (!header_seen) {
      if (text != kHeader) {
        throw ParseError(line_no, "expected header \"" + std::string(kHeader) + "\"");
      }
      header_seen = true;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two comma-separated fields");
    }
    TracePoint pt;
    if (!parse_double(text.substr(0, comma), pt.frequency_hz)) {
      throw ParseError(line_no, "malformed frequency");
    }
    if (!parse_double(text.substr(comma + 1), pt.magnitude) || pt.magnitude < 0.0) {
      throw ParseError(line_no, "magnitude must be a finite number >= 0");
    }
    if (!trace.points.empty() && !(pt.frequency_hz > trace.points.back().frequency_hz)) {
      throw ParseError(line_no, "frequency is not strictly increasing");
    }
    trace.points.push_back(pt);
  }
  if (in.bad()) throw Error(ErrorCode::IoError, "read failure on " + path.string());
  if (!header_seen) throw ParseError(line_no + 1, "missing header");
  if (trace.points.size() < 3) {
    throw Error(ErrorCode::TooFewPoints, path.string() + " has " +
                                             std::to_string(trace.points.size()) + " points");
  }
  return trace;
}

void write_trace(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << kHeader << '\n' << std::setprecision(17);
  for (const auto& pt : trace.points) out << pt.frequency_hz << ',' << pt.magnitude << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path.string());
}

Trace synthesize_trace(std::span<const double> centers_hz, double half_width_hz, double f_lo,
                       double f_hi, std::size_t samples, double depth) {
  if (samples < 3 || !(f_hi > f_lo) || !(half_width_hz > 0.0) || !(depth > 0.0 && depth < 1.0)) {
    throw Error(ErrorCode::NonPositiveInput, "invalid synthetic trace parameters");
  }
  Trace trace;
  trace.points.reserve(samples);
  const double step = (f_hi - f_lo) / static_cast<double>(samples - 1);
  const double g2 = half_width_hz * half_width_hz;
  for (std::size_t k = 0; k < samples; ++k) {
    const double f = f_lo + step * static_cast<double>(k);
    double mag = 1.0;
    for (double c : centers_hz) mag *= 1.0 - depth * g2 / ((f - c) * (f - c) + g2);
    trace.points.push_back({f, mag});
  }
  return trace;
}

}  // namespace specmodes
