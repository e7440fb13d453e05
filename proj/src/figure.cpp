#include "specmodes/figure.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "specmodes/error.hpp"
#include "specmodes/formats.hpp"

namespace specmodes {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 50.0;
constexpr double kPanelGap = 60.0;
constexpr double kLeftWidth = 380.0;

std::string fmt(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << x;
  return os.str();
}

std::string fmt_mhz(double hz) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << hz / 1e6;
  return os.str();
}

class Svg {
 public:
  void line(double x1, double y1, double x2, double y2, const std::string& cls) {
    body_ << "  <line class=\"" << cls << "\" x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1)
          << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2) << "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& cls) {
    body_ << "  <rect class=\"" << cls << "\" x=\"" << fmt(x) << "\" y=\"" << fmt(y)
          << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(h) << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, const std::string& anchor = "middle") {
    body_ << "  <text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" text-anchor=\"" << anchor
          << "\">" << s << "</text>\n";
  }
  std::string finish() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
       << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(kHeight) << "\">\n"
       << "  <style>\n"
       << "    line.full { stroke: #000; stroke-width: 3; }\n"
       << "    line.sub { stroke: #999; stroke-width: 1; }\n"
       << "    line.axis { stroke: #000; stroke-width: 1; }\n"
       << "    rect.recovered { fill: #c0392b; fill-opacity: 0.75; }\n"
       << "    rect.model { fill: none; stroke: #000; stroke-width: 1; }\n"
       << "    text { font-family: sans-serif; font-size: 11px; }\n"
       << "  </style>\n"
       << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
       << "\" fill=\"#fff\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  std::ostringstream body_;
};

}  // namespace

std::string render_figure_svg(const RecoveryReport& report,
                              const std::optional<ModeMatrix>& model_modes) {
  const std::size_t n = report.modes.size();
  check_consistent(report.lambda_full, report.lambda_subs);
  if (report.lambda_full.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "report spectrum and modes disagree in size");
  }
  if (model_modes && model_modes->size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "model modes and report modes disagree in size");
  }

  std::vector<double> full_hz;
  for (double v : report.lambda_full.values) full_hz.push_back(lambda_to_freq(v));
  std::vector<double> sub_hz;
  for (const auto& s : report.lambda_subs.by_deletion) {
    for (double v : s.values) sub_hz.push_back(lambda_to_freq(v));
  }
  double f_min = *std::min_element(full_hz.begin(), full_hz.end());
  double f_max = *std::max_element(full_hz.begin(), full_hz.end());
  for (double f : sub_hz) {
    f_min = std::min(f_min, f);
    f_max = std::max(f_max, f);
  }
  const double pad = f_max > f_min ? 0.08 * (f_max - f_min) : 0.01 * f_min;
  f_min -= pad;
  f_max += pad;

  Svg svg;
  const double left_x0 = kMargin;
  const double left_x1 = kMargin + kLeftWidth;
  const double top = kMargin;
  const double bottom = kHeight - kMargin;
  auto x_of = [&](double f) { return left_x0 + (f - f_min) / (f_max - f_min) * kLeftWidth; };

  const double full_top = top;
  const double full_bottom = top + 0.45 * (bottom - top);
  const double sub_top = top + 0.55 * (bottom - top);
  for (double f : full_hz) svg.line(x_of(f), full_top, x_of(f), full_bottom, "full");
  for (double f : sub_hz) svg.line(x_of(f), sub_top, x_of(f), bottom, "sub");
  svg.line(left_x0, bottom, left_x1, bottom, "axis");
  for (int t = 0; t <= 4; ++t) {
    const double f = f_min + (f_max - f_min) * t / 4.0;
    svg.text(x_of(f), bottom + 16.0, fmt_mhz(f));
  }
  svg.text(0.5 * (left_x0 + left_x1), bottom + 34.0, "frequency (MHz)");
  svg.text(left_x0, full_top - 8.0, "spectrum", "start");
  svg.text(left_x0, sub_top - 8.0, "subspectra", "start");

  // One bar chart per mode, highest frequency (smallest lambda) on top.
  const double right_x0 = left_x1 + kPanelGap;
  const double right_x1 = kWidth - kMargin;
  const double row_h = (bottom - top) / static_cast<double>(std::max<std::size_t>(n, 1));
  const double label_w = 90.0;
  const double bar_slot = (right_x1 - right_x0 - label_w) / static_cast<double>(std::max<std::size_t>(n, 1));
  for (std::size_t i = 0; i < n; ++i) {
    const double row_top = top + row_h * static_cast<double>(i);
    const double base = row_top + row_h * 0.9;
    const double scale = row_h * 0.8;
    svg.text(right_x0, base - 0.3 * scale, fmt_mhz(full_hz[i]) + " MHz", "start");
    for (std::size_t j = 0; j < n; ++j) {
      const double x = right_x0 + label_w + bar_slot * static_cast<double>(j) + 0.15 * bar_slot;
      const double w = 0.7 * bar_slot;
      const double h = scale * report.modes(i, j);
      svg.rect(x, base - h, w, h, "recovered");
      if (model_modes) {
        const double hm = scale * (*model_modes)(i, j);
        svg.rect(x, base - hm, w, hm, "model");
      }
    }
    svg.line(right_x0 + label_w, base, right_x1, base, "axis");
  }
  svg.text(right_x0 + label_w + 0.5 * (right_x1 - right_x0 - label_w), bottom + 34.0,
           "element");
  return svg.finish();
}

void render_figure(const RecoveryReport& report, const std::optional<ModeMatrix>& model_modes,
                   const std::filesystem::path& path) {
  write_text_file(path, render_figure_svg(report, model_modes));
}

}  // namespace specmodes
