#include "specmodes/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "specmodes/figure.hpp"
#include "specmodes/formats.hpp"
#include "specmodes/recovery.hpp"
#include "specmodes/resonator.hpp"
#include "specmodes/trace.hpp"

#ifndef SPECMODES_CONFIG_DIR
#define SPECMODES_CONFIG_DIR "configs"
#endif

namespace specmodes::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kDigits = 12;

struct RecoverArgs {
  std::string measurement;
  std::string config;
  std::string out;
  std::string symmetrize = "auto";
  bool non_hermitian = false;
  std::vector<double> capacitance_ratios;
  double zero_threshold = kDefaultZeroThreshold;
  double degeneracy_tol = kDefaultDegeneracyTol;
};

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string trace_dir;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

struct PeaksArgs {
  std::string trace;
  std::string full;
  std::vector<std::string> subs;
  std::string out;
  std::string label;
  std::string polarity = "dips";
  double min_prominence = 0.05;
  double min_separation_hz = 0.0;
  std::size_t expected_count = 0;
};

struct CompareArgs {
  std::string report;
  std::string config;
  double tol = 1e-8;
};

struct PlotArgs {
  std::string report;
  std::string config;
  std::string out;
};

struct DemoArgs {
  std::string out_dir;
  std::string config_dir = SPECMODES_CONFIG_DIR;
  double noise = 0.0;
  std::uint64_t seed = 1;
  double tol = 1e-6;
};

void require_input(const std::string& path) {
  if (!path.empty() && !fs::is_regular_file(path)) {
    throw Error(ErrorCode::IoError, "input file " + path + " does not exist");
  }
}

void require_output(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw Error(ErrorCode::IoError, "output directory " + parent.string() + " does not exist");
  }
}

void print_frequencies(std::ostream& out, const std::string& title,
                       const std::vector<double>& hz) {
  out << title << ':';
  for (double f : hz) out << ' ' << f;
  out << '\n';
}

void print_modes(std::ostream& out, const RecoveryReport& report) {
  const std::size_t n = report.modes.size();
  out << "mode  frequency_hz        |v_i1| ... |v_in|\n";
  for (std::size_t i = 0; i < n; ++i) {
    out << std::setw(4) << i + 1 << "  " << std::setw(18) << lambda_to_freq(report.lambda_full.values[i]);
    for (std::size_t j = 0; j < n; ++j) out << "  " << std::setw(18) << report.modes(i, j);
    out << '\n';
  }
}

void print_band_gap(std::ostream& out, const std::vector<double>& hz) {
  if (const auto gap = find_band_gap(hz)) {
    out << "band gap: " << gap->lower_edge_hz << " Hz .. " << gap->upper_edge_hz
        << " Hz (cluster spreads " << gap->lower_spread_hz << " Hz, " << gap->upper_spread_hz
        << " Hz)\n";
  } else {
    out << "band gap: none\n";
  }
}

void make_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::IoError, "cannot create directory " + dir.string());
  }
}

void write_traces(const ArrayConfig& cfg, const MeasurementSet& ms, const fs::path& dir) {
  make_directory(dir);
  std::vector<double> all = ms.full_peaks_hz;
  for (const auto& s : ms.sub_peaks_hz) all.insert(all.end(), s.begin(), s.end());
  const auto [lo, hi] = std::minmax_element(all.begin(), all.end());
  double spacing = *hi - *lo;
  for (std::size_t k = 1; k < ms.full_peaks_hz.size(); ++k) {
    spacing = std::min(spacing, ms.full_peaks_hz[k] - ms.full_peaks_hz[k - 1]);
  }
  if (!(spacing > 0.0)) spacing = 0.01 * *lo;
  const double half_width = 0.05 * spacing;
  const double span = *hi - *lo + 20.0 * half_width;
  const double f_lo = *lo - 10.0 * half_width;
  // ~40 samples per half-width keeps the parabolic refinement well inside 0.1%.
  const auto samples = static_cast<std::size_t>(std::ceil(span / (half_width / 40.0))) + 1;
  write_trace(synthesize_trace(ms.full_peaks_hz, half_width, f_lo, f_lo + span, samples),
              dir / "full.csv");
  for (std::size_t j = 0; j < cfg.n; ++j) {
    write_trace(synthesize_trace(ms.sub_peaks_hz[j], half_width, f_lo, f_lo + span, samples),
                dir / ("sub_" + std::to_string(j + 1) + ".csv"));
  }
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  require_input(a.config);
  require_output(a.out);
  const ArrayConfig cfg = read_config(a.config);
  const MeasurementSet ms = simulate_measurement(cfg, a.noise, a.seed);
  write_measurement(ms, a.out);
  if (!a.trace_dir.empty()) write_traces(cfg, ms, a.trace_dir);

  out << ms.label << '\n';
  print_frequencies(out, "full spectrum (Hz)", ms.full_peaks_hz);
  for (std::size_t j = 0; j < ms.sub_peaks_hz.size(); ++j) {
    print_frequencies(out, "element " + std::to_string(j + 1) + " removed (Hz)",
                      ms.sub_peaks_hz[j]);
  }
  print_band_gap(out, ms.full_peaks_hz);
  return kSuccess;
}

RecoveryOptions recovery_options(const RecoverArgs& a, const std::optional<ArrayConfig>& cfg,
                                  std::size_t n) {
  RecoveryOptions opts;
  if (cfg) {
    if (cfg->n != n) {
      throw Error(ErrorCode::ShapeMismatch, "config has " + std::to_string(cfg->n) +
                                                " elements, measurement has " + std::to_string(n));
    }
    opts = options_for_config(*cfg);
    if (a.non_hermitian && !opts.capacitance_ratios) opts.capacitance_ratios = cfg->capacitances();
  }
  if (a.symmetrize == "on") opts.symmetrize = true;
  if (a.symmetrize == "off") opts.symmetrize = false;
  if (a.non_hermitian) opts.non_hermitian = true;
  if (!a.capacitance_ratios.empty()) {
    opts.capacitance_ratios = a.capacitance_ratios;
    opts.non_hermitian = true;
  }
  opts.zero_threshold = a.zero_threshold;
  opts.degeneracy_tol = a.degeneracy_tol;
  return opts;
}

int cmd_recover(const RecoverArgs& a, std::ostream& out) {
  require_input(a.measurement);
  require_input(a.config);
  require_output(a.out);
  const MeasurementSet ms = read_measurement(a.measurement);
  std::optional<ArrayConfig> cfg;
  if (!a.config.empty()) cfg = read_config(a.config);
  const RecoveryOptions opts = recovery_options(a, cfg, ms.full_peaks_hz.size());
  const RecoveryReport report = run_recovery(ms, opts);
  write_report(report, a.out);

  out << "recovered " << report.modes.size() << " modes"
      << (report.symmetrized ? ", symmetrized" : "")
      << (report.non_hermitian ? ", non-Hermitian correction" : "") << '\n';
  print_modes(out, report);
  for (std::size_t j = 0; j < report.repair_deltas.size(); ++j) {
    for (std::size_t k = 0; k < report.repair_deltas[j].size(); ++k) {
      if (report.repair_deltas[j][k] != 0.0) {
        out << "repair: element " << j + 1 << " removed, value " << k + 1 << " moved by "
            << report.repair_deltas[j][k] << " s^2\n";
      }
    }
  }
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  return kSuccess;
}

Polarity parse_polarity(const std::string& s) {
  return s == "peaks" ? Polarity::Peaks : Polarity::Dips;
}

int cmd_peaks(const PeaksArgs& a, std::ostream& out) {
  PeakOptions opts;
  opts.polarity = parse_polarity(a.polarity);
  opts.min_prominence = a.min_prominence;
  opts.min_separation_hz = a.min_separation_hz;
  require_output(a.out);

  if (!a.trace.empty()) {
    require_input(a.trace);
    if (a.expected_count > 0) opts.expected_count = a.expected_count;
    const auto peaks = detect_peaks(read_trace(a.trace), opts);
    print_frequencies(out, "peaks (Hz)", peaks);
    if (!a.out.empty()) write_text_file(a.out, peaks_to_json(peaks));
    return kSuccess;
  }

  if (a.full.empty() || a.subs.empty() || a.out.empty()) {
    throw Error(ErrorCode::SchemaError,
                "peaks needs either --trace, or --full, one --sub per element and --out");
  }
  require_input(a.full);
  for (const auto& s : a.subs) require_input(s);
  const std::size_t n = a.subs.size();
  MeasurementSet ms;
  ms.label = a.label;
  opts.expected_count = n;
  ms.full_peaks_hz = detect_peaks(read_trace(a.full), opts);
  opts.expected_count = n - 1;
  for (const auto& s : a.subs) ms.sub_peaks_hz.push_back(detect_peaks(read_trace(s), opts));
  write_measurement(ms, a.out);
  print_frequencies(out, "full spectrum (Hz)", ms.full_peaks_hz);
  for (std::size_t j = 0; j < n; ++j) {
    print_frequencies(out, "element " + std::to_string(j + 1) + " removed (Hz)",
                      ms.sub_peaks_hz[j]);
  }
  return kSuccess;
}

int print_comparison(std::ostream& out, const ModeComparison& cmp, double tol) {
  out << "mode  max_abs_error       cosine_similarity\n";
  for (std::size_t i = 0; i < cmp.max_abs_error.size(); ++i) {
    out << std::setw(4) << i + 1 << "  " << std::setw(18) << cmp.max_abs_error[i] << "  "
        << std::setw(18) << cmp.cosine_similarity[i] << '\n';
  }
  const bool ok = cmp.worst_error < tol;
  out << "worst error " << cmp.worst_error << (ok ? " < " : " >= ") << "tol " << tol << ": "
      << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kSuccess : kMismatch;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  require_input(a.report);
  require_input(a.config);
  const RecoveryReport report = read_report(a.report);
  const ArrayConfig cfg = read_config(a.config);
  return print_comparison(out, compare_modes(report.modes, model_modes(cfg)), a.tol);
}

int cmd_plot(const PlotArgs& a, std::ostream& out) {
  require_input(a.report);
  require_input(a.config);
  require_output(a.out);
  const RecoveryReport report = read_report(a.report);
  std::optional<ModeMatrix> model;
  if (!a.config.empty()) model = model_modes(read_config(a.config));
  render_figure(report, model, a.out);
  out << "wrote " << a.out << '\n';
  return kSuccess;
}

int cmd_demo(const DemoArgs& a, std::ostream& out) {
  const fs::path dir(a.out_dir);
  make_directory(dir);
  const fs::path configs(a.config_dir);
  const std::vector<std::string> scenarios{"monomeric", "dimeric"};
  for (const auto& name : scenarios) require_input((configs / (name + ".json")).string());

  bool all_ok = true;
  for (const auto& name : scenarios) {
    const ArrayConfig cfg = read_config(configs / (name + ".json"));
    const MeasurementSet ms = simulate_measurement(cfg, a.noise, a.seed);
    write_measurement(ms, dir / (name + "_measurement.json"));
    const RecoveryReport report = run_recovery(ms, options_for_config(cfg));
    write_report(report, dir / (name + "_report.json"));
    const ModeMatrix model = model_modes(cfg);
    render_figure(report, model, dir / (name + ".svg"));

    out << "== " << name << " (" << ms.label << ")\n";
    print_frequencies(out, "full spectrum (Hz)", ms.full_peaks_hz);
    print_band_gap(out, ms.full_peaks_hz);
    const ModeComparison cmp = compare_modes(report.modes, model);
    const int status = print_comparison(out, cmp, a.tol);
    if (a.noise > 0.0) {
      std::vector<double> errs = cmp.max_abs_error;
      std::sort(errs.begin(), errs.end());
      out << "noise " << a.noise << ": median per-mode error " << errs[errs.size() / 2]
          << ", worst " << cmp.worst_error << ", repaired values "
          << std::count_if(report.repair_deltas.begin(), report.repair_deltas.end(),
                           [](const auto& row) {
                             return std::any_of(row.begin(), row.end(),
                                                [](double d) { return d != 0.0; });
                           })
          << " subspectra touched (tolerance informational)\n";
    } else {
      all_ok = all_ok && status == kSuccess;
    }
  }
  out << "demo: " << (all_ok ? "PASS" : "FAIL") << '\n';
  return all_ok ? kSuccess : kMismatch;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateSpectrum:
      return kDegenerate;
    case ErrorCode::IoError:
      return kIoError;
    case ErrorCode::NotSymmetric:
    case ErrorCode::DidNotConverge:
    case ErrorCode::NotDiagonal:
    case ErrorCode::NonPositiveDiagonal:
    case ErrorCode::TooSmall:
    case ErrorCode::NonPositiveEigenvalue:
    case ErrorCode::NegativeSquaredComponent:
      return kModelError;
    default:
      return kInputError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recover oscillation-mode magnitudes of coupled resonator arrays from spectra"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate the spectra of an array and its deletions");
  simulate->add_option("--config", sim.config, "ArrayConfig JSON")->required();
  simulate->add_option("--out", sim.out, "MeasurementSet JSON to write")->required();
  simulate->add_option("--noise", sim.noise, "relative frequency noise sigma")->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", sim.seed, "noise generator seed");
  simulate->add_option("--trace-dir", sim.trace_dir, "also write synthetic |S11| traces here");

  RecoverArgs rec;
  auto* recover = app.add_subcommand("recover", "Recover mode magnitudes from measured spectra");
  recover->add_option("--measurement", rec.measurement, "MeasurementSet JSON")->required();
  recover->add_option("--config", rec.config, "ArrayConfig JSON (selects symmetrization and capacitances)");
  recover->add_option("--out", rec.out, "RecoveryReport JSON to write")->required();
  recover->add_option("--symmetrize", rec.symmetrize, "auto|on|off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  recover->add_flag("--non-hermitian", rec.non_hermitian, "apply the C^1/2 correction");
  recover->add_option("--capacitance-ratios", rec.capacitance_ratios, "C_1 ... C_n (any common scale)");
  recover->add_option("--zero-threshold", rec.zero_threshold)->check(CLI::PositiveNumber);
  recover->add_option("--degeneracy-tol", rec.degeneracy_tol)->check(CLI::PositiveNumber);

  PeaksArgs pk;
  auto* peaks = app.add_subcommand("peaks", "Detect resonances in |S11| trace CSVs");
  auto* single = peaks->add_option("--trace", pk.trace, "single trace CSV");
  auto* full = peaks->add_option("--full", pk.full, "trace of the intact array");
  peaks->add_option("--sub", pk.subs, "trace with element j removed, one per element in order")
      ->needs(full);
  single->excludes(full);
  peaks->add_option("--out", pk.out, "JSON to write (measurement when --full is given)");
  peaks->add_option("--label", pk.label, "measurement label");
  peaks->add_option("--polarity", pk.polarity, "dips|peaks")->check(CLI::IsMember({"dips", "peaks"}));
  peaks->add_option("--min-prominence", pk.min_prominence, "fraction of the magnitude range");
  peaks->add_option("--min-separation-hz", pk.min_separation_hz);
  peaks->add_option("--expected-count", pk.expected_count, "with --trace: required peak count");

  CompareArgs cmpa;
  auto* compare = app.add_subcommand("compare", "Compare recovered modes against a model config");
  compare->add_option("--report", cmpa.report, "RecoveryReport JSON")->required();
  compare->add_option("--config", cmpa.config, "ArrayConfig JSON")->required();
  compare->add_option("--tol", cmpa.tol, "pass threshold on max abs error")->check(CLI::PositiveNumber);

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "Render a report as SVG");
  plot->add_option("--report", pl.report, "RecoveryReport JSON")->required();
  plot->add_option("--config", pl.config, "ArrayConfig JSON for the model overlay");
  plot->add_option("--out", pl.out, "SVG to write")->required();

  DemoArgs dm;
  auto* demo = app.add_subcommand("demo", "Run the monomeric and dimeric scenarios end to end");
  demo->add_option("--out", dm.out_dir, "output directory")->required();
  demo->add_option("--config-dir", dm.config_dir, "directory holding monomeric.json and dimeric.json");
  demo->add_option("--noise", dm.noise, "relative frequency noise sigma")->check(CLI::NonNegativeNumber);
  demo->add_option("--seed", dm.seed);
  demo->add_option("--tol", dm.tol)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  const auto saved_precision = out.precision(kDigits);
  try {
    int code = kSuccess;
    if (*simulate) code = cmd_simulate(sim, out);
    if (*recover) code = cmd_recover(rec, out);
    if (*peaks) code = cmd_peaks(pk, out);
    if (*compare) code = cmd_compare(cmpa, out);
    if (*plot) code = cmd_plot(pl, out);
    if (*demo) code = cmd_demo(dm, out);
    out.precision(saved_precision);
    return code;
  } catch (const Error& e) {
    out.precision(saved_precision);
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    out.precision(saved_precision);
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace specmodes::cli
