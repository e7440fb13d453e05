#include "specmodes/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "specmodes/error.hpp"

namespace specmodes {

namespace {

ValueDeltas difference(const SubspectraSet& after, const SubspectraSet& before) {
  ValueDeltas deltas(before.size());
  for (std::size_t j = 0; j < before.size(); ++j) {
    const auto& a = after.by_deletion[j].values;
    const auto& b = before.by_deletion[j].values;
    deltas[j].resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) deltas[j][k] = a[k] - b[k];
  }
  return deltas;
}

std::size_t count_nonzero(const ValueDeltas& deltas, double& largest) {
  std::size_t count = 0;
  largest = 0.0;
  for (const auto& row : deltas) {
    for (double d : row) {
      if (d != 0.0) ++count;
      largest = std::max(largest, std::abs(d));
    }
  }
  return count;
}

Spectrum to_lambda(const std::vector<double>& peaks_hz) {
  Spectrum s;
  s.values.reserve(peaks_hz.size());
  for (double f : peaks_hz) s.values.push_back(freq_to_lambda(f));
  std::sort(s.values.begin(), s.values.end());
  return s;
}

std::vector<double> to_frequencies(const Spectrum& s) {
  std::vector<double> f;
  f.reserve(s.size());
  for (double v : s.values) f.push_back(lambda_to_freq(v));
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

void MeasurementSet::validate() const {
  const std::size_t n = full_peaks_hz.size();
  if (n == 0) throw Error(ErrorCode::ShapeMismatch, "measurement has no full-spectrum peaks");
  if (sub_peaks_hz.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(n) +
                                              " subspectra, got " +
                                              std::to_string(sub_peaks_hz.size()));
  }
  auto check_positive = [](const std::vector<double>& values, const std::string& what) {
    for (double f : values) {
      if (!(f > 0.0) || !std::isfinite(f)) {
        throw Error(ErrorCode::NonPositiveInput, what + " contains a non-positive frequency");
      }
    }
  };
  check_positive(full_peaks_hz, "full spectrum");
  for (std::size_t j = 0; j < n; ++j) {
    const std::string what = "subspectrum " + std::to_string(j + 1);
    if (sub_peaks_hz[j].size() != n - 1) {
      throw Error(ErrorCode::ShapeMismatch, what + " has " +
                                                std::to_string(sub_peaks_hz[j].size()) +
                                                " peaks, expected " + std::to_string(n - 1));
    }
    check_positive(sub_peaks_hz[j], what);
  }
}

RecoveryOptions options_for_config(const ArrayConfig& cfg) {
  cfg.validate();
  RecoveryOptions opts;
  opts.symmetrize = cfg.is_palindromic();
  if (!cfg.is_uniform()) {
    opts.non_hermitian = true;
    opts.capacitance_ratios = cfg.capacitances();
  }
  return opts;
}

std::pair<Spectrum, SubspectraSet> sort_and_convert(const MeasurementSet& ms) {
  ms.validate();
  SubspectraSet subs;
  subs.by_deletion.reserve(ms.sub_peaks_hz.size());
  for (const auto& peaks : ms.sub_peaks_hz) subs.by_deletion.push_back(to_lambda(peaks));
  return {to_lambda(ms.full_peaks_hz), std::move(subs)};
}

SubspectraSet symmetrize_subspectra(const SubspectraSet& subs) {
  const std::size_t n = subs.size();
  SubspectraSet out = subs;
  for (std::size_t j = 0; j < n / 2; ++j) {
    const auto& a = subs.by_deletion[j].values;
    const auto& b = subs.by_deletion[n - 1 - j].values;
    if (a.size() != b.size()) {
      throw Error(ErrorCode::ShapeMismatch, "subspectra " + std::to_string(j + 1) + " and " +
                                                std::to_string(n - j) + " differ in length");
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double mean = 0.5 * (a[k] + b[k]);
      out.by_deletion[j].values[k] = mean;
      out.by_deletion[n - 1 - j].values[k] = mean;
    }
  }
  return out;
}

InterlacingRepair interlacing_repair(const Spectrum& full, const SubspectraSet& subs) {
  check_consistent(full, subs);
  InterlacingRepair result{subs, {}};
  for (auto& sub : result.subs.by_deletion) {
    for (std::size_t i = 0; i < sub.size(); ++i) {
      sub.values[i] = std::clamp(sub.values[i], full.values[i], full.values[i + 1]);
    }
  }
  result.deltas = difference(result.subs, subs);
  return result;
}

RecoveryReport run_recovery(const MeasurementSet& ms, const RecoveryOptions& opts) {
  if (!(opts.zero_threshold > 0.0) || !(opts.degeneracy_tol > 0.0)) {
    throw Error(ErrorCode::NonPositiveInput, "thresholds must be positive");
  }
  if (opts.non_hermitian && !opts.capacitance_ratios) {
    throw Error(ErrorCode::MissingCapacitanceRatios,
                "the non-Hermitian correction needs the capacitances or their ratios");
  }

  RecoveryReport report;
  report.label = ms.label;
  auto [full, subs] = sort_and_convert(ms);
  const std::size_t n = full.size();

  if (opts.capacitance_ratios) {
    const auto& ratios = *opts.capacitance_ratios;
    if (ratios.size() != n) {
      throw Error(ErrorCode::ShapeMismatch, "got " + std::to_string(ratios.size()) +
                                                " capacitance ratios for " + std::to_string(n) +
                                                " elements");
    }
    if (!std::all_of(ratios.begin(), ratios.end(), [](double r) { return r > 0.0; })) {
      throw Error(ErrorCode::NonPositiveInput, "capacitance ratios must be positive");
    }
  }

  SubspectraSet symmetric = opts.symmetrize ? symmetrize_subspectra(subs) : subs;
  report.symmetrization_deltas = difference(symmetric, subs);
  report.symmetrized = opts.symmetrize;

  InterlacingRepair repaired = interlacing_repair(full, symmetric);
  report.repair_deltas = std::move(repaired.deltas);

  ModeMatrix modes =
      thompson_modes(full, repaired.subs, opts.zero_threshold, opts.degeneracy_tol);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (modes(i, j) == 0.0) report.zeroed_components.emplace_back(i, j);
    }
  }

  if (opts.capacitance_ratios) {
    modes = correct_nonhermitian(modes, RealMatrix::diagonal(*opts.capacitance_ratios));
    report.non_hermitian = true;
  } else {
    modes = normalize_rows(std::move(modes));
  }

  double largest = 0.0;
  if (const std::size_t count = count_nonzero(report.repair_deltas, largest); count > 0) {
    std::ostringstream os;
    os.precision(12);
    os << "interlacing repair adjusted " << count << " subspectrum value(s), largest |delta| "
       << largest << " s^2";
    report.warnings.push_back(os.str());
  }
  for (const auto& [i, j] : report.zeroed_components) {
    report.warnings.push_back("mode " + std::to_string(i + 1) + " component " +
                              std::to_string(j + 1) + " set to zero");
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) any = any || modes(i, j) != 0.0;
    if (!any) report.warnings.push_back("mode " + std::to_string(i + 1) + " is entirely zero");
  }

  report.modes = std::move(modes);
  report.lambda_full = std::move(full);
  report.lambda_subs = std::move(repaired.subs);
  return report;
}

MeasurementSet simulate_measurement(const ArrayConfig& cfg, double noise_sigma,
                                    std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::NonPositiveInput, "noise_sigma must be >= 0");
  cfg.validate();

  MeasurementSet ms;
  ms.full_peaks_hz = to_frequencies(system_spectrum(build_matrices(cfg)));
  for (std::size_t j = 0; j < cfg.n; ++j) {
    ms.sub_peaks_hz.push_back(
        cfg.n < 2 ? std::vector<double>{} : to_frequencies(system_spectrum(delete_resonator(cfg, j))));
  }

  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> eps(0.0, noise_sigma);
    for (double& f : ms.full_peaks_hz) f *= 1.0 + eps(rng);
    for (auto& sub : ms.sub_peaks_hz) {
      for (double& f : sub) f *= 1.0 + eps(rng);
    }
  }
  std::ostringstream label;
  label.precision(12);
  label << "simulated n=" << cfg.n << " sigma=" << noise_sigma << " seed=" << seed;
  ms.label = label.str();
  return ms;
}

ModeComparison compare_modes(const ModeMatrix& recovered, const ModeMatrix& model) {
  if (recovered.size() != model.size()) {
    throw Error(ErrorCode::ShapeMismatch, "cannot compare " + std::to_string(recovered.size()) +
                                              " modes with " + std::to_string(model.size()));
  }
  ModeComparison cmp;
  const std::size_t n = model.size();
  for (std::size_t i = 0; i < n; ++i) {
    double err = 0.0;
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      err = std::max(err, std::abs(recovered(i, j) - model(i, j)));
      dot += recovered(i, j) * model(i, j);
      na += recovered(i, j) * recovered(i, j);
      nb += model(i, j) * model(i, j);
    }
    cmp.max_abs_error.push_back(err);
    cmp.cosine_similarity.push_back(na > 0.0 && nb > 0.0 ? dot / std::sqrt(na * nb) : 0.0);
    cmp.worst_error = std::max(cmp.worst_error, err);
  }
  return cmp;
}

}  // namespace specmodes
