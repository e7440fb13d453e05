#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specmodes/identity.hpp"
#include "specmodes/resonator.hpp"
#include "specmodes/spectrum.hpp"

namespace specmodes {

/// Resonance frequencies of the intact array and of each single-deletion
/// subsystem, as read off the measured traces.
struct MeasurementSet {
  std::vector<double> full_peaks_hz;
  std::vector<std::vector<double>> sub_peaks_hz;  // entry j: element j removed
  std::string label;

  /// Throws ShapeMismatch on inconsistent counts, NonPositiveInput on
  /// non-positive frequencies.
  void validate() const;
  bool operator==(const MeasurementSet&) const = default;
};

struct RecoveryOptions {
  bool symmetrize = false;
  double zero_threshold = kDefaultZeroThreshold;
  double degeneracy_tol = kDefaultDegeneracyTol;
  /// Capacitances (or any common multiple of them). Presence selects the
  /// non-Hermitian correction.
  std::optional<std::vector<double>> capacitance_ratios;
  /// Caller asserts the array is non-Hermitian; requires capacitance_ratios.
  bool non_hermitian = false;
};

/// Options implied by a known array: symmetrize iff the base frequencies are
/// palindromic, non-Hermitian correction iff they are not all equal.
RecoveryOptions options_for_config(const ArrayConfig& cfg);

/// Per-value adjustments, one list per deletion.
using ValueDeltas = std::vector<std::vector<double>>;

struct RecoveryReport {
  std::string label;
  ModeMatrix modes;
  Spectrum lambda_full;
  SubspectraSet lambda_subs;  // after symmetrization and repair
  ValueDeltas symmetrization_deltas;
  ValueDeltas repair_deltas;
  /// (mode, component) pairs, 0-based, whose magnitude was set to zero.
  std::vector<std::pair<std::size_t, std::size_t>> zeroed_components;
  std::vector<std::string> warnings;
  bool symmetrized = false;
  bool non_hermitian = false;

  bool operator==(const RecoveryReport&) const = default;
};

/// Maps every frequency to lambda and sorts each list ascending in lambda
/// (descending in frequency).
std::pair<Spectrum, SubspectraSet> sort_and_convert(const MeasurementSet& ms);

/// Replaces deletions j and n-1-j by their elementwise mean.
SubspectraSet symmetrize_subspectra(const SubspectraSet& subs);

struct InterlacingRepair {
  SubspectraSet subs;
  ValueDeltas deltas;  // new - old
};

/// Clamps mu_i of every subspectrum into [lambda_i, lambda_{i+1}].
InterlacingRepair interlacing_repair(const Spectrum& full, const SubspectraSet& subs);

/// sort/convert, optional symmetrization, interlacing repair, identity
/// evaluation, optional non-Hermitian correction, row normalization.
RecoveryReport run_recovery(const MeasurementSet& ms, const RecoveryOptions& opts);

/// Model spectra of `cfg` and its deletions as frequencies, each multiplied
/// by (1 + eps), eps ~ N(0, noise_sigma) from a generator seeded with `seed`.
MeasurementSet simulate_measurement(const ArrayConfig& cfg, double noise_sigma,
                                    std::uint64_t seed);

struct ModeComparison {
  std::vector<double> max_abs_error;      // per mode
  std::vector<double> cosine_similarity;  // per mode
  double worst_error = 0.0;
};

/// Per-mode agreement between two mode matrices of equal size.
ModeComparison compare_modes(const ModeMatrix& recovered, const ModeMatrix& model);

}  // namespace specmodes
