#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specmodes/matrix.hpp"
#include "specmodes/spectrum.hpp"

namespace specmodes {

/// A 1-D array of identical inductively coupled LC loops.
///
/// Element n has capacitance chosen so that, isolated, it resonates at
/// base_frequencies_hz[n]. The mutual inductance between elements at
/// distance d is coupling_coefficients[d-1] * inductance_h, independent of
/// where the pair sits in the array.
struct ArrayConfig {
  std::size_t n = 0;
  double inductance_h = 0.0;
  std::vector<double> base_frequencies_hz;
  std::vector<double> coupling_coefficients;

  /// Throws InvalidConfig on any violated invariant.
  void validate() const;
  /// Base frequencies read the same forwards and backwards.
  bool is_palindromic() const;
  /// All base frequencies equal, so H = CM is symmetric.
  bool is_uniform() const;
  /// C_n in farads.
  std::vector<double> capacitances() const;
};

struct SystemMatrices {
  RealMatrix c;  // diagonal, farads
  RealMatrix m;  // henries
  RealMatrix h;  // c * m, seconds^2
};

double capacitance_from_base_freq(double f_hz, double l_h);
/// lambda = (2 pi f)^-2
double freq_to_lambda(double f_hz);
double lambda_to_freq(double lambda_s2);

SystemMatrices build_matrices(const ArrayConfig& cfg);

/// Matrices of the physical array with element `j` (0-based) taken out.
/// Survivors keep their positions, so couplings follow original distances.
SystemMatrices delete_resonator(const ArrayConfig& cfg, std::size_t j);

/// Ascending eigenvalues of h, computed from the symmetric C^1/2 M C^1/2.
/// Throws NonPositiveEigenvalue if the configuration is unphysical.
Spectrum system_spectrum(const SystemMatrices& sys);

/// Row-normalized |eigenvectors of CM|, modes ordered by ascending lambda.
ModeMatrix model_modes(const ArrayConfig& cfg);

struct BandGap {
  double lower_edge_hz;  // top of the lower cluster
  double upper_edge_hz;  // bottom of the upper cluster
  double lower_spread_hz;
  double upper_spread_hz;
};

/// Splits the resonance frequencies at their widest gap. A band gap is
/// reported when both clusters hold at least two resonances and the gap is
/// wider than either cluster.
std::optional<BandGap> find_band_gap(std::vector<double> frequencies_hz);

}  // namespace specmodes
