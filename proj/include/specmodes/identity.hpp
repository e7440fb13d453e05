#pragma once

#include "specmodes/matrix.hpp"
#include "specmodes/resonator.hpp"
#include "specmodes/spectrum.hpp"

namespace specmodes {

inline constexpr double kDefaultZeroThreshold = 1e-10;
inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// Mode magnitudes from spectra alone via the eigenvector-eigenvalue identity:
///
///   |v_ij|^2 = prod_k (lambda_i - mu_k^(j)) / prod_{k != i} (lambda_i - lambda_k)
///
/// where mu^(j) is the spectrum with element j deleted. Factors are paired
/// numerator-to-denominator and accumulated as sign plus sum of logs, so
/// long products of tiny or huge differences never under- or overflow.
/// Squared magnitudes in [-zero_threshold, zero_threshold) become exactly 0;
/// anything more negative raises NegativeSquaredComponent. Rows are returned
/// unnormalized.
///
/// Throws DegenerateSpectrum if two full-spectrum values are closer than
/// degeneracy_tol times the spectral range.
ModeMatrix thompson_modes(const Spectrum& full, const SubspectraSet& subs,
                          double zero_threshold = kDefaultZeroThreshold,
                          double degeneracy_tol = kDefaultDegeneracyTol);

/// C^1/2 M C^1/2, the symmetric matrix isospectral to H = CM.
RealMatrix hermitian_equivalent(const SystemMatrices& sys);

/// Maps modes of C^1/2 M C^1/2 onto modes of CM (U = C^1/2 T), then
/// renormalizes the rows.
ModeMatrix correct_nonhermitian(const ModeMatrix& t_modes, const RealMatrix& c);

}  // namespace specmodes
