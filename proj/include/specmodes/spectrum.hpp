#pragma once

#include <cstddef>
#include <vector>

#include "specmodes/matrix.hpp"

namespace specmodes {

/// Ordered eigenvalues (lambda = omega^-2 in seconds^2 for physical arrays).
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  bool is_sorted() const;
  bool operator==(const Spectrum&) const = default;
};

/// Spectra of the n single-deletion subsystems; entry j has element j removed.
struct SubspectraSet {
  std::vector<Spectrum> by_deletion;

  std::size_t size() const noexcept { return by_deletion.size(); }
  bool operator==(const SubspectraSet&) const = default;
};

/// Throws ShapeMismatch unless `subs` has n entries of n-1 values each, or
/// InvalidSpectrum for unsorted/non-finite lists.
void check_consistent(const Spectrum& full, const SubspectraSet& subs);

/// Mode-component magnitudes |v_ij|: row i is a mode, column j a component.
struct ModeMatrix {
  RealMatrix magnitudes;

  std::size_t size() const noexcept { return magnitudes.size(); }
  double operator()(std::size_t mode, std::size_t component) const {
    return magnitudes(mode, component);
  }
  bool operator==(const ModeMatrix&) const = default;
};

/// Scales every row to unit Euclidean norm; all-zero rows are left as is.
ModeMatrix normalize_rows(ModeMatrix modes);

/// Row-normalized |columns of `eigenvectors`|, arranged as a ModeMatrix.
ModeMatrix modes_from_eigenvectors(const RealMatrix& eigenvectors);

}  // namespace specmodes
