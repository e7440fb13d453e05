#include "specmodes/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specmodes/error.hpp"

namespace specmodes {

bool Spectrum::is_sorted() const { return std::is_sorted(values.begin(), values.end()); }

namespace {
void check_list(const Spectrum& s, const std::string& what) {
  for (double v : s.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidSpectrum, what + " has a non-finite value");
  }
  if (!s.is_sorted()) throw Error(ErrorCode::InvalidSpectrum, what + " is not sorted ascending");
}
}  // namespace

void check_consistent(const Spectrum& full, const SubspectraSet& subs) {
  const std::size_t n = full.size();
  check_list(full, "full spectrum");
  if (subs.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(n) + " subspectra, got " +
                                              std::to_string(subs.size()));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::string what = "subspectrum " + std::to_string(j + 1);
    if (subs.by_deletion[j].size() != n - 1) {
      throw Error(ErrorCode::ShapeMismatch, what + " has " +
                                                std::to_string(subs.by_deletion[j].size()) +
                                                " values, expected " + std::to_string(n - 1));
    }
    check_list(subs.by_deletion[j], what);
  }
}

ModeMatrix normalize_rows(ModeMatrix modes) {
  RealMatrix& m = modes.magnitudes;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double norm = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) norm = std::hypot(norm, m(i, j));
    if (norm == 0.0) continue;
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) /= norm;
  }
  return modes;
}

ModeMatrix modes_from_eigenvectors(const RealMatrix& eigenvectors) {
  ModeMatrix modes{RealMatrix(eigenvectors.size())};
  for (std::size_t i = 0; i < eigenvectors.size(); ++i) {
    for (std::size_t j = 0; j < eigenvectors.size(); ++j) {
      modes.magnitudes(i, j) = std::abs(eigenvectors(j, i));
    }
  }
  return normalize_rows(std::move(modes));
}

}  // namespace specmodes
