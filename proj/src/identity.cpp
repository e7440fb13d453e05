#include "specmodes/identity.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "specmodes/error.hpp"

namespace specmodes {

namespace {

void check_nondegenerate(const Spectrum& full, double degeneracy_tol) {
  const std::size_t n = full.size();
  if (n < 2) return;
  const double range = full.values.back() - full.values.front();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double gap = full.values[k + 1] - full.values[k];
    if (!(gap > degeneracy_tol * range)) {
      std::ostringstream os;
      os.precision(12);
      os << "eigenvalues " << k + 1 << " and " << k + 2 << " (" << full.values[k] << ", "
         << full.values[k + 1] << ") are closer than " << degeneracy_tol
         << " times the spectral range";
      throw Error(ErrorCode::DegenerateSpectrum, os.str());
    }
  }
}

}  // namespace

ModeMatrix thompson_modes(const Spectrum& full, const SubspectraSet& subs, double zero_threshold,
                          double degeneracy_tol) {
  if (full.size() == 0) throw Error(ErrorCode::ShapeMismatch, "empty spectrum");
  check_consistent(full, subs);
  check_nondegenerate(full, degeneracy_tol);

  const std::size_t n = full.size();
  ModeMatrix modes{RealMatrix(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double li = full.values[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& mu = subs.by_deletion[j].values;
      bool negative = false;
      bool zero = false;
      double log_sum = 0.0;
      // Pair mu_k with its interlacing neighbour lambda_k (k < i) or
      // lambda_{k+1} (k >= i) so each ratio stays O(1).
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double num = li - mu[k];
        if (num == 0.0) {
          zero = true;
          break;
        }
        const double den = li - full.values[k < i ? k : k + 1];
        const double ratio = num / den;
        negative ^= ratio < 0.0;
        log_sum += std::log(std::abs(ratio));
      }
      if (zero) continue;
      const double squared = negative ? -std::exp(log_sum) : std::exp(log_sum);
      if (squared < -zero_threshold) throw NegativeSquaredComponent(i, j, squared);
      if (squared < zero_threshold) continue;
      modes.magnitudes(i, j) = std::sqrt(squared);
    }
  }
  return modes;
}

RealMatrix hermitian_equivalent(const SystemMatrices& sys) {
  const RealMatrix root = diag_power(sys.c, 0.5);
  return root * sys.m * root;
}

ModeMatrix correct_nonhermitian(const ModeMatrix& t_modes, const RealMatrix& c) {
  const RealMatrix root = diag_power(c, 0.5);
  if (root.size() != t_modes.size()) {
    throw Error(ErrorCode::ShapeMismatch, "capacitance matrix size " + std::to_string(c.size()) +
                                              " does not match " +
                                              std::to_string(t_modes.size()) + " modes");
  }
  ModeMatrix u = t_modes;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) u.magnitudes(i, j) *= root(j, j);
  }
  return normalize_rows(std::move(u));
}

}  // namespace specmodes
