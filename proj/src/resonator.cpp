#include "specmodes/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "specmodes/error.hpp"
#include "specmodes/identity.hpp"

namespace specmodes {

namespace {

double angular(double f_hz) { return 2.0 * std::numbers::pi * f_hz; }

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::NonPositiveInput, std::string(what) + " must be positive and finite");
  }
}

// Matrices for the elements of `cfg` sitting at `positions` (0-based indices
// into the original array).
SystemMatrices build_at(const ArrayConfig& cfg, const std::vector<std::size_t>& positions) {
  const std::size_t n = positions.size();
  SystemMatrices sys{RealMatrix(n), RealMatrix(n), RealMatrix(n)};
  for (std::size_t a = 0; a < n; ++a) {
    sys.c(a, a) = capacitance_from_base_freq(cfg.base_frequencies_hz[positions[a]], cfg.inductance_h);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) {
        sys.m(a, b) = cfg.inductance_h;
      } else {
        const std::size_t d = positions[a] > positions[b] ? positions[a] - positions[b]
                                                          : positions[b] - positions[a];
        sys.m(a, b) = cfg.inductance_h * cfg.coupling_coefficients[d - 1];
      }
      sys.h(a, b) = sys.c(a, a) * sys.m(a, b);
    }
  }
  return sys;
}

}  // namespace

void ArrayConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
  if (n < 1) fail("n must be at least 1");
  if (!(inductance_h > 0.0) || !std::isfinite(inductance_h)) fail("inductance_h must be positive");
  if (base_frequencies_hz.size() != n) {
    fail("base_frequencies_hz has " + std::to_string(base_frequencies_hz.size()) +
         " entries, expected " + std::to_string(n));
  }
  for (double f : base_frequencies_hz) {
    if (!(f > 0.0) || !std::isfinite(f)) fail("base frequencies must be positive");
  }
  if (coupling_coefficients.size() != n - 1) {
    fail("coupling_coefficients has " + std::to_string(coupling_coefficients.size()) +
         " entries, expected " + std::to_string(n - 1));
  }
  for (double k : coupling_coefficients) {
    if (!(std::abs(k) < 1.0)) fail("coupling coefficients must satisfy |k| < 1");
  }
}

bool ArrayConfig::is_palindromic() const {
  return std::equal(base_frequencies_hz.begin(), base_frequencies_hz.end(),
                    base_frequencies_hz.rbegin());
}

bool ArrayConfig::is_uniform() const {
  return std::adjacent_find(base_frequencies_hz.begin(), base_frequencies_hz.end(),
                            std::not_equal_to<>()) == base_frequencies_hz.end();
}

std::vector<double> ArrayConfig::capacitances() const {
  std::vector<double> c;
  c.reserve(base_frequencies_hz.size());
  for (double f : base_frequencies_hz) c.push_back(capacitance_from_base_freq(f, inductance_h));
  return c;
}

double capacitance_from_base_freq(double f_hz, double l_h) {
  require_positive(f_hz, "frequency");
  require_positive(l_h, "inductance");
  const double w = angular(f_hz);
  return 1.0 / (l_h * w * w);
}

double freq_to_lambda(double f_hz) {
  require_positive(f_hz, "frequency");
  const double w = angular(f_hz);
  return 1.0 / (w * w);
}

double lambda_to_freq(double lambda_s2) {
  require_positive(lambda_s2, "eigenvalue");
  return 1.0 / (2.0 * std::numbers::pi * std::sqrt(lambda_s2));
}

SystemMatrices build_matrices(const ArrayConfig& cfg) {
  cfg.validate();
  std::vector<std::size_t> positions(cfg.n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  return build_at(cfg, positions);
}

SystemMatrices delete_resonator(const ArrayConfig& cfg, std::size_t j) {
  cfg.validate();
  if (cfg.n < 2) throw Error(ErrorCode::TooSmall, "cannot remove an element from a 1-element array");
  if (j >= cfg.n) {
    throw Error(ErrorCode::IndexOutOfRange, "element " + std::to_string(j + 1) +
                                                " outside array of " + std::to_string(cfg.n));
  }
  std::vector<std::size_t> positions;
  for (std::size_t p = 0; p < cfg.n; ++p) {
    if (p != j) positions.push_back(p);
  }
  return build_at(cfg, positions);
}

Spectrum system_spectrum(const SystemMatrices& sys) {
  Spectrum spectrum{sym_eigen(hermitian_equivalent(sys)).values};
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (!(spectrum.values[k] > 0.0)) {
      throw Error(ErrorCode::NonPositiveEigenvalue,
                  "eigenvalue " + std::to_string(k + 1) + " is not positive; the coupling "
                  "matrix is not positive definite");
    }
  }
  return spectrum;
}

ModeMatrix model_modes(const ArrayConfig& cfg) {
  const SystemMatrices sys = build_matrices(cfg);
  const SymEigenResult eig = sym_eigen(hermitian_equivalent(sys));
  return modes_from_eigenvectors(diag_power(sys.c, 0.5) * eig.vectors);
}

std::optional<BandGap> find_band_gap(std::vector<double> frequencies_hz) {
  std::sort(frequencies_hz.begin(), frequencies_hz.end());
  const std::size_t n = frequencies_hz.size();
  if (n < 4) return std::nullopt;
  std::size_t split = 1;  // first index of the upper cluster
  for (std::size_t k = 2; k < n; ++k) {
    if (frequencies_hz[k] - frequencies_hz[k - 1] >
        frequencies_hz[split] - frequencies_hz[split - 1]) {
      split = k;
    }
  }
  if (split < 2 || n - split < 2) return std::nullopt;
  const BandGap gap{frequencies_hz[split - 1], frequencies_hz[split],
                    frequencies_hz[split - 1] - frequencies_hz.front(),
                    frequencies_hz.back() - frequencies_hz[split]};
  const double width = gap.upper_edge_hz - gap.lower_edge_hz;
  if (width > gap.lower_spread_hz && width > gap.upper_spread_hz) return gap;
  return std::nullopt;
}

}  // namespace specmodes
