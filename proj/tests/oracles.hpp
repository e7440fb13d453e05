#pragma once

// Test-only reference computations. Nothing here evaluates the identity, and
// the one helper that uses the eigensolver verifies its output by residual.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "specmodes/matrix.hpp"
#include "specmodes/resonator.hpp"

namespace specmodes::testing {

/// det(A) by Gaussian elimination with partial pivoting.
inline double determinant(std::vector<double> a, std::size_t n) {
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      det = -det;
    }
    const double d = a[col * n + col];
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

/// Real roots of det(lambda I - A) for a matrix known to have n distinct real
/// eigenvalues: a sign-change scan over the Gershgorin interval, refined by
/// doubling the grid until n brackets appear, then bisection to machine
/// precision. Works on non-symmetric input (e.g. H = CM).
inline std::vector<double> characteristic_roots(const RealMatrix& a) {
  const std::size_t n = a.size();
  const double scale = a.max_abs();
  if (n == 0) return {};
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  std::vector<double> s(a.entries().begin(), a.entries().end());
  for (double& x : s) x /= scale;
  auto char_det = [&](double lambda) {
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n * n; ++i) m[i] = -s[i];
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += lambda;
    return determinant(std::move(m), n);
  };
  auto sign = [](double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); };

  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) radius += std::abs(s[i * n + j]);
    }
    lo = i == 0 ? s[i * n + i] - radius : std::min(lo, s[i * n + i] - radius);
    hi = i == 0 ? s[i * n + i] + radius : std::max(hi, s[i * n + i] + radius);
  }
  lo -= 1e-3;
  hi += 1e-3;

  for (std::size_t grid = 4096; grid <= (std::size_t{1} << 22); grid *= 2) {
    std::vector<std::pair<double, double>> brackets;
    double prev_x = lo;
    int prev_s = sign(char_det(lo));
    for (std::size_t k = 1; k <= grid; ++k) {
      const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid);
      const int sx = sign(char_det(x));
      if (sx == 0) continue;
      if (prev_s != 0 && sx != prev_s) brackets.emplace_back(prev_x, x);
      prev_x = x;
      prev_s = sx;
    }
    if (brackets.size() != n) continue;

    std::vector<double> roots;
    for (auto [a0, b0] : brackets) {
      const int sa = sign(char_det(a0));
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a0 + b0);
        if (mid <= a0 || mid >= b0) break;
        const int sm = sign(char_det(mid));
        if (sm == 0) {
          a0 = b0 = mid;
          break;
        }
        (sm == sa ? a0 : b0) = mid;
      }
      roots.push_back(0.5 * (a0 + b0) * scale);
    }
    return roots;
  }
  throw std::runtime_error("characteristic_roots: could not isolate all roots");
}

inline RealMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double x = u(rng);
      a(i, j) = x;
      a(j, i) = x;
    }
  }
  return a;
}

inline double min_relative_gap(const std::vector<double>& sorted) {
  if (sorted.size() < 2) return 1.0;
  const double range = sorted.back() - sorted.front();
  double gap = range;
  for (std::size_t k = 1; k < sorted.size(); ++k) gap = std::min(gap, sorted[k] - sorted[k - 1]);
  return range > 0.0 ? gap / range : 0.0;
}

/// Random physical array: n in [2, max_n], base frequencies 150-250 MHz,
/// |kappa_d| <= 0.25 / d^2 so that M stays diagonally dominant.
inline ArrayConfig random_config(std::mt19937_64& rng, std::size_t max_n = 8,
                                 bool palindromic = false) {
  std::uniform_int_distribution<std::size_t> size(2, max_n);
  std::uniform_real_distribution<double> freq(150e6, 250e6);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> induct(5e-8, 5e-7);
  ArrayConfig cfg;
  cfg.n = size(rng);
  cfg.inductance_h = induct(rng);
  cfg.base_frequencies_hz.resize(cfg.n);
  for (auto& f : cfg.base_frequencies_hz) f = freq(rng);
  if (palindromic) {
    for (std::size_t k = 0; k < cfg.n / 2; ++k) {
      cfg.base_frequencies_hz[cfg.n - 1 - k] = cfg.base_frequencies_hz[k];
    }
  }
  for (std::size_t d = 1; d < cfg.n; ++d) {
    cfg.coupling_coefficients.push_back(0.25 * unit(rng) / static_cast<double>(d * d));
  }
  return cfg;
}

/// Row-normalized |eigenvectors of CM| built as U = C^1/2 T, with every
/// column checked against CM u = lambda u directly.
inline RealMatrix residual_checked_cm_modes(const SystemMatrices& sys, double residual_tol,
                                            double* worst_residual = nullptr) {
  const std::size_t n = sys.c.size();
  RealMatrix root(n);
  for (std::size_t i = 0; i < n; ++i) root(i, i) = std::sqrt(sys.c(i, i));
  const SymEigenResult eig = sym_eigen(root * sys.m * root);
  const RealMatrix u = root * eig.vectors;
  const RealMatrix cm = sys.c * sys.m;
  double worst = 0.0;
  RealMatrix modes(n);
  for (std::size_t k = 0; k < n; ++k) {
    double unorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) unorm = std::hypot(unorm, u(i, k));
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += cm(i, j) * u(j, k);
      res = std::hypot(res, row - eig.values[k] * u(i, k));
    }
    worst = std::max(worst, res / (std::abs(eig.values[k]) * unorm));
    for (std::size_t i = 0; i < n; ++i) modes(k, i) = std::abs(u(i, k)) / unorm;
  }
  if (worst_residual) *worst_residual = worst;
  if (worst > residual_tol) throw std::runtime_error("CM eigenvector residual too large");
  return modes;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("specmodes_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace specmodes::testing
