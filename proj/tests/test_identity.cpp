#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "specmodes/error.hpp"
#include "specmodes/formats.hpp"
#include "specmodes/identity.hpp"

using namespace specmodes;
using specmodes::testing::characteristic_roots;
using specmodes::testing::min_relative_gap;
using specmodes::testing::random_config;
using specmodes::testing::random_symmetric;

namespace {

const std::filesystem::path kConfigs{SPECMODES_CONFIG_DIR};

struct ExactSpectra {
  Spectrum full;
  SubspectraSet subs;
};

ExactSpectra spectra_of(const RealMatrix& a) {
  ExactSpectra s{Spectrum{sym_eigen(a).values}, {}};
  for (std::size_t j = 0; j < a.size(); ++j) {
    s.subs.by_deletion.push_back(Spectrum{sym_eigen(principal_submatrix(a, j)).values});
  }
  return s;
}

// Random symmetric matrix whose eigenvalues are not closer than 1e-3 of the
// spectral range.
RealMatrix well_separated(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    RealMatrix a = random_symmetric(rng, n);
    if (min_relative_gap(sym_eigen(a).values) > 1e-3) return a;
  }
}

ModeMatrix eigenvector_magnitudes(const RealMatrix& a) {
  const auto vectors = sym_eigen(a).vectors;
  ModeMatrix m{RealMatrix(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) m.magnitudes(i, j) = std::abs(vectors(j, i));
  }
  return m;
}

template <typename Fn>
ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

}  // namespace

TEST(ThompsonModes, SingleElementHasUnitMode) {
  const ModeMatrix m = thompson_modes(Spectrum{{3.0}}, SubspectraSet{{Spectrum{}}});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m(0, 0), 1.0);
}

TEST(ThompsonModes, SwapMatrixHasEqualMagnitudes) {
  const ModeMatrix m = thompson_modes(Spectrum{{-1.0, 1.0}},
                                      SubspectraSet{{Spectrum{{0.0}}, Spectrum{{0.0}}}});
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(m(i, j) * m(i, j), 0.5, 1e-15);
  }
}

TEST(ThompsonModes, MatchesEigenvectorsOfRandomFiveByFive) {
  std::mt19937_64 rng(5);
  const RealMatrix a = random_symmetric(rng, 5);
  const auto s = spectra_of(a);
  const ModeMatrix m = thompson_modes(s.full, s.subs);
  EXPECT_LE(max_abs_difference(m.magnitudes, eigenvector_magnitudes(a).magnitudes), 1e-8);
}

TEST(ThompsonModes, OracleEquivalenceAndDoublyStochastic) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const RealMatrix a = well_separated(rng, n);
    const auto s = spectra_of(a);
    const ModeMatrix m = thompson_modes(s.full, s.subs);
    EXPECT_LE(max_abs_difference(m.magnitudes, eigenvector_magnitudes(a).magnitudes), 1e-8);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row += m(i, j) * m(i, j);
        col += m(j, i) * m(j, i);
      }
      EXPECT_NEAR(row, 1.0, 1e-8);
      EXPECT_NEAR(col, 1.0, 1e-8);
    }
  }
}

// Rescaling rounds every input eigenvalue, and that rounding reaches a
// component of size |v| amplified by roughly 1/|v|; inputs are therefore
// restricted to modes without components below 1e-3.
TEST(ThompsonModes, ScaleCovariance) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; checked < 50; ++trial) {
    const auto s = spectra_of(well_separated(rng, 2 + trial % 7));
    const ModeMatrix base = thompson_modes(s.full, s.subs);
    const auto entries = base.magnitudes.entries();
    if (*std::min_element(entries.begin(), entries.end()) < 1e-3) continue;
    ++checked;
    for (double scale : {1e-15, 1e-3, 7.5, 1e15}) {
      ExactSpectra scaled = s;
      for (double& v : scaled.full.values) v *= scale;
      for (auto& sub : scaled.subs.by_deletion) {
        for (double& v : sub.values) v *= scale;
      }
      const ModeMatrix m = thompson_modes(scaled.full, scaled.subs);
      EXPECT_LE(max_abs_difference(m.magnitudes, base.magnitudes), 1e-12);
    }
  }
}

TEST(ThompsonModes, LogSpaceSurvivesPhysicalEigenvalueRange) {
  // 30 eigenvalues in [1e-19, 1e-18] s^2: a naive product of 29 such
  // differences underflows to zero.
  std::mt19937_64 rng(4);
  const std::size_t n = 30;
  const RealMatrix q = sym_eigen(random_symmetric(rng, n)).vectors;
  std::vector<double> lambdas(n);
  for (std::size_t k = 0; k < n; ++k) lambdas[k] = 1e-19 + 9e-19 * static_cast<double>(k) / (n - 1);
  RealMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) a(i, j) += q(i, k) * lambdas[k] * q(j, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
  }
  const auto s = spectra_of(a);
  const ModeMatrix m = thompson_modes(s.full, s.subs);
  for (double v : m.magnitudes.entries()) ASSERT_TRUE(std::isfinite(v));
  EXPECT_LE(max_abs_difference(m.magnitudes, eigenvector_magnitudes(a).magnitudes), 1e-8);
}

TEST(ThompsonModes, ExactZeroFactorGivesZeroComponent) {
  const Spectrum full{{1.0, 2.0, 3.0}};
  const SubspectraSet subs{{Spectrum{{1.0, 2.5}}, Spectrum{{1.5, 2.5}}, Spectrum{{1.5, 2.5}}}};
  const ModeMatrix m = thompson_modes(full, subs);
  EXPECT_EQ(m(0, 0), 0.0);
  EXPECT_GT(m(1, 0), 0.0);
}

TEST(ThompsonModes, TinyNegativeValuesAreThresholdedToZero) {
  const Spectrum full{{1.0, 2.0, 3.0}};
  const SubspectraSet subs{
      {Spectrum{{1.0 - 1e-12, 2.5}}, Spectrum{{1.5, 2.5}}, Spectrum{{1.5, 2.5}}}};
  EXPECT_EQ(thompson_modes(full, subs)(0, 0), 0.0);
  // With a threshold below the value the negative square is reported.
  EXPECT_EQ(error_code_of([&] { thompson_modes(full, subs, 1e-14); }),
            ErrorCode::NegativeSquaredComponent);
}

TEST(ThompsonModes, NegativeSquaredComponentCarriesLocation) {
  const Spectrum full{{1.0, 2.0, 3.0}};
  const SubspectraSet subs{{Spectrum{{1.5, 2.5}}, Spectrum{{0.5, 2.5}}, Spectrum{{1.5, 2.5}}}};
  try {
    thompson_modes(full, subs);
    ADD_FAILURE();
  } catch (const NegativeSquaredComponent& e) {
    EXPECT_EQ(e.mode(), 0u);
    EXPECT_EQ(e.component(), 1u);
    // (1 - 0.5)(1 - 2.5) / ((1 - 2)(1 - 3))
    EXPECT_DOUBLE_EQ(e.value(), -0.375);
  }
}

TEST(ThompsonModes, DegenerateSpectrumRejected) {
  const SubspectraSet subs{{Spectrum{{1.0, 1.5}}, Spectrum{{1.0, 1.5}}, Spectrum{{1.0, 1.5}}}};
  EXPECT_EQ(error_code_of([&] { thompson_modes(Spectrum{{1.0, 1.0, 2.0}}, subs); }),
            ErrorCode::DegenerateSpectrum);
  EXPECT_EQ(error_code_of([&] { thompson_modes(Spectrum{{1.0, 1.0 + 1e-12, 2.0}}, subs); }),
            ErrorCode::DegenerateSpectrum);
  EXPECT_EQ(error_code_of([&] {
              thompson_modes(Spectrum{{2.0, 2.0}}, SubspectraSet{{Spectrum{{2.0}}, Spectrum{{2.0}}}});
            }),
            ErrorCode::DegenerateSpectrum);
}

TEST(ThompsonModes, ShapeErrors) {
  EXPECT_EQ(error_code_of([] { thompson_modes(Spectrum{}, SubspectraSet{}); }),
            ErrorCode::ShapeMismatch);
  EXPECT_EQ(error_code_of([] {
              thompson_modes(Spectrum{{1.0, 2.0}}, SubspectraSet{{Spectrum{{1.5}}}});
            }),
            ErrorCode::ShapeMismatch);
  EXPECT_EQ(error_code_of([] {
              thompson_modes(Spectrum{{2.0, 1.0}},
                             SubspectraSet{{Spectrum{{1.5}}, Spectrum{{1.5}}}});
            }),
            ErrorCode::InvalidSpectrum);
}

TEST(HermitianEquivalent, IdentityCapacitanceReturnsM) {
  const RealMatrix m(2, {1.0, 0.3, 0.3, 1.0});
  EXPECT_EQ(hermitian_equivalent(SystemMatrices{RealMatrix::identity(2), m, m}), m);
}

TEST(HermitianEquivalent, TwoByTwo) {
  const RealMatrix c = RealMatrix::diagonal(std::vector<double>{4.0, 1.0});
  const RealMatrix m(2, {1.0, 0.5, 0.5, 1.0});
  EXPECT_EQ(hermitian_equivalent(SystemMatrices{c, m, c * m}), RealMatrix(2, {4.0, 1.0, 1.0, 1.0}));
}

TEST(HermitianEquivalent, IsospectralWithCM) {
  const SystemMatrices sys = build_matrices(read_config(kConfigs / "dimeric.json"));
  const RealMatrix h = hermitian_equivalent(sys);
  EXPECT_LE(max_abs_difference(h, h.transposed()), 1e-13 * h.max_abs());
  const auto roots = characteristic_roots(sys.h);
  const auto values = sym_eigen(h).values;
  for (std::size_t k = 0; k < values.size(); ++k) EXPECT_NEAR(values[k] / roots[k], 1.0, 1e-10);
}

TEST(CorrectNonHermitian, IdentityCapacitanceIsNoOp) {
  std::mt19937_64 rng(2);
  const auto s = spectra_of(well_separated(rng, 4));
  const ModeMatrix t = normalize_rows(thompson_modes(s.full, s.subs));
  EXPECT_LE(max_abs_difference(correct_nonhermitian(t, RealMatrix::identity(4)).magnitudes,
                               t.magnitudes),
            1e-15);
}

TEST(CorrectNonHermitian, BasisRowsAreScaleInvariant) {
  const ModeMatrix t{RealMatrix::identity(2)};
  const ModeMatrix u = correct_nonhermitian(t, RealMatrix::diagonal(std::vector<double>{4.0, 1.0}));
  EXPECT_EQ(u.magnitudes, RealMatrix::identity(2));
}

TEST(CorrectNonHermitian, ScalesComponentsBySqrtCapacitance) {
  const ModeMatrix t{RealMatrix(2, {1.0, 1.0, 1.0, 1.0})};
  const ModeMatrix u = correct_nonhermitian(t, RealMatrix::diagonal(std::vector<double>{4.0, 1.0}));
  // (2, 1) / sqrt(5)
  EXPECT_NEAR(u(0, 0), 2.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(u(1, 1), 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(CorrectNonHermitian, RecoversModesOfDimericCM) {
  const SystemMatrices sys = build_matrices(read_config(kConfigs / "dimeric.json"));
  const auto s = spectra_of(hermitian_equivalent(sys));
  const ModeMatrix u = correct_nonhermitian(thompson_modes(s.full, s.subs), sys.c);
  const RealMatrix oracle = specmodes::testing::residual_checked_cm_modes(sys, 1e-9);
  EXPECT_LE(max_abs_difference(u.magnitudes, oracle), 1e-8);
}

TEST(CorrectNonHermitian, RecoversModesOfRandomConfigs) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const SystemMatrices sys = build_matrices(random_config(rng));
    const auto s = spectra_of(hermitian_equivalent(sys));
    if (min_relative_gap(s.full.values) < 1e-4) continue;
    const ModeMatrix u = correct_nonhermitian(thompson_modes(s.full, s.subs), sys.c);
    const RealMatrix oracle = specmodes::testing::residual_checked_cm_modes(sys, 1e-9);
    EXPECT_LE(max_abs_difference(u.magnitudes, oracle), 1e-8);
  }
}

TEST(CorrectNonHermitian, Errors) {
  const ModeMatrix t{RealMatrix::identity(2)};
  EXPECT_EQ(error_code_of([&] { correct_nonhermitian(t, RealMatrix::identity(3)); }),
            ErrorCode::ShapeMismatch);
  EXPECT_EQ(error_code_of([&] { correct_nonhermitian(t, RealMatrix(2, {1, 1, 0, 1})); }),
            ErrorCode::NotDiagonal);
}
