#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specmodes {

/// Dense real square matrix, row-major. A 0x0 matrix is a valid value.
class RealMatrix {
 public:
  RealMatrix() = default;
  /// n x n zero matrix.
  explicit RealMatrix(std::size_t n);
  /// Takes ownership of n*n row-major entries; throws ShapeMismatch or
  /// NonFinite.
  RealMatrix(std::size_t n, std::vector<double> entries);

  static RealMatrix identity(std::size_t n);
  static RealMatrix diagonal(std::span<const double> diag);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }
  double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  std::span<const double> entries() const noexcept { return data_; }

  double max_abs() const noexcept;
  bool is_diagonal() const noexcept;
  RealMatrix transposed() const;

  bool operator==(const RealMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

RealMatrix operator*(const RealMatrix& lhs, const RealMatrix& rhs);

/// Largest entrywise |a - b|; the matrices must have equal size.
double max_abs_difference(const RealMatrix& a, const RealMatrix& b);

struct SymEigenResult {
  std::vector<double> values;  // ascending
  RealMatrix vectors;          // column k pairs with values[k]
};

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// The input must satisfy max|a_jk - a_kj| <= symmetry_tol * max|a|
/// (NotSymmetric otherwise); it is symmetrized by averaging before
/// iterating. Each eigenvector column is signed so that its largest-magnitude
/// entry is positive, the lowest index winning ties. Throws DidNotConverge
/// after 100 sweeps.
SymEigenResult sym_eigen(const RealMatrix& a, double symmetry_tol = 1e-12);

/// Copy of `a` with row and column `j` (0-based) removed.
RealMatrix principal_submatrix(const RealMatrix& a, std::size_t j);

/// Elementwise power of a diagonal matrix with positive diagonal.
RealMatrix diag_power(const RealMatrix& c, double p);

}  // namespace specmodes
