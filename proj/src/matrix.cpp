#include "specmodes/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specmodes/error.hpp"

namespace specmodes {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergenceRatio = 1e-14;

void require_same_size(const RealMatrix& a, const RealMatrix& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix sizes " + std::to_string(a.size()) + " and " +
                                              std::to_string(b.size()) + " differ");
  }
}

double off_diagonal_norm(const RealMatrix& a) {
  double sum = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (std::size_t q = 0; q < a.size(); ++q) {
      if (p != q) sum += a(p, q) * a(p, q);
    }
  }
  return std::sqrt(sum);
}

double diagonal_norm(const RealMatrix& a) {
  double sum = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) sum += a(p, p) * a(p, p);
  return std::sqrt(sum);
}

// Zeroes a(p,q) by a plane rotation, accumulating it into v.
void rotate(RealMatrix& a, RealMatrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::hypot(t, 1.0);
  const double s = t * c;
  const std::size_t n = a.size();

  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

RealMatrix::RealMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

RealMatrix::RealMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n_ * n_) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(n_ * n_) +
                                              " entries, got " + std::to_string(data_.size()));
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); })) {
    throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
  }
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::diagonal(std::span<const double> diag) {
  RealMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

double RealMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (double x : data_) best = std::max(best, std::abs(x));
  return best;
}

bool RealMatrix::is_diagonal() const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && (*this)(i, j) != 0.0) return false;
    }
  }
  return true;
}

RealMatrix RealMatrix::transposed() const {
  RealMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RealMatrix operator*(const RealMatrix& lhs, const RealMatrix& rhs) {
  require_same_size(lhs, rhs);
  const std::size_t n = lhs.size();
  RealMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double lik = lhs(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lik * rhs(k, j);
    }
  }
  return out;
}

double max_abs_difference(const RealMatrix& a, const RealMatrix& b) {
  require_same_size(a, b);
  double best = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return best;
}

SymEigenResult sym_eigen(const RealMatrix& a, double symmetry_tol) {
  const std::size_t n = a.size();
  const double scale = a.max_abs();
  RealMatrix work(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const double asym = std::abs(a(j, k) - a(k, j));
      if (asym > symmetry_tol * scale) {
        throw Error(ErrorCode::NotSymmetric, "entries (" + std::to_string(j + 1) + "," +
                                                 std::to_string(k + 1) + ") differ by " +
                                                 std::to_string(asym));
      }
      const double mean = 0.5 * (a(j, k) + a(k, j));
      work(j, k) = mean;
      work(k, j) = mean;
    }
  }

  RealMatrix vectors = RealMatrix::identity(n);
  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(work) <= kConvergenceRatio * diagonal_norm(work)) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(work, vectors, p, q);
    }
  }
  if (!converged) {
    throw Error(ErrorCode::DidNotConverge,
                "Jacobi iteration exceeded " + std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return work(x, x) < work(y, y); });

  SymEigenResult result;
  result.values.resize(n);
  result.vectors = RealMatrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    result.values[col] = work(src, src);
    std::size_t pivot = 0;
    for (std::size_t row = 1; row < n; ++row) {
      if (std::abs(vectors(row, src)) > std::abs(vectors(pivot, src))) pivot = row;
    }
    const double sign = vectors(pivot, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t row = 0; row < n; ++row) result.vectors(row, col) = sign * vectors(row, src);
  }
  return result;
}

RealMatrix principal_submatrix(const RealMatrix& a, std::size_t j) {
  const std::size_t n = a.size();
  if (j >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(j) + " outside matrix of size " + std::to_string(n));
  }
  RealMatrix out(n - 1);
  for (std::size_t r = 0, ro = 0; r < n; ++r) {
    if (r == j) continue;
    for (std::size_t c = 0, co = 0; c < n; ++c) {
      if (c == j) continue;
      out(ro, co++) = a(r, c);
    }
    ++ro;
  }
  return out;
}

RealMatrix diag_power(const RealMatrix& c, double p) {
  if (!c.is_diagonal()) throw Error(ErrorCode::NotDiagonal, "diag_power needs a diagonal matrix");
  RealMatrix out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c(i, i) > 0.0)) {
      throw Error(ErrorCode::NonPositiveDiagonal,
                  "diagonal entry " + std::to_string(i + 1) + " is not positive");
    }
    out(i, i) = p == 0.5 ? std::sqrt(c(i, i)) : std::pow(c(i, i), p);
  }
  return out;
}

}  // namespace specmodes
