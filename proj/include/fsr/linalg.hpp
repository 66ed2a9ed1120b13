#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace fsr::linalg {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Appends the columns of `other` (same row count) on the right.
  RationalMatrix hconcat(const RationalMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

/// Exact rank by Gaussian elimination. In each column the pivot is the row whose
/// entry has the largest absolute numerator (lowest row index on ties), which keeps
/// coefficient growth down and makes the elimination order deterministic.
std::size_t rank(RationalMatrix m);

}  // namespace fsr::linalg
