#include "fsr/linalg.hpp"

#include <stdexcept>

namespace fsr::linalg {

RationalMatrix RationalMatrix::hconcat(const RationalMatrix& other) const {
  if (other.rows_ != rows_) throw std::invalid_argument("hconcat: row counts differ");
  RationalMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
  }
  return out;
}

std::size_t rank(RationalMatrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = m.rows();
    for (std::size_t r = rank; r < m.rows(); ++r) {
      if (sgn(m(r, col)) == 0) continue;
      if (pivot == m.rows() || mpz_cmpabs(m(r, col).get_num_mpz_t(), m(pivot, col).get_num_mpz_t()) > 0) pivot = r;
    }
    if (pivot == m.rows()) continue;
    if (pivot != rank)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(pivot, c), m(rank, c));
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (sgn(m(r, col)) == 0) continue;
      const mpq_class factor = m(r, col) / m(rank, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace fsr::linalg
