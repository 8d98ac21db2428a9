#pragma once

#include <cstdint>
#include <vector>

#include "fano/prime_field.hpp"

namespace fano {

/// Dense row-major matrix over F_p, sized rows x cols. Plain data plus
/// the handful of eliminations the rest of the library needs.
struct FpMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint32_t> data;

  FpMatrix() = default;
  FpMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  [[nodiscard]] std::uint32_t& at(int i, int j) {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
  [[nodiscard]] std::uint32_t at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
};

/// Reduce m to reduced row echelon form in place; returns the rank.
inline int rref_in_place(const PrimeField& field, FpMatrix& m) {
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot_row = -1;
    for (int r = rank; r < m.rows; ++r) {
      if (m.at(r, col) != 0) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row < 0) continue;
    if (pivot_row != rank) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot_row, j), m.at(rank, j));
    }
    const std::uint32_t scale = field.inv(m.at(rank, col));
    for (int j = col; j < m.cols; ++j) m.at(rank, j) = field.mul(m.at(rank, j), scale);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, col) == 0) continue;
      const std::uint32_t factor = m.at(r, col);
      for (int j = col; j < m.cols; ++j)
        m.at(r, j) = field.sub(m.at(r, j), field.mul(factor, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

[[nodiscard]] inline int matrix_rank(const PrimeField& field, FpMatrix m) {
  return rref_in_place(field, m);
}

/// Basis of the right kernel {v : m v = 0}, one column vector per basis
/// element. Used to manufacture linear forms vanishing on a row space.
[[nodiscard]] inline std::vector<std::vector<std::uint32_t>> kernel_basis(
    const PrimeField& field, FpMatrix m) {
  const int rank = rref_in_place(field, m);
  std::vector<int> pivot_col_of_row(rank, -1);
  std::vector<bool> is_pivot(m.cols, false);
  for (int r = 0; r < rank; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (m.at(r, c) != 0) {
        pivot_col_of_row[r] = c;
        is_pivot[c] = true;
        break;
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> basis;
  for (int free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<std::uint32_t> v(m.cols, 0);
    v[free_col] = 1;
    for (int r = 0; r < rank; ++r)
      v[pivot_col_of_row[r]] = field.neg(m.at(r, free_col));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace fano
