#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "parcoh/group.hpp"

namespace parcoh {

using Integer = mpz_class;

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntegerMatrix select_columns(std::span<const std::size_t> columns) const;
  IntegerMatrix transposed() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t r);

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// D = P * M * Q with P, Q unimodular and D diagonal, d1 | d2 | ... | d_rank.
struct SmithDecomposition {
  IntegerMatrix P;
  IntegerMatrix D;
  IntegerMatrix Q;
  std::size_t rank = 0;

  /// The nonzero diagonal entries d_1..d_rank.
  std::vector<Integer> invariants() const;
};

/// Smith normal form with transforms. Pivot is the nonzero entry of least
/// absolute value in the active submatrix, ties to the lowest (row, col).
SmithDecomposition smith_normal_form(const IntegerMatrix& m);

/// Nonzero diagonal of the Smith form, without transforms.
std::vector<Integer> smith_invariants(const IntegerMatrix& m);

/// Z^ambient / rowspan(m). `ambient` must equal m.cols().
AbelianGroupStructure cokernel_structure(const IntegerMatrix& m, std::size_t ambient);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntegerMatrix& m);

/// Integer as int64, throws TooLarge when it does not fit.
std::int64_t to_int64(const Integer& value);

}  // namespace parcoh
