#include "parcoh/zlinalg.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "parcoh/error.hpp"

namespace parcoh {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::select_columns(std::span<const std::size_t> columns) const {
  IntegerMatrix out(rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (columns[k] >= cols_) throw Error(ErrorCode::DimensionMismatch, "column out of range");
      out(r, k) = (*this)(r, columns[k]);
    }
  return out;
}

IntegerMatrix IntegerMatrix::transposed() const {
  IntegerMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) swap((*this)(a, c), (*this)(b, c));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) swap((*this)(r, a), (*this)(r, b));
}

void IntegerMatrix::add_row_multiple(std::size_t target, std::size_t source,
                                     const Integer& factor) {
  for (std::size_t c = 0; c < cols_; ++c)
    if (sgn((*this)(source, c)) != 0) (*this)(target, c) += factor * (*this)(source, c);
}

void IntegerMatrix::add_col_multiple(std::size_t target, std::size_t source,
                                     const Integer& factor) {
  for (std::size_t r = 0; r < rows_; ++r)
    if (sgn((*this)(r, source)) != 0) (*this)(r, target) += factor * (*this)(r, source);
}

void IntegerMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
  IntegerMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<Integer> SmithDecomposition::invariants() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

namespace {

struct Pivot {
  std::size_t row, col;
};

// Least |entry| in D[t.., t..], ties to the lowest (row, col).
std::optional<Pivot> find_pivot(const IntegerMatrix& d, std::size_t t) {
  std::optional<Pivot> best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (sgn(d(i, j)) == 0) continue;
      if (!best || mpz_cmpabs(d(i, j).get_mpz_t(), d(best->row, best->col).get_mpz_t()) < 0) best = Pivot{i, j};
    }
  return best;
}

// Reduces `d` in place; row operations are mirrored on `p`, column
// operations on `q` when given.
std::size_t reduce(IntegerMatrix& d, IntegerMatrix* p, IntegerMatrix* q) {
  const std::size_t limit = std::min(d.rows(), d.cols());
  std::size_t t = 0;
  Integer quotient;
  for (; t < limit; ++t) {
    auto pivot = find_pivot(d, t);
    if (!pivot) break;
    for (;;) {
      d.swap_rows(t, pivot->row);
      if (p) p->swap_rows(t, pivot->row);
      d.swap_cols(t, pivot->col);
      if (q) q->swap_cols(t, pivot->col);

      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (sgn(d(i, t)) == 0) continue;
        mpz_tdiv_q(quotient.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        quotient = -quotient;
        d.add_row_multiple(i, t, quotient);
        if (p) p->add_row_multiple(i, t, quotient);
        clean = clean && sgn(d(i, t)) == 0;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (sgn(d(t, j)) == 0) continue;
        mpz_tdiv_q(quotient.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        quotient = -quotient;
        d.add_col_multiple(j, t, quotient);
        if (q) q->add_col_multiple(j, t, quotient);
        clean = clean && sgn(d(t, j)) == 0;
      }
      if (!clean) {
        // A nonzero remainder is smaller than the pivot, so this terminates.
        pivot = find_pivot(d, t);
        continue;
      }

      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < d.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            offending = i;
            break;
          }
      if (!offending) break;
      d.add_row_multiple(t, *offending, Integer(1));
      if (p) p->add_row_multiple(t, *offending, Integer(1));
      pivot = Pivot{t, t};
    }
    if (sgn(d(t, t)) < 0) {
      d.negate_row(t);
      if (p) p->negate_row(t);
    }
  }
  return t;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
  SmithDecomposition s{IntegerMatrix::identity(m.rows()), m, IntegerMatrix::identity(m.cols()),
                       0};
  s.rank = reduce(s.D, &s.P, &s.Q);
  return s;
}

std::vector<Integer> smith_invariants(const IntegerMatrix& m) {
  IntegerMatrix d = m;
  const std::size_t rank = reduce(d, nullptr, nullptr);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
  return out;
}

AbelianGroupStructure cokernel_structure(const IntegerMatrix& m, std::size_t ambient) {
  if (ambient != m.cols())
    throw Error(ErrorCode::DimensionMismatch,
                "ambient rank " + std::to_string(ambient) + " but matrix has " +
                    std::to_string(m.cols()) + " columns");
  IntegerMatrix d = m;
  const std::size_t rank = reduce(d, nullptr, nullptr);
  std::vector<std::int64_t> diagonal;
  for (std::size_t i = 0; i < rank; ++i) diagonal.push_back(to_int64(d(i, i)));
  return AbelianGroupStructure::canonical(ambient - rank, std::move(diagonal));
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && sgn(a(swap_with, k)) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), previous.get_mpz_t());
      }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw Error(ErrorCode::TooLarge, "integer exceeds int64");
  return value.get_si();
}

}  // namespace parcoh
