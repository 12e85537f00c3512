#include <doctest.h>

#include "oracles.hpp"
#include "parcoh/error.hpp"
#include "parcoh/zlinalg.hpp"

using namespace parcoh;

namespace {

IntegerMatrix from_rows(const oracle::Rows& rows) {
  IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

oracle::Rows random_rows(std::mt19937_64& gen, std::size_t rows, std::size_t cols, long span) {
  oracle::Rows m(rows, std::vector<long>(cols));
  for (auto& row : m)
    for (auto& x : row) x = static_cast<long>(gen() % (2 * span + 1)) - span;
  return m;
}

bool is_diagonal_chain(const IntegerMatrix& d, std::size_t rank) {
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (r != c && d(r, c) != 0) return false;
      if (r == c && r < rank && d(r, c) <= 0) return false;
      if (r == c && r >= rank && d(r, c) != 0) return false;
    }
  for (std::size_t i = 1; i < rank; ++i)
    if (d(i, i) % d(i - 1, i - 1) != 0) return false;
  return true;
}

void check_against_oracle(const oracle::Rows& rows) {
  const IntegerMatrix m = from_rows(rows);
  const auto snf = smith_normal_form(m);
  CHECK(snf.P * m * snf.Q == snf.D);
  CHECK(is_diagonal_chain(snf.D, snf.rank));
  CHECK(determinant(snf.P) * determinant(snf.P) == 1);
  CHECK(determinant(snf.Q) * determinant(snf.Q) == 1);
  const auto expected = oracle::determinantal_invariants(rows);
  CHECK(snf.invariants() == expected);
  CHECK(smith_invariants(m) == expected);
}

}  // namespace

TEST_CASE("smith form of small fixed matrices") {
  check_against_oracle({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  check_against_oracle({{0, 0}, {0, 0}});
  check_against_oracle({{6}});
  check_against_oracle({{1, -1, -1, -1, 0, 0, 0, 0},
                        {0, 1, 0, 0, 1, 1, 1, 0},
                        {0, 0, 1, 0, -1, 1, 0, 2},
                        {0, 0, 0, 2, 0, -1, 1, -1},
                        {0, 0, 1, 0, 0, 0, -1, 0},
                        {0, 1, 0, 0, 0, 0, 0, 0}});
  const auto d = smith_invariants(from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 2);
  CHECK(d[1] == 6);
  CHECK(d[2] == 12);
}

TEST_CASE("property: smith form agrees with determinantal divisors") {
  auto gen = oracle::rng(0x5eed0002);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + gen() % 5, cols = 1 + gen() % 5;
    auto m = random_rows(gen, rows, cols, trial % 3 == 0 ? 2 : 9);
    if (trial % 5 == 0 && rows > 1) m[rows - 1] = m[0];
    CAPTURE(trial);
    check_against_oracle(m);
  }
}

TEST_CASE("determinant matches Laplace expansion") {
  auto gen = oracle::rng(0x5eed0003);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const auto m = random_rows(gen, n, n, 7);
    CHECK(determinant(from_rows(m)) == oracle::laplace_det(m));
  }
  CHECK_THROWS_AS(determinant(IntegerMatrix(2, 3)), Error);
}

TEST_CASE("cokernel structure") {
  CHECK(cokernel_structure(from_rows({{2, 0}, {0, 3}}), 2).to_string() == "Z/6");
  CHECK(cokernel_structure(from_rows({{2, 4}}), 2).to_string() == "Z + Z/2");
  CHECK(cokernel_structure(IntegerMatrix(0, 3), 3).to_string() == "Z^3");
}

TEST_CASE("matrix helpers") {
  IntegerMatrix m{{1, 2, 3}, {4, 5, 6}};
  const std::vector<std::size_t> cols{2, 0};
  CHECK(m.select_columns(cols) == IntegerMatrix{{3, 1}, {6, 4}});
  CHECK(m.transposed() == IntegerMatrix{{1, 4}, {2, 5}, {3, 6}});
  CHECK(IntegerMatrix::identity(2) * m == m);
  CHECK_THROWS_AS(m * m, Error);
  CHECK(to_int64(Integer(-42)) == -42);
  Integer big("123456789012345678901234567890");
  CHECK_THROWS_AS(to_int64(big), Error);
}
