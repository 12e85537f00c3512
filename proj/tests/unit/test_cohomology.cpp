#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "parcoh/cohomology.hpp"
#include "parcoh/constructions.hpp"
#include "parcoh/error.hpp"
#include "parcoh/io.hpp"

using namespace parcoh;

namespace {

oracle::Rows rows_of(const IntegerMatrix& m) {
  oracle::Rows r(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j).get_si();
  return r;
}

}  // namespace

TEST_CASE("Z_6 coboundary matrix") {
  const CohomologyEngine e(cyclic(6));
  const IntegerMatrix expected{{1, -1, -1, -1, 0, 0, 0, 0},  {0, 1, 0, 0, 2, 1, 1, 0},
                               {0, 0, 1, 0, -1, 1, 0, 2},    {0, 0, 0, 2, 0, -1, 1, 0},
                               {0, 0, 1, 0, 0, 0, -1, -1},   {0, 1, 0, 0, 0, 0, 0, 0}};
  CHECK(e.matrix() == expected);
  const auto report = e.pre_cohomology(AbelianGroupStructure::integers());
  CHECK(report.mu == std::vector<std::int64_t>{1, 1, 1, 1, 1, 6});
  CHECK(report.m_I == 8);
  CHECK(report.n_I == 6);
  CHECK(report.structure.to_string() == "Z^2 + Z/6");
}

TEST_CASE("Z_6 relative groups") {
  const CohomologyEngine e(cyclic(6));
  const auto z = AbelianGroupStructure::integers();
  const auto a = e.partial_cohomology(e.ideal_from_tuples({{1, 2}, {1, 3}}), z);
  REQUIRE(a.mu.size() >= 2);
  CHECK(a.mu[a.mu.size() - 2] == 2);
  CHECK(a.mu.back() == 6);
  CHECK(a.structure.to_string() == "Z/2 + Z/6");
  CHECK(a.ideal_generators == std::vector<std::vector<Elem>>{{1, 2}, {1, 3}});
  const auto b = e.partial_cohomology(e.ideal_from_tuples({{2, 4}, {3, 3}}), z);
  CHECK(b.structure.to_string() == "0");
  CHECK_THROWS_AS(e.ideal_from_tuples({{9}}), Error);
}

TEST_CASE("matrix invariants: column sums, rank, SNF oracle") {
  for (const auto& g : builtin_catalog(16)) {
    CAPTURE(g.name());
    const CohomologyEngine e(g);
    const auto& m = e.matrix();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Integer sum = 0;
      for (std::size_t r = 0; r < m.rows(); ++r) sum += m(r, c);
      CHECK(sum == 1);
    }
    const auto report = e.pre_cohomology(AbelianGroupStructure::integers());
    CHECK(report.n_I == g.order());
    CHECK(static_cast<std::int64_t>(report.m_I) == m_formula(g));
    CHECK(report.integral.torsion == abelianization(g).torsion);
    if (g.order() <= 5) {
      std::vector<std::int64_t> expected;
      for (const auto& d : oracle::determinantal_invariants(rows_of(m)))
        expected.push_back(d.get_si());
      CHECK(report.mu == expected);
    }
  }
}

TEST_CASE("coefficient specialization") {
  const std::vector<std::int64_t> mu{1, 1, 2, 6};
  CHECK(specialize_coefficients(2, mu, AbelianGroupStructure::integers()).to_string() ==
        "Z^2 + Z/2 + Z/6");
  CHECK(specialize_coefficients(2, mu, AbelianGroupStructure::canonical(0, {4})).to_string() ==
        "Z/2 + Z/2 + Z/4 + Z/4");
  CHECK(specialize_coefficients(2, mu, AbelianGroupStructure::canonical(0, {3})).to_string() ==
        "Z/3 + Z/3 + Z/3");
  const auto div = specialize_coefficients(2, mu, AbelianGroupStructure::divisible_group());
  CHECK(div.divisible);
  CHECK(div.torsion.empty());
  CHECK(div.free_rank == 2);
  CHECK(specialize_coefficients(1, {}, parse_coefficients("Z^2+Z/4")).to_string() ==
        "Z^2 + Z/4");
}

TEST_CASE("semilattice of Z_6") {
  const CohomologyEngine e(cyclic(6));
  const auto lat = e.semilattice(AbelianGroupStructure::integers());
  REQUIRE(lat.nodes.size() == 28);
  CHECK(lat.edges.size() == 56);
  CHECK(lat.nodes.front().report.structure.to_string() == "Z^2 + Z/6");
  std::map<std::size_t, std::string> principal;
  for (const auto& n : lat.nodes)
    if (n.principal_of) principal[*n.principal_of] = n.report.structure.to_string(true);
  const std::map<std::size_t, std::string> expected{{1, "Z/6"},     {2, "Z/2"},     {3, "Z/6"},
                                                    {4, "Z+Z/6"},   {5, "Z+Z/6"},   {6, "Z+Z/6"},
                                                    {7, "Z+Z/6"}};
  CHECK(principal == expected);
  CHECK(lat.nodes.back().report.structure.to_string() == "0");
  const auto threaded = e.semilattice(AbelianGroupStructure::integers(), 10000, 4);
  for (std::size_t i = 0; i < lat.nodes.size(); ++i)
    CHECK(threaded.nodes[i].report.mu == lat.nodes[i].report.mu);
}

TEST_CASE("property: SNF pipeline agrees with the brute-force oracle") {
  for (const auto& g : builtin_catalog(4)) {
    CAPTURE(g.name());
    const CohomologyEngine e(g);
    for (const auto& ideal : enumerate_lambda(e.semigroup())) {
      for (std::int64_t k : {2, 3}) {
        const auto coeff = AbelianGroupStructure::canonical(0, {k});
        const auto fast = e.partial_cohomology(ideal, coeff).structure;
        const auto slow = brute_force_h2(e.semigroup(), e.omega(), ideal,
                                         CoefficientGroup::finite({k}));
        CHECK(fast == slow);
      }
    }
  }
}

TEST_CASE("divisible coefficients are torsion-free everywhere") {
  for (const auto& g : builtin_catalog(6)) {
    const CohomologyEngine e(g);
    for (const auto& node : e.semilattice(AbelianGroupStructure::divisible_group()).nodes)
      CHECK(node.report.structure.torsion.empty());
  }
}
