#include <doctest.h>

#include "oracles.hpp"
#include "parcoh/cochain.hpp"
#include "parcoh/error.hpp"

using namespace parcoh;

TEST_CASE("coefficient arithmetic") {
  const auto z = CoefficientGroup::integers();
  CHECK_FALSE(z.is_finite());
  CHECK(z.add(3, -5) == -2);
  CHECK(z.neg(4) == -4);
  CHECK(z.scale(3, 2) == 6);

  const auto a = CoefficientGroup::finite({2, 3});
  REQUIRE(a.is_finite());
  CHECK(a.size() == 6);
  for (std::int64_t x = 0; x < 6; ++x) {
    CHECK(a.add(x, a.neg(x)) == 0);
    CHECK(a.scale(6, x) == 0);
    for (std::int64_t y = 0; y < 6; ++y) {
      CHECK(a.add(x, y) == a.add(y, x));
      CHECK(a.add(x, y) >= 0);
      CHECK(a.add(x, y) < 6);
    }
  }
  CHECK(a.structure().to_string() == "Z/6");
  CHECK(CoefficientGroup::from_structure(AbelianGroupStructure::integers()).is_finite() == false);
  CHECK_THROWS_AS(CoefficientGroup::from_structure(AbelianGroupStructure::canonical(1, {2})),
                  Error);
}

TEST_CASE("property: Z/k1 + Z/k2 addition matches componentwise arithmetic") {
  auto gen = oracle::rng(0x5eed0004);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t k1 = 1 + gen() % 5, k2 = 1 + gen() % 5;
    const auto a = CoefficientGroup::finite({k1, k2});
    auto split = [&](std::int64_t v) { return std::pair{v % k1, v / k1}; };
    for (int i = 0; i < 20; ++i) {
      const std::int64_t x = gen() % a.size(), y = gen() % a.size();
      const auto [x1, x2] = split(x);
      const auto [y1, y2] = split(y);
      const auto [s1, s2] = split(a.add(x, y));
      CHECK(s1 == (x1 + y1) % k1);
      CHECK(s2 == (x2 + y2) % k2);
    }
  }
}

TEST_CASE("epsilon is additive over Lambda") {
  for (const auto& g : {cyclic(6), symmetric(3), cyclic(4)}) {
    CAPTURE(g.name());
    const TruncatedExel s(g);
    const auto lambda = enumerate_lambda(s);
    const auto z = CoefficientGroup::integers();
    for (const auto& i : lambda)
      for (const auto& j : lambda)
        CHECK(epsilon(s, i).plus(epsilon(s, j), z) == epsilon(s, i.join(j)));
    const auto base = epsilon(s, Ideal::baseline(s));
    for (const auto& v : base.values()) CHECK(v == std::optional<std::int64_t>{0});
  }
}

TEST_CASE("coboundaries") {
  const auto g = cyclic(5);
  const auto a = CoefficientGroup::finite({5});
  PartialCochain zeta(5, 1);
  for (Elem x = 0; x < 5; ++x) zeta.at(x) = (3 * x + 1) % 5;
  const auto d = coboundary1(g, zeta, a);
  for (Elem x = 0; x < 5; ++x)
    for (Elem y = 0; y < 5; ++y) {
      const auto expected = a.add(a.sub(*zeta.at(y), *zeta.at(g.mul(x, y))), *zeta.at(x));
      CHECK(d.at(x, y) == expected);
      for (Elem w = 0; w < 5; ++w) CHECK(coboundary2_at(g, d, a, x, y, w) == 0);
    }
  PartialCochain partial(5, 2);
  partial.at(1, 2) = std::nullopt;
  CHECK_FALSE(coboundary2_at(g, partial, a, 1, 2, 3).has_value());
  CHECK(coboundary2_at(g, partial, a, 2, 2, 2) == 0);
}
