#include "parcoh/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <numeric>
#include <sstream>

#include "parcoh/error.hpp"
#include "parcoh/zlinalg.hpp"

namespace parcoh {

namespace {

constexpr std::size_t kMaxBuiltinOrder = 2048;

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  const __int128 l = static_cast<__int128>(a / g) * b;
  if (l > INT64_MAX) throw Error(ErrorCode::TooLarge, "invariant factor overflows int64");
  return static_cast<std::int64_t>(l);
}

std::string join_params(std::span<const std::size_t> params) {
  std::ostringstream os;
  for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
  return os.str();
}

FiniteGroup from_product_rule(std::size_t n, std::string name,
                              const std::function<Elem(Elem, Elem)>& rule) {
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[a][b] = rule(a, b);
  return FiniteGroup::from_cayley_table(table, std::move(name));
}

void check_builtin_order(std::size_t n, const char* family) {
  if (n == 0 || n > kMaxBuiltinOrder)
    throw Error(ErrorCode::BadParams, std::string(family) + ": order " + std::to_string(n) +
                                          " outside 1.." + std::to_string(kMaxBuiltinOrder));
}

}  // namespace

// --- AbelianGroupStructure ---------------------------------------------------

std::vector<std::int64_t> invariant_factors(std::vector<std::int64_t> cyclic_orders) {
  for (auto c : cyclic_orders)
    if (c < 1) throw Error(ErrorCode::BadParams, "cyclic order must be positive");
  auto& a = cyclic_orders;
  // (a_i, a_j) -> (gcd, lcm) leaves the direct sum unchanged; after pass i,
  // a_i divides every later entry.
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const std::int64_t g = std::gcd(a[i], a[j]);
      const std::int64_t l = checked_lcm(a[i], a[j]);
      a[i] = g;
      a[j] = l;
    }
  }
  std::erase(a, 1);
  return a;
}

AbelianGroupStructure AbelianGroupStructure::canonical(std::size_t free_rank,
                                                       std::vector<std::int64_t> cyclic_orders,
                                                       bool divisible) {
  AbelianGroupStructure s;
  s.free_rank = free_rank;
  s.divisible = divisible;
  if (!divisible) s.torsion = invariant_factors(std::move(cyclic_orders));
  return s;
}

std::uint64_t AbelianGroupStructure::order() const {
  if (free_rank != 0) throw Error(ErrorCode::TooLarge, "group is infinite");
  unsigned __int128 total = 1;
  for (auto t : torsion) {
    total *= static_cast<unsigned __int128>(t);
    if (total > (static_cast<unsigned __int128>(1) << 62))
      throw Error(ErrorCode::TooLarge, "group order exceeds 2^62");
  }
  return static_cast<std::uint64_t>(total);
}

std::string AbelianGroupStructure::to_string(bool compact) const {
  if (is_trivial()) return "0";
  const char* sep = compact ? "+" : " + ";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << (divisible ? "Kx" : "Z");
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (auto t : torsion) {
    if (!first) os << sep;
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

// --- FiniteGroup --------------------------------------------------------------

FiniteGroup FiniteGroup::from_cayley_table(const std::vector<std::vector<Elem>>& table,
                                           std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorCode::BadParams, "empty Cayley table");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n)
      throw Error(ErrorCode::BadParams, "row " + std::to_string(i) + " has length " +
                                            std::to_string(table[i].size()) + ", expected " +
                                            std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] >= n)
        throw Error(ErrorCode::BadParams, "entry (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") out of range");
  }

  std::optional<Elem> identity;
  for (Elem e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorCode::NoIdentity, "no two-sided identity in table");

  // Relocate the identity to index 0 by swapping it with element 0.
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[0], perm[*identity]);

  FiniteGroup g;
  g.n_ = n;
  g.name_ = std::move(name);
  g.table_.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) g.table_[perm[a] * n + perm[b]] = perm[table[a][b]];

  g.inv_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    std::optional<Elem> inverse;
    for (Elem b = 0; b < n && !inverse; ++b)
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) inverse = b;
    if (!inverse) {
      // Report in the caller's numbering.
      throw Error(ErrorCode::NoInverse,
                  "element " + std::to_string(perm[a]) + " has no two-sided inverse");
    }
    g.inv_[a] = *inverse;
  }

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const Elem ab = g.mul(a, b);
      for (Elem c = 0; c < n; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c)))
          throw Error(ErrorCode::NotAssociative,
                      "(" + std::to_string(perm[a]) + "," + std::to_string(perm[b]) + "," +
                          std::to_string(perm[c]) + ") violates associativity");
      }
    }

  g.orders_.assign(n, 1);
  for (Elem a = 1; a < n; ++a) {
    Elem p = a;
    std::uint32_t k = 1;
    while (p != 0) {
      p = g.mul(p, a);
      ++k;
    }
    g.orders_[a] = k;
  }
  return g;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::vector<Elem>> FiniteGroup::cayley_table() const {
  std::vector<std::vector<Elem>> t(n_, std::vector<Elem>(n_));
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return t;
}

// --- builtin families ---------------------------------------------------------

FiniteGroup cyclic(std::size_t n) {
  check_builtin_order(n, "cyclic");
  return from_product_rule(n, "cyclic:" + std::to_string(n),
                           [n](Elem a, Elem b) { return static_cast<Elem>((a + b) % n); });
}

FiniteGroup dihedral(std::size_t n) {
  check_builtin_order(2 * n, "dihedral");
  // r^k s^f  <->  k + n f
  return from_product_rule(2 * n, "dihedral:" + std::to_string(n), [n](Elem p, Elem q) {
    const std::size_t a = p % n, x = p / n, b = q % n, y = q / n;
    const std::size_t k = x == 0 ? (a + b) % n : (a + n - b) % n;
    return static_cast<Elem>(k + n * ((x + y) % 2));
  });
}

FiniteGroup symmetric(std::size_t n) {
  if (n == 0 || n > 6) throw Error(ErrorCode::BadParams, "symmetric: degree must be in 1..6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Elem> index;
  for (Elem i = 0; i < perms.size(); ++i) index.emplace(perms[i], i);
  // (s t)(i) = s(t(i))
  return from_product_rule(perms.size(), "symmetric:" + std::to_string(n), [&](Elem a, Elem b) {
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
    return index.at(c);
  });
}

FiniteGroup quaternion() {
  // index = 2 * unit + sign, units 1, i, j, k; sign 1 means negated.
  static constexpr int unit_product[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int unit_sign[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  return from_product_rule(8, "quaternion", [](Elem a, Elem b) {
    const int u = a / 2, v = b / 2;
    const int sign = (a % 2) ^ (b % 2) ^ unit_sign[u][v];
    return static_cast<Elem>(2 * unit_product[u][v] + sign);
  });
}

FiniteGroup abelian(std::span<const std::size_t> moduli) {
  if (moduli.empty()) throw Error(ErrorCode::BadParams, "abelian: need at least one modulus");
  std::size_t n = 1;
  for (auto k : moduli) {
    if (k == 0) throw Error(ErrorCode::BadParams, "abelian: moduli must be positive");
    n *= k;
    check_builtin_order(n, "abelian");
  }
  std::vector<std::size_t> mods(moduli.begin(), moduli.end());
  return from_product_rule(n, "abelian:" + join_params(moduli), [mods](Elem a, Elem b) {
    std::size_t result = 0, stride = 1;
    for (auto k : mods) {
      result += ((a / stride % k + b / stride % k) % k) * stride;
      stride *= k;
    }
    return static_cast<Elem>(result);
  });
}

FiniteGroup builtin(std::string_view family, std::span<const std::size_t> params) {
  auto single = [&](const char* what) {
    if (params.size() != 1)
      throw Error(ErrorCode::BadParams, std::string(what) + " takes exactly one parameter");
    return params[0];
  };
  if (family == "cyclic") return cyclic(single("cyclic"));
  if (family == "dihedral") return dihedral(single("dihedral"));
  if (family == "symmetric") return symmetric(single("symmetric"));
  if (family == "quaternion") {
    if (!params.empty() && !(params.size() == 1 && params[0] == 8))
      throw Error(ErrorCode::BadParams, "quaternion group has order 8 only");
    return quaternion();
  }
  if (family == "abelian") return abelian(params);
  throw Error(ErrorCode::UnknownFamily, "unknown group family '" + std::string(family) + "'");
}

std::vector<FiniteGroup> builtin_catalog(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= max_order; ++n) out.push_back(cyclic(n));
  for (std::size_t n = 1; 2 * n <= max_order; ++n) out.push_back(dihedral(n));
  std::size_t fact = 1;
  for (std::size_t n = 1; n <= 6; ++n) {
    fact *= n;
    if (fact <= max_order) out.push_back(symmetric(n));
  }
  if (max_order >= 8) out.push_back(quaternion());
  // Non-cyclic abelian groups by invariant factors d1 | d2 | ... (d1 >= 2).
  std::vector<std::size_t> chain;
  std::function<void(std::size_t)> extend = [&](std::size_t product) {
    if (chain.size() >= 2) out.push_back(abelian(chain));
    const std::size_t last = chain.empty() ? 1 : chain.back();
    for (std::size_t d = chain.empty() ? 2 : last; product * d <= max_order; d += last) {
      if (d % last != 0) continue;
      chain.push_back(d);
      extend(product * d);
      chain.pop_back();
    }
  };
  extend(1);
  return out;
}

// --- census and abelianization -------------------------------------------------

std::size_t order_census(const FiniteGroup& group, std::uint32_t k) {
  const auto orders = group.orders();
  return static_cast<std::size_t>(std::count(orders.begin(), orders.end(), k));
}

std::vector<Elem> commutator_subgroup(const FiniteGroup& group) {
  const std::size_t n = group.order();
  std::vector<bool> in(n, false);
  std::vector<Elem> members;
  auto add = [&](Elem x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  add(0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      add(group.mul(group.mul(group.inv(a), group.inv(b)), group.mul(a, b)));
  // Close under multiplication; finite, so this is the generated subgroup.
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      add(group.mul(members[i], members[j]));
      add(group.mul(members[j], members[i]));
    }
  std::sort(members.begin(), members.end());
  return members;
}

AbelianGroupStructure abelianization(const FiniteGroup& group) {
  const std::size_t n = group.order();
  const auto commutators = commutator_subgroup(group);

  // Cosets of [G,G]; normal, so left cosets suffice.
  std::vector<std::size_t> coset(n, SIZE_MAX);
  std::vector<Elem> reps;
  for (Elem a = 0; a < n; ++a) {
    if (coset[a] != SIZE_MAX) continue;
    for (Elem c : commutators) coset[group.mul(a, c)] = reps.size();
    reps.push_back(a);
  }
  const std::size_t q = reps.size();

  // Presentation of the quotient: generators e_a, relations e_a + e_b - e_ab.
  IntegerMatrix relations(q * q, q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      const std::size_t ab = coset[group.mul(reps[a], reps[b])];
      const std::size_t row = a * q + b;
      relations(row, a) += 1;
      relations(row, b) += 1;
      relations(row, ab) -= 1;
    }
  auto result = cokernel_structure(relations, q);
  if (result.free_rank != 0)
    throw Error(ErrorCode::InternalMismatch, "abelianization of a finite group has free part");
  return result;
}

}  // namespace parcoh
