#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parcoh {

/// Dense element index. Index 0 is always the identity.
using Elem = std::uint32_t;

/// Finitely generated abelian group, free part plus invariant factors.
///
/// With `divisible` set, `free_rank` counts copies of a divisible group such
/// as K^x for algebraically closed K, and `torsion` is empty.
struct AbelianGroupStructure {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;
  bool divisible = false;

  /// Canonical form of Z^free + Z/c1 + Z/c2 + ... for arbitrary cyclic
  /// orders c_i >= 1: torsion in divisibility order with the 1s dropped.
  static AbelianGroupStructure canonical(std::size_t free_rank,
                                         std::vector<std::int64_t> cyclic_orders,
                                         bool divisible = false);

  static AbelianGroupStructure integers() { return {1, {}, false}; }
  static AbelianGroupStructure divisible_group() { return {1, {}, true}; }

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }

  /// Order of a finite group; throws TooLarge past 2^62.
  std::uint64_t order() const;

  /// "Z^2 + Z/6", "Kx^3", "0". With `compact`, no spaces around '+'.
  std::string to_string(bool compact = false) const;

  friend bool operator==(const AbelianGroupStructure&,
                         const AbelianGroupStructure&) = default;
};

/// Normalizes cyclic orders into a divisibility chain (each entry divides
/// the next) with the same direct sum; entries equal to 1 are removed.
std::vector<std::int64_t> invariant_factors(std::vector<std::int64_t> cyclic_orders);

/// A finite group given by its multiplication table.
///
/// Immutable after construction. Elements are indices 0..n-1 and index 0 is
/// the identity; tables supplied with the identity elsewhere are re-indexed.
class FiniteGroup {
 public:
  /// Validates a Cayley table (row i, column j holds g_i * g_j).
  /// Throws NoIdentity, NoInverse, NotAssociative or BadParams.
  static FiniteGroup from_cayley_table(const std::vector<std::vector<Elem>>& table,
                                       std::string name = "table");

  std::size_t order() const { return n_; }
  Elem mul(Elem a, Elem b) const { return table_[a * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  std::uint32_t element_order(Elem a) const { return orders_[a]; }
  std::span<const std::uint32_t> orders() const { return orders_; }
  bool is_abelian() const;

  std::vector<std::vector<Elem>> cayley_table() const;
  const std::string& name() const { return name_; }

 private:
  FiniteGroup() = default;

  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<std::uint32_t> orders_;
  std::string name_;
};

FiniteGroup cyclic(std::size_t n);
/// Dihedral group of order 2n.
FiniteGroup dihedral(std::size_t n);
/// Symmetric group on n points, order n!.
FiniteGroup symmetric(std::size_t n);
FiniteGroup quaternion();
/// Z/k1 x Z/k2 x ...
FiniteGroup abelian(std::span<const std::size_t> moduli);

/// Builtin family by name: "cyclic", "dihedral", "symmetric",
/// "quaternion", "abelian". Throws UnknownFamily or BadParams.
FiniteGroup builtin(std::string_view family, std::span<const std::size_t> params);

/// One representative per builtin family member of order <= max_order
/// (isomorphic duplicates across families are kept).
std::vector<FiniteGroup> builtin_catalog(std::size_t max_order);

/// Number of elements of order exactly k.
std::size_t order_census(const FiniteGroup& group, std::uint32_t k);

/// [G,G] as a sorted list of element indices.
std::vector<Elem> commutator_subgroup(const FiniteGroup& group);

/// Invariant factors of G/[G,G], through the relation matrix of the quotient.
AbelianGroupStructure abelianization(const FiniteGroup& group);

}  // namespace parcoh
