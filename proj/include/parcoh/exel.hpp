#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "parcoh/group.hpp"

namespace parcoh {

/// A pair (R, g) of the Birget-Rhodes expansion: R is a finite subset of G
/// containing the identity and g. `domain` is kept sorted.
struct ExelElement {
  std::vector<Elem> domain;
  Elem g = 0;

  friend auto operator<=>(const ExelElement&, const ExelElement&) = default;
};

using ElementId = std::uint32_t;
using JClassId = std::uint32_t;

/// Absorbing element of the truncated semigroup (everything with |R| >= 4).
inline constexpr ElementId kZero = 0xffffffffu;

/// E(G) modulo N_3: all (R, g) with |R| <= 3 plus a zero.
///
/// Element 0 is the monoid identity ({1}, 1). J-classes are computed by
/// closing each element under left and right multiplication by the
/// generators Pi(g) and comparing principal ideals.
class TruncatedExel {
 public:
  explicit TruncatedExel(const FiniteGroup& group);

  const FiniteGroup& group() const { return group_; }

  /// Number of nonzero elements.
  std::size_t size() const { return elements_.size(); }
  const ExelElement& element(ElementId id) const { return elements_[id]; }

  /// Id of (R, g), kZero when |R| >= 4. Throws BadParams when the pair is
  /// not an element (R missing 1 or g).
  ElementId find(const ExelElement& element) const;

  ElementId multiply(ElementId a, ElementId b) const;
  /// (g^-1 R, g^-1)
  ElementId inverse(ElementId a) const;
  ElementId identity() const { return 0; }
  bool is_idempotent(ElementId a) const { return a != kZero && elements_[a].g == 0; }

  /// Pi(g_1) ... Pi(g_k); an empty list gives the identity.
  ElementId pi(std::span<const Elem> gs) const;
  ElementId pi(std::initializer_list<Elem> gs) const {
    return pi(std::span<const Elem>(gs.begin(), gs.size()));
  }

  JClassId jclass_of(ElementId id) const { return jclass_of_[id]; }
  std::size_t jclass_count() const { return jclasses_.size(); }
  std::span<const ElementId> jclass_members(JClassId j) const { return jclasses_[j]; }
  JClassId identity_jclass() const { return jclass_of_[0]; }

  /// J-classes contained in the principal ideal of any member of `j`
  /// (including `j` itself).
  const boost::dynamic_bitset<>& principal_jclasses(JClassId j) const {
    return principal_[j];
  }
  /// a <= b in the ideal order: J_a lies in the principal ideal of J_b.
  bool below(JClassId a, JClassId b) const { return principal_[b].test(a); }

  /// Nonzero elements of the principal ideal <x>.
  boost::dynamic_bitset<> principal_ideal(ElementId x) const;

 private:
  std::uint64_t key(std::span<const Elem> domain, Elem g) const;

  FiniteGroup group_;
  std::vector<ExelElement> elements_;
  std::unordered_map<std::uint64_t, ElementId> index_;
  std::vector<ElementId> generators_;
  std::vector<JClassId> jclass_of_;
  std::vector<std::vector<ElementId>> jclasses_;
  std::vector<boost::dynamic_bitset<>> principal_;
};

TruncatedExel build_truncated_exel(const FiniteGroup& group);

/// <a> = <b> decided from the pairs alone: b = (x^-1 R, x^-1 y) for some
/// x, y in R. Independent of the closure-based J-classes.
bool jclass_equal(const FiniteGroup& group, const ExelElement& a, const ExelElement& b);

/// An ideal of E(G) containing N_3, stored as the set of J-classes it
/// contains beyond N_3. The zero always belongs to it.
class Ideal {
 public:
  Ideal() = default;
  Ideal(boost::dynamic_bitset<> jclasses, bool proper)
      : jclasses_(std::move(jclasses)), proper_(proper) {}

  /// N_3 itself.
  static Ideal baseline(const TruncatedExel& semigroup);

  const boost::dynamic_bitset<>& jclasses() const { return jclasses_; }
  bool proper() const { return proper_; }
  bool contains_jclass(JClassId j) const { return jclasses_.test(j); }
  bool contains(const TruncatedExel& semigroup, ElementId x) const {
    return x == kZero || jclasses_.test(semigroup.jclass_of(x));
  }
  std::size_t jclass_count() const { return jclasses_.count(); }
  std::vector<JClassId> jclass_list() const;

  bool subset_of(const Ideal& other) const { return jclasses_.is_subset_of(other.jclasses_); }
  Ideal join(const Ideal& other) const;

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.jclasses_ == b.jclasses_; }
  /// Canonical order: by J-class count, then by the sorted J-class list.
  friend bool operator<(const Ideal& a, const Ideal& b);

 private:
  boost::dynamic_bitset<> jclasses_;
  bool proper_ = true;
};

/// Smallest ideal containing N_3 and the generators. Zero generators are
/// accepted and contribute nothing.
Ideal ideal_closure(const TruncatedExel& semigroup, std::span<const ElementId> generators);

/// Throws ImproperIdeal unless the ideal lies in Lambda.
const Ideal& require_proper(const Ideal& ideal);

/// All proper ideals containing N_3, in canonical order (a linear extension
/// of inclusion). Throws CapExceeded past `cap` ideals.
std::vector<Ideal> enumerate_lambda(const TruncatedExel& semigroup,
                                    std::optional<std::size_t> cap = 10000);

/// Cover relation of (Lambda, subset): pairs (i, j) with lambda[i] covered
/// by lambda[j].
std::vector<std::pair<std::size_t, std::size_t>> lambda_covers(const std::vector<Ideal>& lambda);

/// Minimal generating set of an ideal: one representative element per
/// maximal J-class.
std::vector<ElementId> ideal_generators(const TruncatedExel& semigroup, const Ideal& ideal);

std::string to_string(const ExelElement& element);

}  // namespace parcoh
