#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "parcoh/exel.hpp"
#include "parcoh/group.hpp"

namespace parcoh {

/// Concrete coefficient group: either Z, or a finite Z/k1 + ... + Z/kr whose
/// elements are encoded as mixed-radix integers in [0, |A|).
class CoefficientGroup {
 public:
  using value_type = std::int64_t;

  static CoefficientGroup integers();
  static CoefficientGroup finite(std::vector<std::int64_t> moduli);
  /// Z, or a finite group; throws BadParams for anything else.
  static CoefficientGroup from_structure(const AbelianGroupStructure& structure);

  bool is_finite() const { return finite_; }
  /// |A|; only for finite groups.
  std::uint64_t size() const { return size_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  AbelianGroupStructure structure() const;

  value_type zero() const { return 0; }
  value_type add(value_type a, value_type b) const;
  value_type neg(value_type a) const;
  value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }
  value_type scale(std::int64_t k, value_type a) const;
  /// Image of 1 in the first cyclic factor (1 for Z).
  value_type unit() const;
  /// The i-th element in encoding order (finite groups only).
  value_type element(std::uint64_t i) const { return static_cast<value_type>(i); }

 private:
  bool finite_ = false;
  std::vector<std::int64_t> moduli_;
  std::uint64_t size_ = 0;
};

/// A map G^arity -> A u {inf}; nullopt encodes inf.
class PartialCochain {
 public:
  using Value = std::optional<std::int64_t>;

  PartialCochain() = default;
  PartialCochain(std::size_t group_order, std::size_t arity, Value fill = 0);

  std::size_t group_order() const { return n_; }
  std::size_t arity() const { return arity_; }

  Value& at(Elem x) { return values_[x]; }
  const Value& at(Elem x) const { return values_[x]; }
  Value& at(Elem x, Elem y) { return values_[x * n_ + y]; }
  const Value& at(Elem x, Elem y) const { return values_[x * n_ + y]; }

  std::span<const Value> values() const { return values_; }
  std::span<Value> values() { return values_; }

  /// Pointwise sum; inf absorbs.
  PartialCochain plus(const PartialCochain& other, const CoefficientGroup& coeff) const;

  friend bool operator==(const PartialCochain&, const PartialCochain&) = default;
  friend bool operator<(const PartialCochain& a, const PartialCochain& b) {
    return a.values_ < b.values_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t arity_ = 0;
  std::vector<Value> values_;
};

/// epsilon_I: 0 off I, inf on the pairs with Pi(g,h) in I.
PartialCochain epsilon(const TruncatedExel& semigroup, const Ideal& ideal);

/// delta^1 zeta (g,h) = zeta(h) - zeta(gh) + zeta(g).
PartialCochain coboundary1(const FiniteGroup& group, const PartialCochain& zeta,
                           const CoefficientGroup& coeff);

/// delta^2 sigma (x,y,z) = sigma(y,z) - sigma(xy,z) + sigma(x,yz) - sigma(x,y);
/// nullopt when any term is inf.
std::optional<std::int64_t> coboundary2_at(const FiniteGroup& group, const PartialCochain& sigma,
                                           const CoefficientGroup& coeff, Elem x, Elem y, Elem z);

}  // namespace parcoh
