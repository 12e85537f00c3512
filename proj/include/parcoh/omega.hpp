#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "parcoh/exel.hpp"
#include "parcoh/group.hpp"

namespace parcoh {

using ElemPair = std::pair<Elem, Elem>;

enum class OmegaKind { Identity, InversePair, Generic };

const char* to_string(OmegaKind kind) noexcept;

struct OmegaClass {
  std::size_t id = 0;
  std::vector<ElemPair> members;  // sorted
  ElemPair representative;
  OmegaKind kind = OmegaKind::Generic;
  /// N_3 together with the principal ideal of Pi(representative). Unset for
  /// the identity class.
  std::optional<Ideal> pi_sim;
};

/// G x G modulo the relation generated by (g,1) ~ (1,1) ~ (1,g),
/// (g,g^-1) ~ (g^-1,g) and the S_3 orbits (g,h) ~ (h,h^-1 g^-1) ~ (h^-1,g^-1).
///
/// Classes are stored in column order: the identity class, then inverse-pair
/// classes, then generic classes, each block sorted by representative.
class OmegaDecomposition {
 public:
  OmegaDecomposition(std::vector<OmegaClass> classes, std::vector<std::size_t> class_of,
                     std::size_t group_order);

  std::size_t size() const { return classes_.size(); }
  const OmegaClass& operator[](std::size_t id) const { return classes_[id]; }
  const std::vector<OmegaClass>& classes() const { return classes_; }
  std::size_t class_of(Elem x, Elem y) const { return class_of_[x * n_ + y]; }
  const ElemPair& delta(std::size_t id) const { return classes_[id].representative; }

 private:
  std::vector<OmegaClass> classes_;
  std::vector<std::size_t> class_of_;
  std::size_t n_;
};

OmegaDecomposition omega_classes(const FiniteGroup& group, const TruncatedExel& semigroup);
OmegaDecomposition omega_classes(const FiniteGroup& group);

/// (n^2 + 2|G_(3)| + 3|G_(2)| + 5) / 6. Throws NonIntegral otherwise.
std::int64_t m_formula(const FiniteGroup& group);

/// Omega_I: the identity class plus every class whose principal ideal is not
/// contained in I. Sorted class ids. Throws ImproperIdeal.
std::vector<std::size_t> omega_restrict(const OmegaDecomposition& omega, const Ideal& ideal);

}  // namespace parcoh
