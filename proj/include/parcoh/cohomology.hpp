#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parcoh/exel.hpp"
#include "parcoh/group.hpp"
#include "parcoh/omega.hpp"
#include "parcoh/zlinalg.hpp"

namespace parcoh {

/// Integral data of H^2(G, I; Z) together with its specialization to A.
struct CohomologyReport {
  std::string group;
  std::vector<std::vector<Elem>> ideal_generators;
  std::size_t m_I = 0;
  std::size_t n_I = 0;
  /// Nonzero Smith invariants of M_I, 1s included.
  std::vector<std::int64_t> mu;
  AbelianGroupStructure integral;
  AbelianGroupStructure coefficients;
  AbelianGroupStructure structure;
};

/// Entry (i, j) = h_i(y) - h_i(xy) + h_i(x) for (x, y) = Delta(omega_j).
/// Rows follow element order, columns the canonical class order.
IntegerMatrix coboundary_matrix(const FiniteGroup& group, const OmegaDecomposition& omega);

/// A^free_count + A/mu_1 A + ... in canonical form. For A = Z/k the quotient
/// A/mu A is Z/gcd(k, mu); divisible A kills every quotient.
AbelianGroupStructure specialize_coefficients(std::size_t free_count,
                                              const std::vector<std::int64_t>& mu,
                                              const AbelianGroupStructure& coefficients);

struct SemilatticeNode {
  Ideal ideal;
  CohomologyReport report;
  /// Index of the class omega when ideal = Pi_~(omega).
  std::optional<std::size_t> principal_of;
};

struct Semilattice {
  std::vector<SemilatticeNode> nodes;
  /// (i, j): nodes[i].ideal is covered by nodes[j].ideal.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Shared per-group data: E(G) mod N_3, Omega and the coboundary matrix.
/// Immutable once built; every query is a pure function of it.
class CohomologyEngine {
 public:
  explicit CohomologyEngine(FiniteGroup group);

  const FiniteGroup& group() const { return group_; }
  const TruncatedExel& semigroup() const { return semigroup_; }
  const OmegaDecomposition& omega() const { return omega_; }
  const IntegerMatrix& matrix() const { return matrix_; }

  /// Ideal from generator tuples, e.g. {{1,2},{1,3}}.
  Ideal ideal_from_tuples(const std::vector<std::vector<Elem>>& tuples) const;

  /// pH^2(G, A). Cross-checks the torsion against G/[G,G] and the rank
  /// against |G|; throws InternalMismatch on disagreement.
  CohomologyReport pre_cohomology(const AbelianGroupStructure& coefficients) const;

  /// H^2(G, I; A). Throws ImproperIdeal.
  CohomologyReport partial_cohomology(const Ideal& ideal,
                                      const AbelianGroupStructure& coefficients) const;

  /// Every ideal of Lambda with its report, and the Hasse covers.
  /// Reports are computed on up to `threads` workers and merged in
  /// canonical ideal order.
  Semilattice semilattice(const AbelianGroupStructure& coefficients,
                          std::optional<std::size_t> cap = 10000,
                          unsigned threads = 1) const;

  /// Generator tuples of an ideal, as element-index tuples.
  std::vector<std::vector<Elem>> generator_tuples(const Ideal& ideal) const;

 private:
  FiniteGroup group_;
  TruncatedExel semigroup_;
  OmegaDecomposition omega_;
  IntegerMatrix matrix_;
};

CohomologyReport pre_cohomology(const FiniteGroup& group, const AbelianGroupStructure& coefficients);

}  // namespace parcoh
