#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parcoh/cochain.hpp"
#include "parcoh/exel.hpp"
#include "parcoh/group.hpp"
#include "parcoh/omega.hpp"

namespace parcoh {

// ---------------------------------------------------------------------------
// Pre-cocycles

/// Builds the pre-cocycle sigma with sigma o Delta = f (f indexed by class
/// id). Degenerate classes are filled first, then each generic orbit from
/// its representative. Throws InternalMismatch if two orbit formulas assign
/// different values to the same pair.
PartialCochain reconstruct_precocycle(const FiniteGroup& group, const OmegaDecomposition& omega,
                                      std::span<const std::int64_t> f,
                                      const CoefficientGroup& coeff);

/// The relative cocycle sigma' + epsilon_I for f given on Omega_I (in the
/// order returned by omega_restrict); classes outside Omega_I get 0.
PartialCochain reconstruct_relative_cocycle(const TruncatedExel& semigroup,
                                            const OmegaDecomposition& omega, const Ideal& ideal,
                                            std::span<const std::int64_t> f_on_restriction,
                                            const CoefficientGroup& coeff);

struct CocycleCheck {
  bool ok = true;
  /// First failing triple, or for pattern failures (g, h, 0).
  std::optional<std::array<Elem, 3>> witness;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Weak cocycle condition: delta^2 sigma (x,y,z) = 0 whenever
/// 1 in {x, y, z, xy, yz, xyz}. sigma must be finite everywhere.
CocycleCheck is_precocycle(const FiniteGroup& group, const PartialCochain& sigma,
                           const CoefficientGroup& coeff);

/// The three equivalent characterizations of a pre-cocycle evaluated
/// separately: (i) weak cocycle condition, (ii) the condition restricted to
/// 1 in {xy, xyz}, (iii) the two orbit relations a and b.
struct PrecocycleCharacterization {
  CocycleCheck weak;
  CocycleCheck restricted;
  CocycleCheck orbit_relations;
  bool consistent() const {
    return weak.ok == restricted.ok && restricted.ok == orbit_relations.ok;
  }
};
PrecocycleCharacterization characterize_precocycle(const FiniteGroup& group,
                                                   const PartialCochain& sigma,
                                                   const CoefficientGroup& coeff);

/// Membership in Z^2(G, I; A): sigma(g,h) = inf exactly when Pi(g,h) in I,
/// and delta^2 sigma (x,y,z) = 0 (all terms finite) when Pi(x,y,z) not in I.
CocycleCheck is_relative_cocycle(const TruncatedExel& semigroup, const Ideal& ideal,
                                 const PartialCochain& sigma, const CoefficientGroup& coeff);

/// B^2(G, I; A) = { delta^1 zeta + epsilon_I }, enumerated over all zeta.
std::vector<PartialCochain> enumerate_relative_coboundaries(const TruncatedExel& semigroup,
                                                            const Ideal& ideal,
                                                            const CoefficientGroup& coeff);

/// Z^2(G, I; A), enumerated through A^{Omega_I}.
std::vector<PartialCochain> enumerate_relative_cocycles(const TruncatedExel& semigroup,
                                                        const OmegaDecomposition& omega,
                                                        const Ideal& ideal,
                                                        const CoefficientGroup& coeff);

/// Maximum number of maps the brute-force routines will enumerate.
inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

/// Independent oracle for H^2(G, I; A), A finite: enumerates cocycles and
/// coboundaries, forms the quotient explicitly and reads its invariant
/// factors off element orders. Uses no Smith normal form. Throws TooLarge.
AbelianGroupStructure brute_force_h2(const TruncatedExel& semigroup,
                                     const OmegaDecomposition& omega, const Ideal& ideal,
                                     const CoefficientGroup& coeff);

/// Structure of Z/B for a finite group of cocycles Z and subgroup B, read off
/// the census of element orders in the quotient (p-ranks of p^k-torsion).
AbelianGroupStructure finite_quotient_structure(const std::vector<PartialCochain>& cocycles,
                                                const std::vector<PartialCochain>& coboundaries,
                                                const CoefficientGroup& coeff);

/// Whether mu -> mu + [epsilon_I] maps H^2(G, J; A) onto H^2(G, I u J; A),
/// checked class by class. Throws TooLarge.
bool natural_surjection_check(const TruncatedExel& semigroup, const OmegaDecomposition& omega,
                              const CoefficientGroup& coeff, const Ideal& i, const Ideal& j);

// ---------------------------------------------------------------------------
// Central extension monoid

/// (A x (E(G) \ I)) u {inf} with
///   (a, R, x)(b, S, y) = (a + b + sigma(x,y), R u xS, xy)  if not in I,
/// inf otherwise. A must be finite.
class ExtensionMonoid {
 public:
  using Id = std::uint32_t;
  static constexpr Id kInfinity = 0xffffffffu;

  struct Entry {
    std::int64_t a;
    ElementId x;
  };

  ExtensionMonoid(const TruncatedExel& semigroup, const Ideal& ideal, PartialCochain sigma,
                  CoefficientGroup coeff);

  std::size_t size() const { return entries_.size() + 1; }
  std::size_t nonzero_size() const { return entries_.size(); }
  const Entry& entry(Id id) const { return entries_[id]; }
  Id id_of(std::int64_t a, ElementId x) const;

  Id multiply(Id p, Id q) const;
  /// (-sigma(1,1), Pi(1))
  Id identity() const;
  /// Central copy of A: a -> (a - sigma(1,1), Pi(1)).
  Id embed(std::int64_t a) const;
  /// phi(g) = (-sigma(1,1), Pi(g)), or inf when Pi(g) in I.
  Id section(Elem g) const;

  const PartialCochain& sigma() const { return sigma_; }
  const CoefficientGroup& coefficients() const { return coeff_; }
  const TruncatedExel& semigroup() const { return *semigroup_; }
  const std::vector<ElementId>& base() const { return base_; }

  struct Verification {
    bool associative = true;
    bool identity = true;
    bool central = true;
    bool cancellative = true;
    bool embedding_homomorphic = true;
    bool section_left = true;
    bool section_right = true;
    std::string detail;
    bool ok() const {
      return associative && identity && central && cancellative && embedding_homomorphic &&
             section_left && section_right;
    }
  };

  /// Exhaustive checks: associativity, identity, A central and cancellative,
  /// and the maps recovered from both section equations equal
  /// sigma - sigma(1,1) (see recover_sigma).
  Verification verify() const;

  /// The map t solving, for every (g, h),
  ///   phi(g^-1) phi(g) phi(h) = phi(g^-1) phi(gh) t(g,h)   (left), or
  ///   phi(g) phi(h) phi(h^-1) = phi(gh) phi(h^-1) t(g,h)   (right),
  /// with t(g,h) in A embedded centrally; inf where the left side is inf.
  /// Found by search over A, so it relies on cancellativity only. Throws
  /// InternalMismatch when no solution exists.
  PartialCochain recover_sigma(bool right_equation) const;

 private:
  const TruncatedExel* semigroup_;
  PartialCochain sigma_;
  CoefficientGroup coeff_;
  std::vector<ElementId> base_;          // nonzero elements outside I
  std::vector<std::int64_t> base_of_;    // ElementId -> position in base_, -1 if in I
  std::vector<Entry> entries_;
};

/// Builds and verifies the extension; throws NotACocycle when associativity
/// fails (sigma is not a relative cocycle).
ExtensionMonoid build_extension(const TruncatedExel& semigroup, const Ideal& ideal,
                                const PartialCochain& sigma, const CoefficientGroup& coeff);

/// Checks that (a, R, x) -> (a + zeta(x), R, x) is an isomorphism
/// E_{sigma + delta zeta} -> E_sigma fixing A.
bool verify_coboundary_isomorphism(const ExtensionMonoid& shifted, const ExtensionMonoid& base,
                                   const PartialCochain& zeta);

/// Searches for an equivalence E1 -> E2 of the form (a, X) -> (a + c(X), X)
/// by assigning c on the generators Pi(g) and propagating. Returns the
/// 1-cochain g -> c(Pi(g)) when found. Throws TooLarge when the number of
/// assignments exceeds kEnumerationLimit.
std::optional<PartialCochain> find_extension_equivalence(const ExtensionMonoid& e1,
                                                         const ExtensionMonoid& e2);

// ---------------------------------------------------------------------------
// Partial G-module

/// B = (A x idempotents of E(G) \ I) u {inf}, with the partial action
/// theta_g(a, e) = (a, Pi(g) e Pi(g^-1)) on B_{g^-1} = B e_{g^-1}.
class PartialModule {
 public:
  using Id = std::uint32_t;
  static constexpr Id kInfinity = 0xffffffffu;

  PartialModule(const TruncatedExel& semigroup, const Ideal& ideal, CoefficientGroup coeff);

  std::size_t size() const { return entries_.size() + 1; }
  std::int64_t value(Id id) const { return entries_[id].a; }
  ElementId idempotent(Id id) const { return entries_[id].x; }
  Id id_of(std::int64_t a, ElementId idempotent) const;

  Id multiply(Id p, Id q) const;
  /// (0, Pi(1))
  Id identity() const;
  /// (0, Pi(g, g^-1)) if Pi(g) not in I, inf otherwise.
  Id e(Elem g) const;
  bool in_domain(Elem g, Id x) const;  // x in B_g
  /// theta_g on B_{g^-1}; nullopt outside the domain.
  std::optional<Id> theta(Elem g, Id x) const;
  /// Inverse of a unit inside the ideal it generates: (a, e) -> (-a, e).
  Id unit_inverse(Id x) const;

  /// (0, Pi(x1, ..., xn, (x1...xn)^-1)) or inf: identity of B_(x1,...,xn).
  Id tuple_identity(std::span<const Elem> xs) const;

  struct ActionVerification {
    bool commutative_monoid = true;
    bool bijections = true;
    bool inverse_maps = true;
    bool unital = true;
    bool theta_identity = true;
    bool composition = true;
    bool multiplicative = true;
    std::string detail;
    bool ok() const {
      return commutative_monoid && bijections && inverse_maps && unital && theta_identity &&
             composition && multiplicative;
    }
  };
  ActionVerification verify_action() const;

  /// B-valued n-cochain for n = 1, 2 stored by tuple; kInfinity marks inf.
  using ModuleCochain = std::vector<Id>;

  ModuleCochain lift(const PartialCochain& projected) const;
  PartialCochain project(const ModuleCochain& sigma, std::size_t arity) const;

  /// Partial-module coboundaries for n = 1, 2:
  ///   (d f)(x1..x_{n+1}) = theta_{x1}(e_{x1^-1} f(x2..)) * prod_i f(..x_i x_{i+1}..)^{(-1)^i}
  ///                        * f(x1..xn)^{(-1)^{n+1}}
  ModuleCochain coboundary(const ModuleCochain& f, std::size_t arity) const;

  struct CorrespondenceReport {
    std::size_t cochains2 = 0;
    std::size_t z2_module = 0;
    std::size_t z2_relative = 0;
    std::size_t b2_module = 0;
    std::size_t b2_relative = 0;
    bool infinity_pattern = true;   // C^2(G,B) inf pattern = epsilon_I pattern
    bool z2_agrees = true;          // sigma in Z^2(G,B) <=> sigma-bar in Z^2(G,I;A)
    bool b2_agrees = true;          // projected B^2(G,B) = B^2(G,I;A)
    bool projection_formula = true; // d^n sigma projects to (d^n sigma-bar, eta)
    std::string detail;
    bool ok() const {
      return infinity_pattern && z2_agrees && b2_agrees && projection_formula &&
             z2_module == z2_relative && b2_module == b2_relative;
    }
  };
  /// Exhaustive n = 1, 2 comparison with the relative complex. Throws TooLarge.
  CorrespondenceReport verify_cochain_correspondence() const;

  const TruncatedExel& semigroup() const { return *semigroup_; }
  const Ideal& ideal() const { return ideal_; }
  const CoefficientGroup& coefficients() const { return coeff_; }

 private:
  struct Entry {
    std::int64_t a;
    ElementId x;
  };

  std::size_t tuple_index(std::span<const Elem> xs) const;
  Id inverse_or_inf(Id x) const { return x == kInfinity ? kInfinity : unit_inverse(x); }

  const TruncatedExel* semigroup_;
  Ideal ideal_;
  CoefficientGroup coeff_;
  std::vector<ElementId> idempotents_;
  std::vector<std::int64_t> idem_pos_;
  std::vector<Entry> entries_;
};

PartialModule build_partial_module(const TruncatedExel& semigroup, const Ideal& ideal,
                                   const CoefficientGroup& coeff);

}  // namespace parcoh
