#include "parcoh/constructions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "parcoh/error.hpp"

namespace parcoh {

namespace {

std::string triple(Elem x, Elem y, Elem z) {
  std::ostringstream os;
  os << "(" << x << "," << y << "," << z << ")";
  return os.str();
}

CocycleCheck fail(std::array<Elem, 3> witness, std::string reason) {
  return CocycleCheck{false, witness, std::move(reason)};
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > kEnumerationLimit / base)
      throw Error(ErrorCode::TooLarge, "enumeration exceeds " +
                                           std::to_string(kEnumerationLimit) + " maps");
    out *= base;
  }
  return out;
}

void require_finite(const CoefficientGroup& coeff) {
  if (!coeff.is_finite())
    throw Error(ErrorCode::BadParams, "this construction needs finite coefficients");
}

// Mixed-radix counter over `width` digits in [0, base).
bool advance(std::vector<std::int64_t>& digits, std::int64_t base) {
  for (auto& d : digits) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

}  // namespace

// --- pre-cocycles ---------------------------------------------------------------

PartialCochain reconstruct_precocycle(const FiniteGroup& group, const OmegaDecomposition& omega,
                                      std::span<const std::int64_t> f,
                                      const CoefficientGroup& coeff) {
  if (f.size() != omega.size())
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(omega.size()) +
                                                  " values, got " + std::to_string(f.size()));
  const std::size_t n = group.order();
  PartialCochain sigma(n, 2, std::nullopt);
  auto set = [&](Elem x, Elem y, std::int64_t v) {
    auto& slot = sigma.at(x, y);
    if (slot && *slot != v)
      throw Error(ErrorCode::InternalMismatch,
                  "conflicting values at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    slot = v;
  };
  auto value = [&](Elem x, Elem y) { return *sigma.at(x, y); };

  const std::int64_t one = f[omega.class_of(0, 0)];
  for (Elem g = 0; g < n; ++g) {
    set(g, 0, one);
    set(0, g, one);
  }
  for (Elem g = 1; g < n; ++g) {
    const std::int64_t v = f[omega.class_of(g, group.inv(g))];
    set(g, group.inv(g), v);
    set(group.inv(g), g, v);
  }
  for (const auto& c : omega.classes()) {
    if (c.kind != OmegaKind::Generic) continue;
    const auto [g, h] = c.representative;
    const Elem gi = group.inv(g), hi = group.inv(h), gh = group.mul(g, h);
    const Elem ghi = group.inv(gh);
    const std::int64_t v = f[c.id];
    const std::int64_t s11 = value(0, 0), sg = value(g, gi), sh = value(h, hi);
    const std::int64_t sgh = value(gh, ghi);
    const auto add = [&](std::int64_t a, std::int64_t b) { return coeff.add(a, b); };
    const auto sub = [&](std::int64_t a, std::int64_t b) { return coeff.sub(a, b); };

    set(g, h, v);
    const std::int64_t a = sub(add(v, sgh), sg);
    set(h, ghi, a);
    set(hi, gi, add(sub(sh, a), s11));
    set(ghi, g, sub(add(v, sgh), sh));
    set(gh, hi, add(sub(sh, v), s11));
    set(gi, gh, add(sub(sg, v), s11));
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (!sigma.at(x, y))
        throw Error(ErrorCode::InternalMismatch, "pair (" + std::to_string(x) + "," +
                                                     std::to_string(y) + ") left unassigned");
  return sigma;
}

PartialCochain reconstruct_relative_cocycle(const TruncatedExel& semigroup,
                                            const OmegaDecomposition& omega, const Ideal& ideal,
                                            std::span<const std::int64_t> f_on_restriction,
                                            const CoefficientGroup& coeff) {
  const auto columns = omega_restrict(omega, ideal);
  if (f_on_restriction.size() != columns.size())
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(columns.size()) + " values on Omega_I");
  std::vector<std::int64_t> f(omega.size(), coeff.zero());
  for (std::size_t k = 0; k < columns.size(); ++k) f[columns[k]] = f_on_restriction[k];
  return reconstruct_precocycle(semigroup.group(), omega, f, coeff)
      .plus(epsilon(semigroup, ideal), coeff);
}

CocycleCheck is_precocycle(const FiniteGroup& group, const PartialCochain& sigma,
                           const CoefficientGroup& coeff) {
  const std::size_t n = group.order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (!sigma.at(x, y)) return fail({x, y, 0}, "pre-cocycles take no infinite values");
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        const Elem xy = group.mul(x, y), yz = group.mul(y, z), xyz = group.mul(xy, z);
        if (x && y && z && xy && yz && xyz) continue;
        if (*coboundary2_at(group, sigma, coeff, x, y, z) != coeff.zero())
          return fail({x, y, z}, "delta^2 sigma nonzero at " + triple(x, y, z));
      }
  return {};
}

PrecocycleCharacterization characterize_precocycle(const FiniteGroup& group,
                                                   const PartialCochain& sigma,
                                                   const CoefficientGroup& coeff) {
  PrecocycleCharacterization out;
  out.weak = is_precocycle(group, sigma, coeff);
  const std::size_t n = group.order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (!sigma.at(x, y)) {
        out.restricted = out.orbit_relations = fail({x, y, 0}, "infinite value");
        return out;
      }

  for (Elem x = 0; x < n && out.restricted.ok; ++x)
    for (Elem y = 0; y < n && out.restricted.ok; ++y)
      for (Elem z = 0; z < n; ++z) {
        const Elem xy = group.mul(x, y);
        if (xy != 0 && group.mul(xy, z) != 0) continue;
        if (*coboundary2_at(group, sigma, coeff, x, y, z) != coeff.zero()) {
          out.restricted = fail({x, y, z}, "delta^2 sigma nonzero at " + triple(x, y, z));
          break;
        }
      }

  auto s = [&](Elem a, Elem b) { return *sigma.at(a, b); };
  for (Elem g = 0; g < n && out.orbit_relations.ok; ++g)
    for (Elem h = 0; h < n; ++h) {
      const Elem gi = group.inv(g), hi = group.inv(h), gh = group.mul(g, h);
      const Elem ghi = group.inv(gh);
      const std::int64_t a = coeff.sub(coeff.add(s(g, h), s(gh, ghi)), s(g, gi));
      if (s(h, ghi) != a) {
        out.orbit_relations = fail({g, h, 0}, "relation a fails");
        break;
      }
      const std::int64_t b = coeff.add(coeff.sub(s(h, hi), s(h, ghi)), s(0, 0));
      if (s(hi, gi) != b) {
        out.orbit_relations = fail({g, h, 0}, "relation b fails");
        break;
      }
    }
  return out;
}

CocycleCheck is_relative_cocycle(const TruncatedExel& semigroup, const Ideal& ideal,
                                 const PartialCochain& sigma, const CoefficientGroup& coeff) {
  const FiniteGroup& group = semigroup.group();
  const std::size_t n = group.order();
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h) {
      const bool in_ideal = ideal.contains(semigroup, semigroup.pi({g, h}));
      if (in_ideal != !sigma.at(g, h))
        return fail({g, h, 0}, in_ideal ? "finite value where Pi(g,h) lies in I"
                                         : "infinite value where Pi(g,h) lies outside I");
    }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        if (ideal.contains(semigroup, semigroup.pi({x, y, z}))) continue;
        const auto d = coboundary2_at(group, sigma, coeff, x, y, z);
        if (!d) return fail({x, y, z}, "infinite term at " + triple(x, y, z));
        if (*d != coeff.zero())
          return fail({x, y, z}, "delta^2 sigma nonzero at " + triple(x, y, z));
      }
  return {};
}

std::vector<PartialCochain> enumerate_relative_coboundaries(const TruncatedExel& semigroup,
                                                            const Ideal& ideal,
                                                            const CoefficientGroup& coeff) {
  require_finite(coeff);
  require_proper(ideal);
  const FiniteGroup& group = semigroup.group();
  const std::size_t n = group.order();
  checked_power(coeff.size(), n);
  const PartialCochain eps = epsilon(semigroup, ideal);
  std::set<PartialCochain> out;
  std::vector<std::int64_t> digits(n, 0);
  PartialCochain zeta(n, 1);
  do {
    for (Elem g = 0; g < n; ++g) zeta.at(g) = coeff.element(digits[g]);
    out.insert(coboundary1(group, zeta, coeff).plus(eps, coeff));
  } while (advance(digits, static_cast<std::int64_t>(coeff.size())));
  return {out.begin(), out.end()};
}

std::vector<PartialCochain> enumerate_relative_cocycles(const TruncatedExel& semigroup,
                                                        const OmegaDecomposition& omega,
                                                        const Ideal& ideal,
                                                        const CoefficientGroup& coeff) {
  require_finite(coeff);
  const auto columns = omega_restrict(omega, ideal);
  checked_power(coeff.size(), columns.size());
  std::vector<PartialCochain> out;
  std::vector<std::int64_t> digits(columns.size(), 0);
  std::vector<std::int64_t> f(columns.size());
  do {
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = coeff.element(digits[k]);
    auto sigma = reconstruct_relative_cocycle(semigroup, omega, ideal, f, coeff);
    if (auto check = is_relative_cocycle(semigroup, ideal, sigma, coeff); !check)
      throw Error(ErrorCode::InternalMismatch,
                  "reconstructed cochain is not a relative cocycle: " + check.reason);
    out.push_back(std::move(sigma));
  } while (advance(digits, static_cast<std::int64_t>(coeff.size())));
  return out;
}

namespace {

// Cosets of B in Z, keyed by cochain.
struct CosetTable {
  std::map<PartialCochain, std::size_t> coset_of;
  std::vector<PartialCochain> representatives;
  std::size_t zero = 0;
};

CosetTable coset_table(const std::vector<PartialCochain>& cocycles,
                       const std::vector<PartialCochain>& coboundaries,
                       const CoefficientGroup& coeff) {
  if (coboundaries.empty()) throw Error(ErrorCode::BadParams, "empty coboundary set");
  CosetTable table;
  std::set<PartialCochain> members(cocycles.begin(), cocycles.end());
  for (const auto& z : cocycles) {
    if (table.coset_of.count(z)) continue;
    const std::size_t id = table.representatives.size();
    table.representatives.push_back(z);
    for (const auto& b : coboundaries) {
      auto shifted = z.plus(b, coeff);
      if (!members.count(shifted))
        throw Error(ErrorCode::InternalMismatch, "coboundary moves a cocycle out of Z");
      table.coset_of.emplace(std::move(shifted), id);
    }
  }
  auto it = table.coset_of.find(coboundaries.front());
  if (it == table.coset_of.end())
    throw Error(ErrorCode::InternalMismatch, "coboundaries are not cocycles");
  table.zero = it->second;
  return table;
}

AbelianGroupStructure structure_from_orders(const std::vector<std::uint64_t>& orders) {
  const std::uint64_t total = orders.size();
  std::vector<std::int64_t> cyclic;
  std::uint64_t rest = total;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    std::uint64_t p_part = 1;
    while (rest % p == 0) {
      rest /= p;
      p_part *= p;
    }
    // rank_k = log_p |{x : p^k x = 0}|; factors of order >= p^k number rank_k - rank_{k-1}.
    std::vector<std::size_t> ranks{0};
    for (std::uint64_t pk = p;; pk *= p) {
      std::uint64_t count = 0;
      for (std::uint64_t o : orders)
        if (pk % o == 0) ++count;
      std::size_t r = 0;
      while (count > 1) {
        count /= p;
        ++r;
      }
      ranks.push_back(r);
      std::uint64_t reached = 1;
      for (std::size_t i = 0; i < r; ++i) reached *= p;
      if (reached >= p_part) break;
    }
    for (std::size_t k = 1; k < ranks.size(); ++k) {
      const std::size_t at_least_k = ranks[k] - ranks[k - 1];
      const std::size_t at_least_next = k + 1 < ranks.size() ? ranks[k + 1] - ranks[k] : 0;
      std::int64_t pk = 1;
      for (std::size_t i = 0; i < k; ++i) pk *= static_cast<std::int64_t>(p);
      for (std::size_t c = 0; c < at_least_k - at_least_next; ++c) cyclic.push_back(pk);
    }
  }
  return AbelianGroupStructure::canonical(0, std::move(cyclic));
}

}  // namespace

AbelianGroupStructure finite_quotient_structure(const std::vector<PartialCochain>& cocycles,
                                                const std::vector<PartialCochain>& coboundaries,
                                                const CoefficientGroup& coeff) {
  const CosetTable table = coset_table(cocycles, coboundaries, coeff);
  std::vector<std::uint64_t> orders;
  for (std::size_t id = 0; id < table.representatives.size(); ++id) {
    const auto& rep = table.representatives[id];
    PartialCochain acc = rep;
    std::uint64_t k = 1;
    while (table.coset_of.at(acc) != table.zero) {
      acc = acc.plus(rep, coeff);
      ++k;
    }
    orders.push_back(k);
  }
  return structure_from_orders(orders);
}

AbelianGroupStructure brute_force_h2(const TruncatedExel& semigroup,
                                     const OmegaDecomposition& omega, const Ideal& ideal,
                                     const CoefficientGroup& coeff) {
  const auto cocycles = enumerate_relative_cocycles(semigroup, omega, ideal, coeff);
  const auto coboundaries = enumerate_relative_coboundaries(semigroup, ideal, coeff);
  return finite_quotient_structure(cocycles, coboundaries, coeff);
}

bool natural_surjection_check(const TruncatedExel& semigroup, const OmegaDecomposition& omega,
                              const CoefficientGroup& coeff, const Ideal& i, const Ideal& j) {
  const Ideal target = i.join(j);
  const PartialCochain eps = epsilon(semigroup, i);
  const auto source_z = enumerate_relative_cocycles(semigroup, omega, j, coeff);
  const auto source_b = enumerate_relative_coboundaries(semigroup, j, coeff);
  const auto target_z = enumerate_relative_cocycles(semigroup, omega, target, coeff);
  const auto target_b = enumerate_relative_coboundaries(semigroup, target, coeff);
  const CosetTable table = coset_table(target_z, target_b, coeff);

  for (const auto& b : source_b) {
    auto it = table.coset_of.find(b.plus(eps, coeff));
    if (it == table.coset_of.end() || it->second != table.zero) return false;
  }
  std::vector<bool> hit(table.representatives.size(), false);
  for (const auto& z : source_z) {
    auto it = table.coset_of.find(z.plus(eps, coeff));
    if (it == table.coset_of.end()) return false;
    hit[it->second] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

// --- extension monoid -----------------------------------------------------------

ExtensionMonoid::ExtensionMonoid(const TruncatedExel& semigroup, const Ideal& ideal,
                                 PartialCochain sigma, CoefficientGroup coeff)
    : semigroup_(&semigroup), sigma_(std::move(sigma)), coeff_(std::move(coeff)) {
  require_finite(coeff_);
  require_proper(ideal);
  base_of_.assign(semigroup.size(), -1);
  for (ElementId x = 0; x < semigroup.size(); ++x)
    if (!ideal.contains(semigroup, x)) {
      base_of_[x] = static_cast<std::int64_t>(base_.size());
      base_.push_back(x);
    }
  if (base_.size() * coeff_.size() >= kInfinity)
    throw Error(ErrorCode::TooLarge, "extension monoid too large");
  for (ElementId x : base_)
    for (std::uint64_t a = 0; a < coeff_.size(); ++a) entries_.push_back({coeff_.element(a), x});
}

ExtensionMonoid::Id ExtensionMonoid::id_of(std::int64_t a, ElementId x) const {
  if (x == kZero || base_of_[x] < 0) return kInfinity;
  return static_cast<Id>(static_cast<std::uint64_t>(base_of_[x]) * coeff_.size() +
                         static_cast<std::uint64_t>(a));
}

ExtensionMonoid::Id ExtensionMonoid::multiply(Id p, Id q) const {
  if (p == kInfinity || q == kInfinity) return kInfinity;
  const Entry& l = entries_[p];
  const Entry& r = entries_[q];
  const ElementId xy = semigroup_->multiply(l.x, r.x);
  if (xy == kZero || base_of_[xy] < 0) return kInfinity;
  const auto& s = sigma_.at(semigroup_->element(l.x).g, semigroup_->element(r.x).g);
  if (!s) return kInfinity;
  return id_of(coeff_.add(coeff_.add(l.a, r.a), *s), xy);
}

ExtensionMonoid::Id ExtensionMonoid::identity() const {
  return id_of(coeff_.neg(*sigma_.at(0, 0)), semigroup_->identity());
}

ExtensionMonoid::Id ExtensionMonoid::embed(std::int64_t a) const {
  return id_of(coeff_.sub(a, *sigma_.at(0, 0)), semigroup_->identity());
}

ExtensionMonoid::Id ExtensionMonoid::section(Elem g) const {
  return id_of(coeff_.neg(*sigma_.at(0, 0)), semigroup_->pi({g}));
}

PartialCochain ExtensionMonoid::recover_sigma(bool right_equation) const {
  const FiniteGroup& group = semigroup_->group();
  const std::size_t n = group.order();
  PartialCochain out(n, 2);
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h) {
      const Elem gh = group.mul(g, h);
      Id lhs, prefix;
      if (!right_equation) {
        lhs = multiply(multiply(section(group.inv(g)), section(g)), section(h));
        prefix = multiply(section(group.inv(g)), section(gh));
      } else {
        lhs = multiply(multiply(section(g), section(h)), section(group.inv(h)));
        prefix = multiply(section(gh), section(group.inv(h)));
      }
      if (lhs == kInfinity) {
        out.at(g, h).reset();
        continue;
      }
      std::optional<std::int64_t> found;
      for (std::uint64_t k = 0; k < coeff_.size() && !found; ++k)
        if (multiply(prefix, embed(coeff_.element(k))) == lhs) found = coeff_.element(k);
      if (!found)
        throw Error(ErrorCode::InternalMismatch, "section equation has no solution at (" +
                                                     std::to_string(g) + "," +
                                                     std::to_string(h) + ")");
      out.at(g, h) = *found;
    }
  return out;
}

ExtensionMonoid::Verification ExtensionMonoid::verify() const {
  Verification v;
  std::vector<Id> all;
  for (Id p = 0; p < entries_.size(); ++p) all.push_back(p);
  all.push_back(kInfinity);
  auto note = [&](bool& flag, const std::string& what) {
    if (flag && v.detail.empty()) v.detail = what;
    flag = false;
  };

  for (std::size_t i = 0; i < all.size() && v.associative; ++i)
    for (Id q : all) {
      const Id p = all[i];
      const Id pq = multiply(p, q);
      for (Id r : all)
        if (multiply(pq, r) != multiply(p, multiply(q, r))) note(v.associative, "associativity fails");
    }

  const Id e = identity();
  for (Id p : all)
    if (multiply(e, p) != p || multiply(p, e) != p) note(v.identity, "identity fails");

  const std::uint64_t order = coeff_.size();
  for (std::uint64_t i = 0; i < order; ++i) {
    const Id a = embed(coeff_.element(i));
    for (std::uint64_t j = 0; j < order; ++j) {
      const Id b = embed(coeff_.element(j));
      if (multiply(a, b) != embed(coeff_.add(coeff_.element(i), coeff_.element(j))))
        note(v.embedding_homomorphic, "A does not embed as a subgroup");
    }
    for (Id p : all)
      if (multiply(a, p) != multiply(p, a)) note(v.central, "A is not central");
  }
  for (Id p = 0; p < entries_.size(); ++p) {
    std::set<Id> images;
    for (std::uint64_t i = 0; i < order; ++i) {
      const Id image = multiply(embed(coeff_.element(i)), p);
      if (image == kInfinity) note(v.cancellative, "a x = inf for nonzero x");
      images.insert(image);
    }
    if (images.size() != order) note(v.cancellative, "a x = b x with a != b");
  }

  // The section recovers sigma shifted by the constant -sigma(1,1).
  const std::int64_t s11 = *sigma_.at(0, 0);
  PartialCochain expected = sigma_;
  for (auto& value : expected.values())
    if (value) value = coeff_.sub(*value, s11);
  try {
    if (recover_sigma(false) != expected) note(v.section_left, "left section equation");
  } catch (const Error& err) {
    note(v.section_left, err.what());
  }
  try {
    if (recover_sigma(true) != expected) note(v.section_right, "right section equation");
  } catch (const Error& err) {
    note(v.section_right, err.what());
  }
  return v;
}

ExtensionMonoid build_extension(const TruncatedExel& semigroup, const Ideal& ideal,
                                const PartialCochain& sigma, const CoefficientGroup& coeff) {
  ExtensionMonoid monoid(semigroup, ideal, sigma, coeff);
  const auto v = monoid.verify();
  if (!v.associative) throw Error(ErrorCode::NotACocycle, "extension is not associative");
  if (!v.ok()) throw Error(ErrorCode::InternalMismatch, "extension check failed: " + v.detail);
  return monoid;
}

bool verify_coboundary_isomorphism(const ExtensionMonoid& shifted, const ExtensionMonoid& base,
                                   const PartialCochain& zeta) {
  if (shifted.base() != base.base() || shifted.size() != base.size()) return false;
  const CoefficientGroup& coeff = base.coefficients();
  const TruncatedExel& semigroup = base.semigroup();
  auto map = [&](ExtensionMonoid::Id p) -> ExtensionMonoid::Id {
    if (p == ExtensionMonoid::kInfinity) return p;
    const auto& entry = shifted.entry(p);
    const auto& z = zeta.at(semigroup.element(entry.x).g);
    if (!z) return ExtensionMonoid::kInfinity;
    return base.id_of(coeff.add(entry.a, *z), entry.x);
  };
  std::vector<ExtensionMonoid::Id> all;
  for (ExtensionMonoid::Id p = 0; p < shifted.nonzero_size(); ++p) all.push_back(p);
  all.push_back(ExtensionMonoid::kInfinity);

  std::set<ExtensionMonoid::Id> image;
  for (auto p : all) image.insert(map(p));
  if (image.size() != all.size()) return false;
  if (map(shifted.identity()) != base.identity()) return false;
  for (std::uint64_t i = 0; i < coeff.size(); ++i)
    if (map(shifted.embed(coeff.element(i))) != base.embed(coeff.element(i))) return false;
  for (auto p : all)
    for (auto q : all)
      if (map(shifted.multiply(p, q)) != base.multiply(map(p), map(q))) return false;
  return true;
}

std::optional<PartialCochain> find_extension_equivalence(const ExtensionMonoid& e1,
                                                         const ExtensionMonoid& e2) {
  if (e1.base() != e2.base() || e1.coefficients().size() != e2.coefficients().size())
    throw Error(ErrorCode::BadParams, "extensions of different semigroups");
  const TruncatedExel& semigroup = e1.semigroup();
  const FiniteGroup& group = semigroup.group();
  const CoefficientGroup& coeff = e1.coefficients();
  const std::size_t n = group.order();
  const auto& base = e1.base();
  std::map<ElementId, std::size_t> position;
  for (std::size_t k = 0; k < base.size(); ++k) position[base[k]] = k;

  std::vector<Elem> free_generators;
  for (Elem g = 0; g < n; ++g)
    if (position.count(semigroup.pi({g}))) free_generators.push_back(g);
  checked_power(coeff.size(), free_generators.size());

  const auto& s1 = e1.sigma();
  const auto& s2 = e2.sigma();
  std::vector<std::int64_t> digits(free_generators.size(), 0);
  do {
    std::vector<std::optional<std::int64_t>> c(base.size());
    std::deque<std::size_t> queue;
    bool consistent = true;
    auto assign = [&](ElementId x, std::int64_t value) {
      auto& slot = c[position.at(x)];
      if (!slot) {
        slot = value;
        queue.push_back(position.at(x));
      } else if (*slot != value) {
        consistent = false;
      }
    };
    for (std::size_t k = 0; k < free_generators.size(); ++k)
      assign(semigroup.pi({free_generators[k]}), coeff.element(digits[k]));
    while (!queue.empty() && consistent) {
      const std::size_t k = queue.front();
      queue.pop_front();
      const ElementId x = base[k];
      const Elem gx = semigroup.element(x).g;
      for (Elem g : free_generators) {
        const ElementId p = semigroup.pi({g});
        const ElementId y = semigroup.multiply(x, p);
        if (!position.count(y)) continue;
        const auto& a = s1.at(gx, g);
        const auto& b = s2.at(gx, g);
        if (!a || !b) {
          consistent = false;
          break;
        }
        assign(y, coeff.add(coeff.add(*c[k], *c[position.at(p)]), coeff.sub(*a, *b)));
      }
    }
    if (!consistent || std::any_of(c.begin(), c.end(), [](const auto& v) { return !v; }))
      continue;

    auto map = [&](ExtensionMonoid::Id p) -> ExtensionMonoid::Id {
      if (p == ExtensionMonoid::kInfinity) return p;
      const auto& entry = e1.entry(p);
      return e2.id_of(coeff.add(entry.a, *c[position.at(entry.x)]), entry.x);
    };
    bool ok = true;
    for (std::uint64_t i = 0; i < coeff.size() && ok; ++i)
      ok = map(e1.embed(coeff.element(i))) == e2.embed(coeff.element(i));
    for (ExtensionMonoid::Id p = 0; p < e1.nonzero_size() && ok; ++p)
      for (ExtensionMonoid::Id q = 0; q < e1.nonzero_size() && ok; ++q)
        ok = map(e1.multiply(p, q)) == e2.multiply(map(p), map(q));
    if (!ok) continue;

    PartialCochain zeta(n, 1, std::nullopt);
    for (Elem g : free_generators) zeta.at(g) = c[position.at(semigroup.pi({g}))];
    return zeta;
  } while (advance(digits, static_cast<std::int64_t>(coeff.size())));
  return std::nullopt;
}

// --- partial module -------------------------------------------------------------

PartialModule::PartialModule(const TruncatedExel& semigroup, const Ideal& ideal,
                             CoefficientGroup coeff)
    : semigroup_(&semigroup), ideal_(ideal), coeff_(std::move(coeff)) {
  require_finite(coeff_);
  require_proper(ideal_);
  idem_pos_.assign(semigroup.size(), -1);
  for (ElementId x = 0; x < semigroup.size(); ++x)
    if (semigroup.is_idempotent(x) && !ideal_.contains(semigroup, x)) {
      idem_pos_[x] = static_cast<std::int64_t>(idempotents_.size());
      idempotents_.push_back(x);
    }
  for (ElementId x : idempotents_)
    for (std::uint64_t a = 0; a < coeff_.size(); ++a) entries_.push_back({coeff_.element(a), x});
}

PartialModule::Id PartialModule::id_of(std::int64_t a, ElementId idempotent) const {
  if (idempotent == kZero || idem_pos_[idempotent] < 0) return kInfinity;
  return static_cast<Id>(static_cast<std::uint64_t>(idem_pos_[idempotent]) * coeff_.size() +
                         static_cast<std::uint64_t>(a));
}

PartialModule::Id PartialModule::multiply(Id p, Id q) const {
  if (p == kInfinity || q == kInfinity) return kInfinity;
  return id_of(coeff_.add(entries_[p].a, entries_[q].a),
               semigroup_->multiply(entries_[p].x, entries_[q].x));
}

PartialModule::Id PartialModule::identity() const { return id_of(0, semigroup_->identity()); }

PartialModule::Id PartialModule::e(Elem g) const {
  if (ideal_.contains(*semigroup_, semigroup_->pi({g}))) return kInfinity;
  return id_of(0, semigroup_->pi({g, semigroup_->group().inv(g)}));
}

bool PartialModule::in_domain(Elem g, Id x) const { return multiply(x, e(g)) == x; }

std::optional<PartialModule::Id> PartialModule::theta(Elem g, Id x) const {
  const Elem gi = semigroup_->group().inv(g);
  if (!in_domain(gi, x)) return std::nullopt;
  if (x == kInfinity) return kInfinity;
  const ElementId conj = semigroup_->multiply(
      semigroup_->multiply(semigroup_->pi({g}), entries_[x].x), semigroup_->pi({gi}));
  return id_of(entries_[x].a, conj);
}

PartialModule::Id PartialModule::unit_inverse(Id x) const {
  return id_of(coeff_.neg(entries_[x].a), entries_[x].x);
}

PartialModule::Id PartialModule::tuple_identity(std::span<const Elem> xs) const {
  const FiniteGroup& group = semigroup_->group();
  std::vector<Elem> word(xs.begin(), xs.end());
  Elem product = 0;
  for (Elem x : xs) product = group.mul(product, x);
  word.push_back(group.inv(product));
  return id_of(0, semigroup_->pi(word));
}

PartialModule::ActionVerification PartialModule::verify_action() const {
  ActionVerification v;
  auto note = [&](bool& flag, const std::string& what) {
    if (flag && v.detail.empty()) v.detail = what;
    flag = false;
  };
  std::vector<Id> all;
  for (Id p = 0; p < entries_.size(); ++p) all.push_back(p);
  all.push_back(kInfinity);
  const Id one = identity();

  for (Id p : all) {
    if (multiply(one, p) != p) note(v.commutative_monoid, "identity");
    for (Id q : all) {
      if (multiply(p, q) != multiply(q, p)) note(v.commutative_monoid, "commutativity");
      for (Id r : all)
        if (multiply(multiply(p, q), r) != multiply(p, multiply(q, r)))
          note(v.commutative_monoid, "associativity");
    }
  }

  const FiniteGroup& group = semigroup_->group();
  const std::size_t n = group.order();
  for (Elem g = 0; g < n; ++g) {
    const Elem gi = group.inv(g);
    const Id eg = e(g);
    if (multiply(eg, eg) != eg) note(v.unital, "e_g is not idempotent");
    std::set<Id> domain, ideal_span;
    for (Id p : all) {
      if (in_domain(g, p)) domain.insert(p);
      ideal_span.insert(multiply(p, eg));
    }
    if (domain != ideal_span) note(v.unital, "B_g differs from B e_g");

    std::set<Id> image;
    std::size_t source = 0;
    for (Id p : all) {
      const auto t = theta(g, p);
      if (!t) continue;
      ++source;
      if (!in_domain(g, *t)) note(v.bijections, "theta_g leaves B_g");
      image.insert(*t);
      const auto back = theta(gi, *t);
      if (!back || *back != p) note(v.inverse_maps, "theta_{g^-1} theta_g is not the identity");
      for (Id q : all) {
        const auto tq = theta(g, q);
        if (!tq) continue;
        const auto tpq = theta(g, multiply(p, q));
        if (!tpq || *tpq != multiply(*t, *tq)) note(v.multiplicative, "theta_g(xy)");
      }
    }
    if (image.size() != source || image.size() != domain.size())
      note(v.bijections, "theta_g is not a bijection onto B_g");

    for (Elem h = 0; h < n; ++h)
      for (Id p : all) {
        const auto th = theta(h, p);
        if (!th) continue;
        const auto tgh = theta(g, *th);
        if (!tgh) continue;
        const auto direct = theta(group.mul(g, h), p);
        if (!direct || *direct != *tgh) note(v.composition, "theta_g theta_h not in theta_gh");
      }
  }
  for (Id p : all) {
    const auto t = theta(0, p);
    if (!t || *t != p) note(v.theta_identity, "theta_1 is not the identity");
  }
  return v;
}

std::size_t PartialModule::tuple_index(std::span<const Elem> xs) const {
  const std::size_t n = semigroup_->group().order();
  std::size_t index = 0;
  for (Elem x : xs) index = index * n + x;
  return index;
}

PartialModule::ModuleCochain PartialModule::lift(const PartialCochain& projected) const {
  const std::size_t n = semigroup_->group().order();
  const std::size_t arity = projected.arity();
  ModuleCochain out(projected.values().size(), kInfinity);
  std::vector<Elem> xs(arity);
  for (std::size_t index = 0; index < out.size(); ++index) {
    std::size_t rest = index;
    for (std::size_t i = arity; i-- > 0;) {
      xs[i] = static_cast<Elem>(rest % n);
      rest /= n;
    }
    const auto& value = projected.values()[index];
    const Id unit = tuple_identity(xs);
    if (!value || unit == kInfinity) continue;
    out[index] = id_of(*value, entries_[unit].x);
  }
  return out;
}

PartialCochain PartialModule::project(const ModuleCochain& sigma, std::size_t arity) const {
  PartialCochain out(semigroup_->group().order(), arity);
  if (out.values().size() != sigma.size())
    throw Error(ErrorCode::DimensionMismatch, "cochain size does not match arity");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] == kInfinity)
      out.values()[i].reset();
    else
      out.values()[i] = entries_[sigma[i]].a;
  }
  return out;
}

PartialModule::ModuleCochain PartialModule::coboundary(const ModuleCochain& f,
                                                       std::size_t arity) const {
  const FiniteGroup& group = semigroup_->group();
  const std::size_t n = group.order();
  if (arity != 1 && arity != 2)
    throw Error(ErrorCode::BadParams, "coboundary implemented for arity 1 and 2");
  std::size_t count = 1;
  for (std::size_t i = 0; i <= arity; ++i) count *= n;
  ModuleCochain out(count, kInfinity);
  std::vector<Elem> xs(arity + 1);
  for (std::size_t index = 0; index < count; ++index) {
    std::size_t rest = index;
    for (std::size_t i = arity + 1; i-- > 0;) {
      xs[i] = static_cast<Elem>(rest % n);
      rest /= n;
    }
    auto value = [&](std::span<const Elem> args) { return f[tuple_index(args)]; };
    const Elem x1 = xs[0];
    const auto head = theta(x1, multiply(e(group.inv(x1)), value(std::span(xs).subspan(1))));
    Id acc = head ? *head : kInfinity;
    std::vector<Elem> merged(arity);
    for (std::size_t i = 1; i <= arity; ++i) {
      // Merge x_i x_{i+1} (1-based) into one argument.
      std::size_t w = 0;
      for (std::size_t k = 0; k <= arity; ++k) {
        if (k == i) continue;
        merged[w++] = k == i - 1 ? group.mul(xs[k], xs[k + 1]) : xs[k];
      }
      const Id term = value(merged);
      acc = multiply(acc, i % 2 == 1 ? inverse_or_inf(term) : term);
    }
    const Id last = value(std::span(xs).first(arity));
    acc = multiply(acc, arity % 2 == 1 ? last : inverse_or_inf(last));
    out[index] = acc;
  }
  return out;
}

PartialModule::CorrespondenceReport PartialModule::verify_cochain_correspondence() const {
  CorrespondenceReport report;
  auto note = [&](bool& flag, const std::string& what) {
    if (flag && report.detail.empty()) report.detail = what;
    flag = false;
  };
  const FiniteGroup& group = semigroup_->group();
  const std::size_t n = group.order();
  const PartialCochain eps = epsilon(*semigroup_, ideal_);

  // C^2(G, B): a unit of B_(x,y) at each pair, inf where that ideal is {inf}.
  std::vector<std::size_t> finite2;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const bool module_inf = tuple_identity(std::array<Elem, 2>{x, y}) == kInfinity;
      if (module_inf != !eps.at(x, y)) note(report.infinity_pattern, "infinity pattern");
      if (!module_inf) finite2.push_back(static_cast<std::size_t>(x) * n + y);
    }
  std::vector<std::size_t> finite1;
  for (Elem x = 0; x < n; ++x)
    if (tuple_identity(std::array<Elem, 1>{x}) != kInfinity) finite1.push_back(x);
  report.cochains2 = checked_power(coeff_.size(), finite2.size());
  checked_power(coeff_.size(), finite1.size());

  const std::int64_t order = static_cast<std::int64_t>(coeff_.size());
  std::vector<ModuleCochain> ones;
  {
    PartialCochain zeta(n, 1, std::nullopt);
    std::vector<std::int64_t> digits(finite1.size(), 0);
    do {
      for (std::size_t k = 0; k < finite1.size(); ++k)
        zeta.at(static_cast<Elem>(finite1[k])) = coeff_.element(digits[k]);
      ones.push_back(lift(zeta));
    } while (advance(digits, order));
  }

  // B^2 through the module coboundary, compared after projection.
  std::set<PartialCochain> module_b2;
  for (const auto& zeta : ones) {
    const auto d = coboundary(zeta, 1);
    const auto d_bar = project(d, 2);
    module_b2.insert(d_bar);
    const auto direct = coboundary1(group, project(zeta, 1), coeff_).plus(eps, coeff_);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        if (tuple_identity(std::array<Elem, 2>{x, y}) == kInfinity) continue;
        if (d_bar.at(x, y) != direct.at(x, y)) note(report.projection_formula, "delta^1");
      }
  }
  const auto relative_b2 = enumerate_relative_coboundaries(*semigroup_, ideal_, coeff_);
  report.b2_module = module_b2.size();
  report.b2_relative = relative_b2.size();
  if (!std::equal(module_b2.begin(), module_b2.end(), relative_b2.begin(), relative_b2.end()))
    note(report.b2_agrees, "projected B^2(G,B) differs from B^2(G,I;A)");

  // Z^2: delta^2 sigma must equal e_x e_xy e_xyz everywhere.
  PartialCochain sigma_bar = eps;
  std::vector<std::int64_t> digits(finite2.size(), 0);
  do {
    for (std::size_t k = 0; k < finite2.size(); ++k)
      sigma_bar.values()[finite2[k]] = coeff_.element(digits[k]);
    const ModuleCochain sigma = lift(sigma_bar);
    const ModuleCochain d = coboundary(sigma, 2);
    bool module_cocycle = true;
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem z = 0; z < n; ++z) {
          const std::array<Elem, 3> xs{x, y, z};
          const Id unit = tuple_identity(xs);
          const Id value = d[tuple_index(xs)];
          if (value != unit) module_cocycle = false;
          if (unit == kInfinity) continue;
          const auto expected = coboundary2_at(group, sigma_bar, coeff_, x, y, z);
          if (!expected || value == kInfinity || entries_[value].a != *expected)
            note(report.projection_formula, "delta^2 at " + triple(x, y, z));
        }
    const bool relative_cocycle = is_relative_cocycle(*semigroup_, ideal_, sigma_bar, coeff_).ok;
    if (module_cocycle) ++report.z2_module;
    if (module_cocycle != relative_cocycle) note(report.z2_agrees, "cocycle conditions differ");
  } while (advance(digits, order));

  const auto omega = omega_classes(group, *semigroup_);
  report.z2_relative = enumerate_relative_cocycles(*semigroup_, omega, ideal_, coeff_).size();
  return report;
}

PartialModule build_partial_module(const TruncatedExel& semigroup, const Ideal& ideal,
                                   const CoefficientGroup& coeff) {
  return PartialModule(semigroup, ideal, coeff);
}

}  // namespace parcoh
