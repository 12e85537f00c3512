#include "parcoh/cochain.hpp"

#include "parcoh/error.hpp"

namespace parcoh {

CoefficientGroup CoefficientGroup::integers() { return CoefficientGroup{}; }

CoefficientGroup CoefficientGroup::finite(std::vector<std::int64_t> moduli) {
  CoefficientGroup c;
  c.finite_ = true;
  c.size_ = 1;
  for (std::int64_t k : moduli) {
    if (k < 1) throw Error(ErrorCode::BadParams, "cyclic order must be positive");
    if (k == 1) continue;
    if (c.size_ > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(k))
      throw Error(ErrorCode::TooLarge, "coefficient group too large");
    c.size_ *= static_cast<std::uint64_t>(k);
    c.moduli_.push_back(k);
  }
  return c;
}

CoefficientGroup CoefficientGroup::from_structure(const AbelianGroupStructure& structure) {
  if (structure.divisible)
    throw Error(ErrorCode::BadParams, "divisible coefficients have no finite encoding");
  if (structure.free_rank == 1 && structure.torsion.empty()) return integers();
  if (structure.free_rank == 0) return finite(structure.torsion);
  throw Error(ErrorCode::BadParams,
              "coefficient group must be Z or finite, got " + structure.to_string());
}

AbelianGroupStructure CoefficientGroup::structure() const {
  if (!finite_) return AbelianGroupStructure::integers();
  return AbelianGroupStructure::canonical(0, moduli_);
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t k) {
  const std::int64_t r = a % k;
  return r < 0 ? r + k : r;
}

}  // namespace

CoefficientGroup::value_type CoefficientGroup::add(value_type a, value_type b) const {
  if (!finite_) return a + b;
  value_type out = 0, place = 1;
  for (std::int64_t k : moduli_) {
    const std::int64_t digit = mod(a % k + b % k, k);
    out += digit * place;
    place *= k;
    a /= k;
    b /= k;
  }
  return out;
}

CoefficientGroup::value_type CoefficientGroup::neg(value_type a) const {
  if (!finite_) return -a;
  value_type out = 0, place = 1;
  for (std::int64_t k : moduli_) {
    out += mod(-(a % k), k) * place;
    place *= k;
    a /= k;
  }
  return out;
}

CoefficientGroup::value_type CoefficientGroup::scale(std::int64_t factor, value_type a) const {
  if (!finite_) return factor * a;
  value_type out = 0, place = 1;
  for (std::int64_t k : moduli_) {
    out += mod(mod(factor, k) * (a % k), k) * place;
    place *= k;
    a /= k;
  }
  return out;
}

CoefficientGroup::value_type CoefficientGroup::unit() const {
  if (!finite_) return 1;
  return moduli_.empty() ? 0 : 1;
}

PartialCochain::PartialCochain(std::size_t group_order, std::size_t arity, Value fill)
    : n_(group_order), arity_(arity) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < arity; ++i) count *= group_order;
  values_.assign(count, fill);
}

PartialCochain PartialCochain::plus(const PartialCochain& other,
                                    const CoefficientGroup& coeff) const {
  if (n_ != other.n_ || arity_ != other.arity_)
    throw Error(ErrorCode::DimensionMismatch, "cochain shapes differ");
  PartialCochain out(n_, arity_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] && other.values_[i])
      out.values_[i] = coeff.add(*values_[i], *other.values_[i]);
    else
      out.values_[i].reset();
  }
  return out;
}

PartialCochain epsilon(const TruncatedExel& semigroup, const Ideal& ideal) {
  const std::size_t n = semigroup.group().order();
  PartialCochain out(n, 2);
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h)
      if (ideal.contains(semigroup, semigroup.pi({g, h}))) out.at(g, h).reset();
  return out;
}

PartialCochain coboundary1(const FiniteGroup& group, const PartialCochain& zeta,
                           const CoefficientGroup& coeff) {
  const std::size_t n = group.order();
  PartialCochain out(n, 2);
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h) {
      const auto& a = zeta.at(h);
      const auto& b = zeta.at(group.mul(g, h));
      const auto& c = zeta.at(g);
      if (a && b && c)
        out.at(g, h) = coeff.add(coeff.sub(*a, *b), *c);
      else
        out.at(g, h).reset();
    }
  return out;
}

std::optional<std::int64_t> coboundary2_at(const FiniteGroup& group, const PartialCochain& sigma,
                                           const CoefficientGroup& coeff, Elem x, Elem y, Elem z) {
  const auto& t1 = sigma.at(y, z);
  const auto& t2 = sigma.at(group.mul(x, y), z);
  const auto& t3 = sigma.at(x, group.mul(y, z));
  const auto& t4 = sigma.at(x, y);
  if (!t1 || !t2 || !t3 || !t4) return std::nullopt;
  return coeff.sub(coeff.add(coeff.sub(*t1, *t2), *t3), *t4);
}

}  // namespace parcoh
