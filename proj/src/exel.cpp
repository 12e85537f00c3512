#include "parcoh/exel.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <sstream>

#include "parcoh/error.hpp"

namespace parcoh {

namespace {

// Sorted union of a small sorted set with a translated one; returns the
// size, or 4 as soon as the union reaches four elements.
std::size_t merge_translate(std::span<const Elem> r, Elem g, std::span<const Elem> s,
                            const FiniteGroup& group, std::array<Elem, 3>& out) {
  std::array<Elem, 6> buffer{};
  std::size_t count = 0;
  for (Elem x : r) buffer[count++] = x;
  for (Elem y : s) buffer[count++] = group.mul(g, y);
  std::sort(buffer.begin(), buffer.begin() + count);
  const auto end = std::unique(buffer.begin(), buffer.begin() + count);
  const auto size = static_cast<std::size_t>(end - buffer.begin());
  if (size >= 4) return 4;
  std::copy(buffer.begin(), end, out.begin());
  return size;
}

}  // namespace

TruncatedExel::TruncatedExel(const FiniteGroup& group) : group_(group) {
  const std::size_t n = group_.order();
  if (n >= 0xffff) throw Error(ErrorCode::TooLarge, "group too large for truncated E(G)");

  auto add = [&](std::vector<Elem> domain, Elem g) {
    index_.emplace(key(domain, g), static_cast<ElementId>(elements_.size()));
    elements_.push_back({std::move(domain), g});
  };
  add({0}, 0);
  for (Elem a = 1; a < n; ++a) {
    add({0, a}, 0);
    add({0, a}, a);
  }
  for (Elem a = 1; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      for (Elem g : {Elem{0}, a, b}) add({0, a, b}, g);

  generators_.resize(n);
  for (Elem g = 0; g < n; ++g) generators_[g] = g == 0 ? 0 : find({{0, g}, g});

  // Principal ideals by closure under multiplication by the generators.
  const std::size_t size = elements_.size();
  std::vector<boost::dynamic_bitset<>> ideals;
  ideals.reserve(size);
  for (ElementId x = 0; x < size; ++x) ideals.push_back(principal_ideal(x));

  jclass_of_.assign(size, 0xffffffffu);
  for (ElementId x = 0; x < size; ++x) {
    if (jclass_of_[x] != 0xffffffffu) continue;
    const auto j = static_cast<JClassId>(jclasses_.size());
    std::vector<ElementId> members;
    for (auto y = ideals[x].find_first(); y != boost::dynamic_bitset<>::npos;
         y = ideals[x].find_next(y)) {
      if (ideals[y].test(x)) {
        jclass_of_[y] = j;
        members.push_back(static_cast<ElementId>(y));
      }
    }
    jclasses_.push_back(std::move(members));
  }

  principal_.assign(jclasses_.size(), boost::dynamic_bitset<>(jclasses_.size()));
  for (JClassId j = 0; j < jclasses_.size(); ++j) {
    const auto& ideal = ideals[jclasses_[j].front()];
    for (auto y = ideal.find_first(); y != boost::dynamic_bitset<>::npos; y = ideal.find_next(y))
      principal_[j].set(jclass_of_[y]);
  }
}

std::uint64_t TruncatedExel::key(std::span<const Elem> domain, Elem g) const {
  const std::uint64_t base = group_.order() + 1;
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < 3; ++i) k = k * base + (i < domain.size() ? domain[i] : base - 1);
  return k * base + g;
}

ElementId TruncatedExel::find(const ExelElement& element) const {
  if (element.domain.size() >= 4) return kZero;
  auto it = index_.find(key(element.domain, element.g));
  if (it == index_.end())
    throw Error(ErrorCode::BadParams, to_string(element) + " is not an element of E(G)");
  return it->second;
}

ElementId TruncatedExel::multiply(ElementId a, ElementId b) const {
  if (a == kZero || b == kZero) return kZero;
  const auto& x = elements_[a];
  const auto& y = elements_[b];
  std::array<Elem, 3> domain{};
  const std::size_t size = merge_translate(x.domain, x.g, y.domain, group_, domain);
  if (size >= 4) return kZero;
  return index_.at(key(std::span<const Elem>(domain.data(), size), group_.mul(x.g, y.g)));
}

ElementId TruncatedExel::inverse(ElementId a) const {
  if (a == kZero) return kZero;
  const auto& x = elements_[a];
  const Elem gi = group_.inv(x.g);
  std::vector<Elem> domain;
  for (Elem r : x.domain) domain.push_back(group_.mul(gi, r));
  std::sort(domain.begin(), domain.end());
  return find({std::move(domain), gi});
}

ElementId TruncatedExel::pi(std::span<const Elem> gs) const {
  ElementId acc = identity();
  for (Elem g : gs) {
    if (g >= group_.order()) throw Error(ErrorCode::BadParams, "element index out of range");
    acc = multiply(acc, generators_[g]);
  }
  return acc;
}

boost::dynamic_bitset<> TruncatedExel::principal_ideal(ElementId x) const {
  boost::dynamic_bitset<> seen(elements_.size());
  std::vector<ElementId> stack{x};
  seen.set(x);
  while (!stack.empty()) {
    const ElementId y = stack.back();
    stack.pop_back();
    for (ElementId p : generators_) {
      for (ElementId z : {multiply(p, y), multiply(y, p)}) {
        if (z != kZero && !seen.test(z)) {
          seen.set(z);
          stack.push_back(z);
        }
      }
    }
  }
  return seen;
}

TruncatedExel build_truncated_exel(const FiniteGroup& group) { return TruncatedExel(group); }

bool jclass_equal(const FiniteGroup& group, const ExelElement& a, const ExelElement& b) {
  if (a.domain.size() != b.domain.size()) return false;
  std::vector<Elem> translated(a.domain.size());
  for (Elem x : a.domain) {
    const Elem xi = group.inv(x);
    for (std::size_t i = 0; i < a.domain.size(); ++i) translated[i] = group.mul(xi, a.domain[i]);
    std::sort(translated.begin(), translated.end());
    if (translated != b.domain) continue;
    for (Elem y : a.domain)
      if (group.mul(xi, y) == b.g) return true;
  }
  return false;
}

// --- ideals ---------------------------------------------------------------------

Ideal Ideal::baseline(const TruncatedExel& semigroup) {
  return Ideal(boost::dynamic_bitset<>(semigroup.jclass_count()), true);
}

std::vector<JClassId> Ideal::jclass_list() const {
  std::vector<JClassId> out;
  for (auto j = jclasses_.find_first(); j != boost::dynamic_bitset<>::npos;
       j = jclasses_.find_next(j))
    out.push_back(static_cast<JClassId>(j));
  return out;
}

Ideal Ideal::join(const Ideal& other) const {
  return Ideal(jclasses_ | other.jclasses_, proper_ && other.proper_);
}

bool operator<(const Ideal& a, const Ideal& b) {
  const auto ca = a.jclass_count(), cb = b.jclass_count();
  if (ca != cb) return ca < cb;
  return a.jclass_list() < b.jclass_list();
}

Ideal ideal_closure(const TruncatedExel& semigroup, std::span<const ElementId> generators) {
  boost::dynamic_bitset<> classes(semigroup.jclass_count());
  for (ElementId x : generators) {
    if (x == kZero) continue;
    classes |= semigroup.principal_jclasses(semigroup.jclass_of(x));
  }
  const bool proper = !classes.test(semigroup.identity_jclass());
  if (!proper) classes.set();
  return Ideal(std::move(classes), proper);
}

const Ideal& require_proper(const Ideal& ideal) {
  if (!ideal.proper())
    throw Error(ErrorCode::ImproperIdeal, "ideal contains the identity; not a member of Lambda");
  return ideal;
}

std::vector<Ideal> enumerate_lambda(const TruncatedExel& semigroup, std::optional<std::size_t> cap) {
  const std::size_t count = semigroup.jclass_count();
  const JClassId identity = semigroup.identity_jclass();

  // Maximal classes first: a strictly larger principal ideal comes earlier.
  std::vector<JClassId> order;
  for (JClassId j = 0; j < count; ++j)
    if (j != identity) order.push_back(j);
  std::stable_sort(order.begin(), order.end(), [&](JClassId a, JClassId b) {
    return semigroup.principal_jclasses(a).count() > semigroup.principal_jclasses(b).count();
  });

  std::vector<Ideal> out;
  // Each leaf is a distinct down-set: an excluded class can only be forced
  // by a class above it, and those are decided earlier.
  std::function<void(std::size_t, const boost::dynamic_bitset<>&)> walk =
      [&](std::size_t k, const boost::dynamic_bitset<>& current) {
        if (k == order.size()) {
          if (cap && out.size() >= *cap)
            throw Error(ErrorCode::CapExceeded,
                        "Lambda has more than " + std::to_string(*cap) + " ideals");
          out.emplace_back(current, true);
          return;
        }
        const JClassId j = order[k];
        if (current.test(j)) {
          walk(k + 1, current);
          return;
        }
        walk(k + 1, current);
        walk(k + 1, current | semigroup.principal_jclasses(j));
      };
  walk(0, boost::dynamic_bitset<>(count));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> lambda_covers(const std::vector<Ideal>& lambda) {
  std::map<boost::dynamic_bitset<>, std::size_t> index;
  for (std::size_t i = 0; i < lambda.size(); ++i) index.emplace(lambda[i].jclasses(), i);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const auto& bits = lambda[i].jclasses();
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits.test(j)) continue;
      auto larger = bits;
      larger.set(j);
      if (auto it = index.find(larger); it != index.end()) edges.emplace_back(i, it->second);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<ElementId> ideal_generators(const TruncatedExel& semigroup, const Ideal& ideal) {
  std::vector<ElementId> out;
  const auto classes = ideal.jclass_list();
  for (JClassId j : classes) {
    const bool maximal = std::none_of(classes.begin(), classes.end(), [&](JClassId k) {
      return k != j && semigroup.below(j, k);
    });
    if (maximal) out.push_back(semigroup.jclass_members(j).front());
  }
  return out;
}

std::string to_string(const ExelElement& element) {
  std::ostringstream os;
  os << "({";
  for (std::size_t i = 0; i < element.domain.size(); ++i) os << (i ? "," : "") << element.domain[i];
  os << "}," << element.g << ")";
  return os.str();
}

}  // namespace parcoh
