#include "parcoh/omega.hpp"

#include <algorithm>
#include <numeric>

#include "parcoh/error.hpp"

namespace parcoh {

const char* to_string(OmegaKind kind) noexcept {
  switch (kind) {
    case OmegaKind::Identity: return "identity";
    case OmegaKind::InversePair: return "inverse-pair";
    case OmegaKind::Generic: return "generic";
  }
  return "?";
}

OmegaDecomposition::OmegaDecomposition(std::vector<OmegaClass> classes,
                                       std::vector<std::size_t> class_of, std::size_t group_order)
    : classes_(std::move(classes)), class_of_(std::move(class_of)), n_(group_order) {}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

int kind_rank(OmegaKind kind) { return static_cast<int>(kind); }

}  // namespace

OmegaDecomposition omega_classes(const FiniteGroup& group, const TruncatedExel& semigroup) {
  const std::size_t n = group.order();
  auto idx = [n](Elem x, Elem y) { return static_cast<std::size_t>(x) * n + y; };
  UnionFind uf(n * n);
  for (Elem g = 0; g < n; ++g) {
    uf.unite(idx(g, 0), idx(0, 0));
    uf.unite(idx(0, g), idx(0, 0));
    uf.unite(idx(g, group.inv(g)), idx(group.inv(g), g));
  }
  for (Elem g = 1; g < n; ++g)
    for (Elem h = 1; h < n; ++h) {
      if (h == group.inv(g)) continue;
      const Elem hi = group.inv(h), gi = group.inv(g);
      uf.unite(idx(g, h), idx(h, group.mul(hi, gi)));
      uf.unite(idx(g, h), idx(hi, gi));
    }

  // Union-find roots are the lexicographically least members.
  std::vector<OmegaClass> classes;
  std::vector<std::size_t> root_to_class(n * n, SIZE_MAX);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const std::size_t root = uf.find(idx(x, y));
      if (root_to_class[root] == SIZE_MAX) {
        root_to_class[root] = classes.size();
        OmegaClass c;
        c.representative = {x, y};
        if (x == 0 && y == 0)
          c.kind = OmegaKind::Identity;
        else if (group.mul(x, y) == 0)
          c.kind = OmegaKind::InversePair;
        else
          c.kind = OmegaKind::Generic;
        classes.push_back(std::move(c));
      }
      classes[root_to_class[root]].members.emplace_back(x, y);
    }

  std::stable_sort(classes.begin(), classes.end(), [](const OmegaClass& a, const OmegaClass& b) {
    if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
    return a.representative < b.representative;
  });

  std::vector<std::size_t> class_of(n * n);
  for (std::size_t id = 0; id < classes.size(); ++id) {
    auto& c = classes[id];
    c.id = id;
    for (const auto& [x, y] : c.members) class_of[idx(x, y)] = id;
    if (c.kind != OmegaKind::Identity) {
      const ElementId gen = semigroup.pi({c.representative.first, c.representative.second});
      c.pi_sim = ideal_closure(semigroup, std::span<const ElementId>(&gen, 1));
    }
  }
  return OmegaDecomposition(std::move(classes), std::move(class_of), n);
}

OmegaDecomposition omega_classes(const FiniteGroup& group) {
  return omega_classes(group, TruncatedExel(group));
}

std::int64_t m_formula(const FiniteGroup& group) {
  const auto n = static_cast<std::int64_t>(group.order());
  std::int64_t order2 = 0, order3 = 0;
  for (Elem g = 0; g < group.order(); ++g) {
    if (group.element_order(g) == 2) ++order2;
    if (group.element_order(g) == 3) ++order3;
  }
  const std::int64_t numerator = n * n + 2 * order3 + 3 * order2 + 5;
  if (numerator % 6 != 0)
    throw Error(ErrorCode::NonIntegral,
                "class count numerator " + std::to_string(numerator) + " is not divisible by 6");
  return numerator / 6;
}

std::vector<std::size_t> omega_restrict(const OmegaDecomposition& omega, const Ideal& ideal) {
  require_proper(ideal);
  std::vector<std::size_t> out;
  for (const auto& c : omega.classes())
    if (!c.pi_sim || !c.pi_sim->subset_of(ideal)) out.push_back(c.id);
  return out;
}

}  // namespace parcoh
