// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "parcoh/cohomology.hpp"
#include "parcoh/constructions.hpp"
#include "parcoh/io.hpp"

using namespace parcoh;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

const std::vector<ElemPair> kZ6Reps{{0, 0}, {1, 5}, {2, 4}, {3, 3},
                                    {1, 1}, {1, 2}, {1, 3}, {2, 2}};

const IntegerMatrix kZ6Matrix{{1, -1, -1, -1, 0, 0, 0, 0},  {0, 1, 0, 0, 2, 1, 1, 0},
                              {0, 0, 1, 0, -1, 1, 0, 2},    {0, 0, 0, 2, 0, -1, 1, 0},
                              {0, 0, 1, 0, 0, 0, -1, -1},   {0, 1, 0, 0, 0, 0, 0, 0}};

Outcome criterion1() {
  Outcome o;
  const auto omega = omega_classes(cyclic(6));
  o.require(omega.size() == 8, "expected 8 classes, got " + std::to_string(omega.size()));
  for (std::size_t j = 0; j < std::min(omega.size(), kZ6Reps.size()); ++j)
    if (omega.delta(j) != kZ6Reps[j])
      o.require(false, "representative of w" + std::to_string(j + 1) + " differs");
  if (o.pass) o.detail = "8 classes, representatives match";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const CohomologyEngine e(cyclic(6));
  const auto& m = e.matrix();
  o.require(m.rows() == 6 && m.cols() == 8, "shape differs");
  for (std::size_t r = 0; r < 6 && o.pass; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      if (m(r, c) != kZ6Matrix(r, c)) {
        o.require(false, "entry (row " + std::to_string(r) + ", column " + std::to_string(c) +
                             ") = " + m(r, c).get_str());
        break;
      }
  if (o.pass) o.detail = "48 entries equal";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const CohomologyEngine e(cyclic(6));
  const auto snf = smith_normal_form(e.matrix());
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < 6; ++i) diag.push_back(snf.D(i, i));
  o.require(diag == std::vector<Integer>{1, 1, 1, 1, 1, 6}, "diagonal differs");
  o.require(snf.P * e.matrix() * snf.Q == snf.D, "P M Q != D");
  const auto h = e.pre_cohomology(AbelianGroupStructure::integers()).structure.to_string();
  o.require(h == "Z^2 + Z/6", "pH2 = " + h);
  if (o.pass) o.detail = "diag (1,1,1,1,1,6), pH2 = " + h;
  return o;
}

Outcome criterion4() {
  Outcome o;
  const CohomologyEngine e(cyclic(6));
  const auto z = AbelianGroupStructure::integers();
  const auto a = e.partial_cohomology(e.ideal_from_tuples({{1, 2}, {1, 3}}), z);
  const bool chain = a.mu.size() >= 2 && a.mu[a.mu.size() - 2] == 2 && a.mu.back() == 6;
  o.require(chain, "mu chain does not end in (2,6)");
  o.require(a.structure.to_string() == "Z/2 + Z/6", "H2 = " + a.structure.to_string());
  const auto b = e.partial_cohomology(e.ideal_from_tuples({{2, 4}, {3, 3}}), z);
  o.require(b.structure.to_string() == "0", "second H2 = " + b.structure.to_string());
  if (o.pass)
    o.detail = "<(1,2),(1,3)>: " + a.structure.to_string() +
               ", <(2,4),(3,3)>: " + b.structure.to_string();
  return o;
}

// Labeled directed graph; marks are the named nodes (N3, w2..w8).
struct Graph {
  std::vector<std::string> label;
  std::vector<std::string> mark;
  std::set<std::pair<std::size_t, std::size_t>> edges;
};

Graph load_drawing(const std::string& path) {
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  Graph g;
  for (const auto& n : doc.at("nodes")) {
    g.label.push_back(n.at("label"));
    g.mark.push_back(n.value("mark", ""));
  }
  for (const auto& e : doc.at("edges")) g.edges.emplace(e[0], e[1]);
  return g;
}

Graph computed_graph(const Semilattice& lat) {
  Graph g;
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
    const auto& n = lat.nodes[i];
    g.label.push_back(n.report.structure.to_string(true));
    g.mark.push_back(i == 0 ? "N3"
                     : n.principal_of ? "w" + std::to_string(*n.principal_of + 1)
                                      : "");
  }
  for (const auto& e : lat.edges) g.edges.insert(e);
  return g;
}

// Injective map from `small` into `big` preserving labels, marks and edges
// (both directions of adjacency when `induced`).
bool embed(const Graph& small, const Graph& big, bool induced, std::vector<std::size_t>& map) {
  const std::size_t n = small.label.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  map.assign(n, SIZE_MAX);
  std::vector<bool> used(big.label.size(), false);
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == n) return true;
    const std::size_t u = order[k];
    for (std::size_t v = 0; v < big.label.size(); ++v) {
      if (used[v] || big.label[v] != small.label[u] || big.mark[v] != small.mark[u]) continue;
      bool ok = true;
      for (std::size_t p = 0; p < k && ok; ++p) {
        const std::size_t w = order[p];
        const bool s1 = small.edges.count({w, u}), s2 = small.edges.count({u, w});
        const bool b1 = big.edges.count({map[w], v}), b2 = big.edges.count({v, map[w]});
        ok = induced ? (s1 == b1 && s2 == b2) : ((!s1 || b1) && (!s2 || b2));
      }
      if (!ok) continue;
      map[u] = v;
      used[v] = true;
      if (go(k + 1)) return true;
      used[v] = false;
    }
    map[u] = SIZE_MAX;
    return false;
  };
  return go(0);
}

Outcome criterion5() {
  Outcome o;
  const CohomologyEngine e(cyclic(6));
  const auto lat = e.semilattice(AbelianGroupStructure::integers());
  const Graph ours = computed_graph(lat);
  std::map<std::string, std::string> named;
  for (std::size_t i = 0; i < ours.mark.size(); ++i)
    if (!ours.mark[i].empty()) named[ours.mark[i]] = ours.label[i];
  const std::map<std::string, std::string> expected{
      {"N3", "Z^2+Z/6"}, {"w2", "Z/6"},   {"w3", "Z/2"},   {"w4", "Z/6"},
      {"w5", "Z+Z/6"},   {"w6", "Z+Z/6"}, {"w7", "Z+Z/6"}, {"w8", "Z+Z/6"}};
  const bool labels_ok = named == expected && ours.label.back() == "0";
  o.require(labels_ok, "named node labels differ");

  const Graph fig = load_drawing(PARCOH_FIXTURE_DIR "/z6_lattice_drawing.json");
  std::vector<std::size_t> map;
  const bool isomorphic = fig.label.size() == ours.label.size() &&
                          fig.edges.size() == ours.edges.size() && embed(fig, ours, true, map);
  std::ostringstream d;
  d << "labels " << (labels_ok ? "ok" : "differ") << "; Hasse diagram " << ours.label.size()
    << " nodes/" << ours.edges.size() << " edges vs drawing " << fig.label.size() << "/"
    << fig.edges.size() << " -> " << (isomorphic ? "isomorphic" : "not isomorphic");
  if (!isomorphic) {
    // Look for a single ideal whose removal makes the drawing a labeled
    // subgraph of the remaining Hasse diagram.
    for (std::size_t skip = 0; skip < lat.nodes.size(); ++skip) {
      std::vector<std::size_t> keep;
      for (std::size_t v = 0; v < lat.nodes.size(); ++v)
        if (v != skip) keep.push_back(v);
      Graph reduced;
      for (std::size_t v : keep) {
        reduced.label.push_back(ours.label[v]);
        reduced.mark.push_back(ours.mark[v]);
      }
      auto below = [&](std::size_t a, std::size_t b) {
        return a != b && lat.nodes[keep[a]].ideal.subset_of(lat.nodes[keep[b]].ideal);
      };
      for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b) {
          if (!below(a, b)) continue;
          bool cover = true;
          for (std::size_t c = 0; c < keep.size() && cover; ++c)
            if (below(a, c) && below(c, b)) cover = false;
          if (cover) reduced.edges.emplace(a, b);
        }
      if (!embed(fig, reduced, false, map)) continue;
      std::set<std::pair<std::size_t, std::size_t>> image;
      for (const auto& [a, b] : fig.edges) image.emplace(map[a], map[b]);
      d << "; drawing omits ideal "
        << format_generators(lat.nodes[skip].report.ideal_generators) << " ("
        << ours.label[skip] << ") and embeds in the remaining Hasse diagram ("
        << reduced.edges.size() << " edges) missing covers";
      for (const auto& edge : reduced.edges)
        if (!image.count(edge))
          d << " " << format_generators(lat.nodes[keep[edge.first]].report.ideal_generators)
            << " < " << format_generators(lat.nodes[keep[edge.second]].report.ideal_generators);
      break;
    }
  }
  o.require(isomorphic, "");
  o.detail = d.str();
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t count = 0;
  for (const auto& g : builtin_catalog(16)) {
    const CohomologyEngine e(g);
    const auto r = e.pre_cohomology(AbelianGroupStructure::integers());
    const auto ab = abelianization(g);
    o.require(r.integral.torsion == ab.torsion, g.name() + " torsion differs");
    const auto census = oracle::census_of_product(
        ab.torsion.empty() ? std::vector<std::int64_t>{1} : ab.torsion);
    o.require(census == oracle::abelianization_census(g), g.name() + " coset census differs");
    o.require(static_cast<std::int64_t>(r.m_I) == m_formula(g), g.name() + " m differs");
    o.require(r.n_I == g.order(), g.name() + " rank differs");
    ++count;
  }
  if (o.pass) o.detail = std::to_string(count) + " builtin groups of order <= 16";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t nodes = 0, groups = 0;
  for (const auto& g : builtin_catalog(8)) {
    const CohomologyEngine e(g);
    for (const auto& n : e.semilattice(AbelianGroupStructure::divisible_group(), std::nullopt,
                                       std::max(1u, std::thread::hardware_concurrency()))
                             .nodes) {
      o.require(n.report.structure.torsion.empty(), g.name() + " has torsion");
      ++nodes;
    }
    ++groups;
  }
  if (o.pass)
    o.detail = std::to_string(nodes) + " nodes over " + std::to_string(groups) +
               " groups torsion-free";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t cases = 0;
  for (const auto& g : builtin_catalog(4)) {
    const CohomologyEngine e(g);
    for (const auto& ideal : enumerate_lambda(e.semigroup()))
      for (std::int64_t k : {2, 3}) {
        const auto fast =
            e.partial_cohomology(ideal, AbelianGroupStructure::canonical(0, {k})).structure;
        const auto slow =
            brute_force_h2(e.semigroup(), e.omega(), ideal, CoefficientGroup::finite({k}));
        o.require(fast == slow, g.name() + " Z/" + std::to_string(k) + ": " + fast.to_string() +
                                    " vs " + slow.to_string());
        ++cases;
      }
  }
  if (o.pass) o.detail = std::to_string(cases) + " (group, ideal, A) cases agree";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::size_t monoids = 0, modules = 0;
  for (const auto& g : builtin_catalog(3)) {
    const CohomologyEngine e(g);
    for (std::int64_t k : {2, 3}) {
      const auto a = CoefficientGroup::finite({k});
      for (const auto& ideal : enumerate_lambda(e.semigroup())) {
        for (const auto& sigma : enumerate_relative_cocycles(e.semigroup(), e.omega(), ideal, a)) {
          const auto ext = build_extension(e.semigroup(), ideal, sigma, a);
          const auto v = ext.verify();
          o.require(v.ok(), g.name() + " extension: " + v.detail);
          PartialCochain expected = sigma;
          for (auto& x : expected.values())
            if (x) x = a.sub(*x, *sigma.at(0, 0));
          o.require(ext.recover_sigma(false) == expected && ext.recover_sigma(true) == expected,
                    g.name() + " section does not recover sigma");
          ++monoids;
        }
        const auto b = build_partial_module(e.semigroup(), ideal, a);
        const auto act = b.verify_action();
        o.require(act.ok(), g.name() + " action: " + act.detail);
        const auto corr = b.verify_cochain_correspondence();
        o.require(corr.ok(), g.name() + " correspondence: " + corr.detail);
        ++modules;
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(monoids) + " extension monoids, " + std::to_string(modules) +
               " partial modules";
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::size_t groups = 0;
  for (const auto& g : builtin_catalog(16)) {
    const CohomologyEngine e(g);
    const auto& m = e.matrix();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Integer sum = 0;
      for (std::size_t r = 0; r < m.rows(); ++r) sum += m(r, c);
      if (sum != 1) o.require(false, g.name() + " column sum");
    }
    o.require(smith_invariants(m).size() == g.order(), g.name() + " rank");
    const auto& omega = e.omega();
    for (Elem x = 1; x < g.order(); ++x)
      for (Elem y = 1; y < g.order(); ++y) {
        const Elem xy = g.mul(x, y);
        const std::size_t c = omega.class_of(x, y);
        const bool closed = xy == 0 ? omega.class_of(y, x) == c
                                    : omega.class_of(y, g.inv(xy)) == c &&
                                          omega.class_of(g.inv(y), g.inv(x)) == c;
        if (!closed) o.require(false, g.name() + " orbit closure");
      }
    if (g.order() <= 6) {
      const auto& s = e.semigroup();
      for (ElementId a = 0; a < s.size(); ++a)
        for (ElementId b = 0; b < s.size(); ++b)
          if ((s.jclass_of(a) == s.jclass_of(b)) != jclass_equal(g, s.element(a), s.element(b)))
            o.require(false, g.name() + " J-class implementations disagree");
      const auto lambda = enumerate_lambda(s);
      for (const auto& i : lambda)
        for (const auto& j : lambda)
          if (epsilon(s, i).plus(epsilon(s, j), CoefficientGroup::integers()) !=
              epsilon(s, i.join(j)))
            o.require(false, g.name() + " epsilon additivity");
    }
    ++groups;
  }
  if (o.pass)
    o.detail = "column sums, rank, orbit closure over " + std::to_string(groups) +
               " groups; J-classes and epsilon up to order 6";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "Z6 Omega decomposition", 1, criterion1},
      {2, "Z6 coboundary matrix", 1, criterion2},
      {3, "Z6 Smith form and pH2", 1, criterion3},
      {4, "Z6 relative groups", 1, criterion4},
      {5, "Z6 semilattice vs reference drawing", 10, criterion5},
      {6, "pH2 torsion = abelianization, m formula", 60, criterion6},
      {7, "divisible coefficients torsion-free", 60, criterion7},
      {8, "brute-force oracle agreement", 300, criterion8},
      {9, "extension monoids and partial modules", 300, criterion9},
      {10, "invariant suite", 300, criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs < %.0fs%s", secs, c.limit_seconds,
                  in_time ? "" : " EXCEEDED");
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  ["
              << timing << "]  " << o.detail << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
