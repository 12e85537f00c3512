#include "parcoh/cohomology.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

#include "parcoh/error.hpp"

namespace parcoh {

IntegerMatrix coboundary_matrix(const FiniteGroup& group, const OmegaDecomposition& omega) {
  const std::size_t n = group.order();
  IntegerMatrix m(n, omega.size());
  for (std::size_t j = 0; j < omega.size(); ++j) {
    const auto [x, y] = omega.delta(j);
    m(y, j) += 1;
    m(group.mul(x, y), j) -= 1;
    m(x, j) += 1;
  }
  return m;
}

AbelianGroupStructure specialize_coefficients(std::size_t free_count,
                                              const std::vector<std::int64_t>& mu,
                                              const AbelianGroupStructure& coefficients) {
  if (coefficients.divisible)
    return AbelianGroupStructure::canonical(free_count * coefficients.free_rank, {}, true);
  std::size_t free = free_count * coefficients.free_rank;
  std::vector<std::int64_t> cyclic;
  for (std::size_t i = 0; i < free_count; ++i)
    cyclic.insert(cyclic.end(), coefficients.torsion.begin(), coefficients.torsion.end());
  for (std::int64_t m : mu) {
    for (std::size_t r = 0; r < coefficients.free_rank; ++r) cyclic.push_back(m);
    for (std::int64_t k : coefficients.torsion) cyclic.push_back(std::gcd(k, m));
  }
  return AbelianGroupStructure::canonical(free, std::move(cyclic));
}

CohomologyEngine::CohomologyEngine(FiniteGroup group)
    : group_(std::move(group)),
      semigroup_(group_),
      omega_(omega_classes(group_, semigroup_)),
      matrix_(coboundary_matrix(group_, omega_)) {}

Ideal CohomologyEngine::ideal_from_tuples(const std::vector<std::vector<Elem>>& tuples) const {
  std::vector<ElementId> generators;
  for (const auto& tuple : tuples) {
    for (Elem g : tuple)
      if (g >= group_.order())
        throw Error(ErrorCode::BadParams, "element " + std::to_string(g) +
                                              " out of range for a group of order " +
                                              std::to_string(group_.order()));
    generators.push_back(semigroup_.pi(tuple));
  }
  return ideal_closure(semigroup_, generators);
}

std::vector<std::vector<Elem>> CohomologyEngine::generator_tuples(const Ideal& ideal) const {
  const std::size_t n = group_.order();
  std::vector<std::vector<Elem>> out;
  for (ElementId x : ideal_generators(semigroup_, ideal)) {
    const JClassId j = semigroup_.jclass_of(x);
    bool found = false;
    for (Elem a = 1; a < n && !found; ++a)
      if (semigroup_.jclass_of(semigroup_.pi({a})) == j) {
        out.push_back({a});
        found = true;
      }
    for (Elem a = 1; a < n && !found; ++a)
      for (Elem b = 1; b < n && !found; ++b) {
        const ElementId p = semigroup_.pi({a, b});
        if (p != kZero && semigroup_.jclass_of(p) == j) {
          out.push_back({a, b});
          found = true;
        }
      }
    if (!found) throw Error(ErrorCode::InternalMismatch, "J-class without a Pi generator");
  }
  std::sort(out.begin(), out.end());
  return out;
}

CohomologyReport CohomologyEngine::partial_cohomology(
    const Ideal& ideal, const AbelianGroupStructure& coefficients) const {
  const auto columns = omega_restrict(omega_, ideal);
  const IntegerMatrix reduced = matrix_.select_columns(columns);
  CohomologyReport report;
  report.group = group_.name();
  report.ideal_generators = generator_tuples(ideal);
  report.m_I = columns.size();
  for (const auto& d : smith_invariants(reduced)) report.mu.push_back(to_int64(d));
  report.n_I = report.mu.size();
  report.integral = AbelianGroupStructure::canonical(report.m_I - report.n_I, report.mu);
  report.coefficients = coefficients;
  report.structure = specialize_coefficients(report.m_I - report.n_I, report.mu, coefficients);
  return report;
}

CohomologyReport CohomologyEngine::pre_cohomology(const AbelianGroupStructure& coefficients) const {
  CohomologyReport report = partial_cohomology(Ideal::baseline(semigroup_), coefficients);
  if (report.n_I != group_.order())
    throw Error(ErrorCode::InternalMismatch,
                "coboundary matrix rank " + std::to_string(report.n_I) + " differs from |G| = " +
                    std::to_string(group_.order()));
  const auto expected = abelianization(group_);
  if (report.integral.torsion != expected.torsion)
    throw Error(ErrorCode::InternalMismatch, "torsion " + report.integral.to_string() +
                                                 " disagrees with G/[G,G] = " +
                                                 expected.to_string());
  return report;
}

Semilattice CohomologyEngine::semilattice(const AbelianGroupStructure& coefficients,
                                          std::optional<std::size_t> cap,
                                          unsigned threads) const {
  auto lambda = enumerate_lambda(semigroup_, cap);
  Semilattice out;
  out.nodes.resize(lambda.size());

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, lambda.size()));
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < lambda.size(); i += workers) {
        out.nodes[i].ideal = lambda[i];
        out.nodes[i].report = partial_cohomology(lambda[i], coefficients);
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::map<boost::dynamic_bitset<>, std::size_t> index;
  for (std::size_t i = 0; i < lambda.size(); ++i) index.emplace(lambda[i].jclasses(), i);
  for (const auto& c : omega_.classes()) {
    if (!c.pi_sim) continue;
    auto it = index.find(c.pi_sim->jclasses());
    if (it != index.end() && !out.nodes[it->second].principal_of)
      out.nodes[it->second].principal_of = c.id;
  }
  out.edges = lambda_covers(lambda);
  return out;
}

CohomologyReport pre_cohomology(const FiniteGroup& group,
                                const AbelianGroupStructure& coefficients) {
  return CohomologyEngine(group).pre_cohomology(coefficients);
}

}  // namespace parcoh
