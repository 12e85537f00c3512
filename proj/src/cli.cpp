#include "parcoh/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parcoh/cohomology.hpp"
#include "parcoh/constructions.hpp"
#include "parcoh/error.hpp"
#include "parcoh/io.hpp"

namespace parcoh {

namespace {

struct Options {
  std::string group;
  std::string ideal;
  bool ideal_given = false;
  std::string coeff = "Z";
  std::string format = "text";
  std::size_t cap = 10000;
  std::string dot_file;
  unsigned threads = 1;
};

void add_common(CLI::App* sub, Options& o, bool with_ideal) {
  sub->add_option("--group", o.group, "cyclic:N | dihedral:N | symmetric:N | quaternion | "
                                      "abelian:k1,k2,... | file:PATH")
      ->required();
  sub->add_option("--coeff", o.coeff, "Z | Z/k | Z^r | sums with '+' | divisible")
      ->capture_default_str();
  sub->add_option("--format", o.format, "text | json | dot")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  if (with_ideal)
    sub->add_option("--ideal", o.ideal, "generator tuples, e.g. \"(1,2);(1,3)\"");
}

void require_format(const Options& o, std::initializer_list<const char*> allowed,
                    const std::string& command) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw ParseError(o.format, 0, "format not supported by '" + command + "'");
}

std::string mu_text(const std::vector<std::int64_t>& mu) {
  std::ostringstream os;
  for (std::size_t i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
  return os.str();
}

int cmd_omega(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "omega");
  const CohomologyEngine engine(parse_group_spec(o.group));
  if (o.format == "json") {
    auto doc = omega_to_json(engine.omega());
    doc["group"] = engine.group().name();
    doc["m_formula"] = m_formula(engine.group());
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  out << render_omega_table(engine.omega());
  out << "m = " << engine.omega().size() << " (closed formula " << m_formula(engine.group())
      << ")\n";
  return kExitOk;
}

int cmd_matrix(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "matrix");
  const CohomologyEngine engine(parse_group_spec(o.group));
  const auto& m = engine.matrix();
  const auto invariants = smith_invariants(m);
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_int64(m(i, j)));
      rows.push_back(row);
    }
    nlohmann::json snf = nlohmann::json::array();
    for (const auto& d : invariants) snf.push_back(to_int64(d));
    out << nlohmann::json{{"group", engine.group().name()}, {"matrix", rows}, {"snf", snf}}.dump(2)
        << '\n';
    return kExitOk;
  }
  out << render_matrix_table(m);
  out << "SNF diagonal:";
  for (const auto& d : invariants) out << ' ' << d.get_str();
  out << '\n';
  return kExitOk;
}

void print_report(const CohomologyReport& report, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << report_to_json(report).dump(2) << '\n';
    return;
  }
  out << report.structure.to_string() << '\n';
}

int cmd_precoh(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "precoh");
  const auto coeff = parse_coefficients(o.coeff);
  const CohomologyEngine engine(parse_group_spec(o.group));
  print_report(engine.pre_cohomology(coeff), o, out);
  return kExitOk;
}

int cmd_relcoh(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "relcoh");
  const auto coeff = parse_coefficients(o.coeff);
  const auto tuples = parse_ideal_generators(o.ideal);
  const CohomologyEngine engine(parse_group_spec(o.group));
  const Ideal ideal = engine.ideal_from_tuples(tuples);
  print_report(engine.partial_cohomology(require_proper(ideal), coeff), o, out);
  return kExitOk;
}

int cmd_lattice(const Options& o, std::ostream& out) {
  const auto coeff = parse_coefficients(o.coeff);
  const CohomologyEngine engine(parse_group_spec(o.group));
  const Semilattice lattice = engine.semilattice(coeff, o.cap, o.threads);
  if (!o.dot_file.empty()) {
    std::ofstream file(o.dot_file);
    if (!file) throw Error(ErrorCode::BadParams, "cannot write " + o.dot_file);
    file << semilattice_to_dot(lattice);
  }
  if (o.format == "json")
    out << semilattice_to_json(lattice).dump(2) << '\n';
  else if (o.format == "dot")
    out << semilattice_to_dot(lattice);
  else
    out << render_semilattice_text(lattice);
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "oracle");
  const auto structure = parse_coefficients(o.coeff);
  const CoefficientGroup coeff = CoefficientGroup::from_structure(structure);
  if (!coeff.is_finite())
    throw Error(ErrorCode::BadParams, "the oracle needs finite coefficients such as Z/2");
  const CohomologyEngine engine(parse_group_spec(o.group));
  std::vector<Ideal> ideals;
  if (o.ideal_given)
    ideals.push_back(require_proper(engine.ideal_from_tuples(parse_ideal_generators(o.ideal))));
  else
    ideals = enumerate_lambda(engine.semigroup(), o.cap);

  bool all_ok = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& ideal : ideals) {
    const auto snf = engine.partial_cohomology(ideal, structure).structure;
    const auto brute = brute_force_h2(engine.semigroup(), engine.omega(), ideal, coeff);
    const bool ok = snf == brute;
    all_ok = all_ok && ok;
    const auto gens = format_generators(engine.generator_tuples(ideal));
    if (o.format == "json") {
      rows.push_back({{"ideal", gens.empty() ? "N3" : gens},
                      {"snf", snf.to_string()},
                      {"brute_force", brute.to_string()},
                      {"agree", ok}});
    } else {
      out << (gens.empty() ? "N3" : gens) << "  snf=" << snf.to_string()
          << "  brute=" << brute.to_string() << "  " << (ok ? "ok" : "MISMATCH") << '\n';
    }
  }
  if (o.format == "json")
    out << nlohmann::json{{"group", engine.group().name()}, {"results", rows}, {"agree", all_ok}}
               .dump(2)
        << '\n';
  else
    out << (all_ok ? "all " : "NOT all ") << ideals.size() << " ideals agree\n";
  return all_ok ? kExitOk : kExitDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial cohomology of finite groups relative to ideals of E(G)", "parcoh"};
  app.require_subcommand(1);
  Options o;

  auto* omega = app.add_subcommand("omega", "Omega decomposition and its representatives");
  add_common(omega, o, false);
  auto* matrix = app.add_subcommand("matrix", "Coboundary matrix and its Smith diagonal");
  add_common(matrix, o, false);
  auto* precoh = app.add_subcommand("precoh", "Pre-cohomology group pH^2(G, A)");
  add_common(precoh, o, false);
  auto* relcoh = app.add_subcommand("relcoh", "Partial cohomology H^2(G, I; A)");
  add_common(relcoh, o, true);
  relcoh->get_option("--ideal")->required();
  auto* lattice = app.add_subcommand("lattice", "Semilattice H^2(G, Lambda; A)");
  add_common(lattice, o, false);
  lattice->add_option("--cap", o.cap, "maximum number of ideals")->capture_default_str();
  lattice->add_option("--dot", o.dot_file, "also write Graphviz DOT to FILE");
  lattice->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  auto* oracle = app.add_subcommand("oracle", "Brute-force cross-check for finite A");
  add_common(oracle, o, true);
  oracle->add_option("--cap", o.cap, "maximum number of ideals")->capture_default_str();
  auto* self = app.add_subcommand("selftest", "Embedded Z_6 golden suite and oracle sweep");
  bool golden_only = false;
  self->add_flag("--golden-only", golden_only, "skip the small-group oracle sweep");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::size_t position = 0;
    for (std::size_t i = 0; i < args.size(); ++i)
      if (std::string(e.what()).find(args[i]) != std::string::npos) {
        position = i + 1;
        break;
      }
    err << "parse error: " << e.what();
    if (position) err << " (argument " << position << ", token '" << args[position - 1] << "')";
    err << '\n';
    return kExitParseError;
  }
  o.ideal_given = !o.ideal.empty() || (oracle->parsed() && oracle->count("--ideal") > 0);

  try {
    if (omega->parsed()) return cmd_omega(o, out);
    if (matrix->parsed()) return cmd_matrix(o, out);
    if (precoh->parsed()) return cmd_precoh(o, out);
    if (relcoh->parsed()) return cmd_relcoh(o, out);
    if (lattice->parsed()) return cmd_lattice(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
    if (self->parsed()) {
      SelftestOptions options;
      options.golden_only = golden_only;
      return selftest(out, options) ? kExitOk : kExitDomainError;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitParseError;
}

// --- selftest -------------------------------------------------------------------

namespace {

const char* const kGoldenRepresentatives[] = {"(0,0)", "(1,5)", "(2,4)", "(3,3)",
                                              "(1,1)", "(1,2)", "(1,3)", "(2,2)"};

const long kGoldenMatrix[6][8] = {
    {1, -1, -1, -1, 0, 0, 0, 0},  {0, 1, 0, 0, 2, 1, 1, 0},  {0, 0, 1, 0, -1, 1, 0, 2},
    {0, 0, 0, 2, 0, -1, 1, 0},    {0, 0, 1, 0, 0, 0, -1, -1}, {0, 1, 0, 0, 0, 0, 0, 0},
};

const char* const kGoldenMatrixTable =
    "    | w1 w2 w3 w4 w5 w6 w7 w8\n"
    "----+------------------------\n"
    "dh0 |  1 -1 -1 -1  .  .  .  .\n"
    "dh1 |  .  1  .  .  2  1  1  .\n"
    "dh2 |  .  .  1  . -1  1  .  2\n"
    "dh3 |  .  .  .  2  . -1  1  .\n"
    "dh4 |  .  .  1  .  .  . -1 -1\n"
    "dh5 |  .  1  .  .  .  .  .  .\n";

class Reporter {
 public:
  explicit Reporter(std::ostream& out) : out_(out) {}
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    out_ << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out_ << ": " << detail;
    out_ << '\n';
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }

 private:
  std::ostream& out_;
  bool ok_ = true;
};

std::string first_line_difference(const std::string& expected, const std::string& actual) {
  std::istringstream a(expected), b(actual);
  std::string la, lb;
  for (std::size_t line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) return "";
    if (la != lb || ha != hb)
      return "line " + std::to_string(line) + ": expected '" + (ha ? la : "") + "', got '" +
             (hb ? lb : "") + "'";
  }
}

}  // namespace

bool selftest(std::ostream& out, const SelftestOptions& options) {
  Reporter r(out);
  try {
    const CohomologyEngine engine(cyclic(6));
    const auto Z = AbelianGroupStructure::integers();

    {
      std::string detail;
      const auto& omega = engine.omega();
      if (omega.size() != 8) detail = "expected 8 classes, got " + std::to_string(omega.size());
      for (std::size_t j = 0; j < omega.size() && j < 8 && detail.empty(); ++j) {
        const auto [x, y] = omega.delta(j);
        const std::string rep = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
        if (rep != kGoldenRepresentatives[j])
          detail = "w" + std::to_string(j + 1) + ": expected " + kGoldenRepresentatives[j] +
                   ", got " + rep;
      }
      r.check("Z6 omega representatives", detail.empty(), detail);
    }

    IntegerMatrix m = engine.matrix();
    if (options.tamper_matrix) options.tamper_matrix(m);
    {
      std::string detail;
      if (m.rows() != 6 || m.cols() != 8) detail = "matrix shape differs from 6x8";
      for (std::size_t i = 0; i < 6 && detail.empty(); ++i)
        for (std::size_t j = 0; j < 8 && detail.empty(); ++j)
          if (m(i, j) != kGoldenMatrix[i][j])
            detail = "first difference at (row " + std::to_string(i) + ", column " +
                     std::to_string(j) + "): expected " + std::to_string(kGoldenMatrix[i][j]) +
                     ", got " + m(i, j).get_str();
      r.check("Z6 coboundary matrix entries", detail.empty(), detail);
      const std::string table = render_matrix_table(m);
      r.check("Z6 coboundary matrix table", table == kGoldenMatrixTable,
              first_line_difference(kGoldenMatrixTable, table));
    }
    {
      const auto snf = smith_normal_form(m);
      std::vector<std::string> diag;
      for (const auto& d : snf.invariants()) diag.push_back(d.get_str());
      const std::vector<std::string> expected{"1", "1", "1", "1", "1", "6"};
      std::string got;
      for (const auto& d : diag) got += d + " ";
      r.check("Z6 Smith diagonal 1 1 1 1 1 6", diag == expected, "got " + got);
      r.check("Z6 Smith transforms P M Q = D", snf.P * m * snf.Q == snf.D);
    }
    {
      const auto pre = engine.pre_cohomology(Z).structure.to_string();
      r.check("pH2(Z6, Z) = Z^2 + Z/6", pre == "Z^2 + Z/6", "got " + pre);
      const auto a = engine.partial_cohomology(engine.ideal_from_tuples({{1, 2}, {1, 3}}), Z);
      const bool mu_ok = a.mu.size() >= 2 && a.mu[a.mu.size() - 2] == 2 && a.mu.back() == 6;
      r.check("H2(Z6, <(1,2),(1,3)>; Z) = Z/2 + Z/6",
              a.structure.to_string() == "Z/2 + Z/6" && mu_ok,
              "got " + a.structure.to_string() + " mu=" + mu_text(a.mu));
      const auto b = engine.partial_cohomology(engine.ideal_from_tuples({{2, 4}, {3, 3}}), Z);
      r.check("H2(Z6, <(2,4),(3,3)>; Z) = 0", b.structure.is_trivial(),
              "got " + b.structure.to_string());
    }
    {
      const auto lattice = engine.semilattice(Z);
      r.check("Z6 Lambda has 28 ideals", lattice.nodes.size() == 28,
              "got " + std::to_string(lattice.nodes.size()));
      const std::pair<const char*, const char*> expected[] = {
          {"w2", "Z/6"},   {"w3", "Z/2"},   {"w4", "Z/6"},   {"w5", "Z+Z/6"},
          {"w6", "Z+Z/6"}, {"w7", "Z+Z/6"}, {"w8", "Z+Z/6"},
      };
      std::string detail;
      for (const auto& [label, structure] : expected) {
        bool found = false;
        for (const auto& node : lattice.nodes)
          if (node.principal_of && "w" + std::to_string(*node.principal_of + 1) == label) {
            found = true;
            if (node.report.structure.to_string(true) != structure && detail.empty())
              detail = std::string(label) + ": expected " + structure + ", got " +
                       node.report.structure.to_string(true);
          }
        if (!found && detail.empty()) detail = std::string(label) + " missing";
      }
      const auto& bottom = lattice.nodes.front();
      if (detail.empty() && bottom.report.structure.to_string(true) != "Z^2+Z/6")
        detail = "N3: got " + bottom.report.structure.to_string(true);
      if (detail.empty() && !lattice.nodes.back().report.structure.is_trivial())
        detail = "largest ideal: got " + lattice.nodes.back().report.structure.to_string();
      r.check("Z6 labeled lattice nodes", detail.empty(), detail);
    }

    if (!options.golden_only) {
      std::string detail;
      for (const auto& group : builtin_catalog(16)) {
        const CohomologyEngine e(group);
        try {
          e.pre_cohomology(Z);
          if (static_cast<std::int64_t>(e.omega().size()) != m_formula(group))
            detail = group.name() + ": |Omega| differs from the closed formula";
        } catch (const Error& err) {
          detail = group.name() + ": " + err.what();
        }
        if (!detail.empty()) break;
      }
      r.check("pH2 torsion = G/[G,G] for builtin groups up to order 16", detail.empty(), detail);

      detail.clear();
      for (const auto& group : builtin_catalog(3)) {
        const CohomologyEngine e(group);
        for (std::int64_t k : {2, 3}) {
          const auto coeff = CoefficientGroup::finite({k});
          for (const auto& ideal : enumerate_lambda(e.semigroup())) {
            const auto snf = e.partial_cohomology(ideal, coeff.structure()).structure;
            const auto brute = brute_force_h2(e.semigroup(), e.omega(), ideal, coeff);
            if (snf != brute && detail.empty())
              detail = group.name() + " " + format_generators(e.generator_tuples(ideal)) +
                       " Z/" + std::to_string(k) + ": SNF " + snf.to_string() + ", brute force " +
                       brute.to_string();
          }
        }
      }
      r.check("brute-force oracle agrees for groups up to order 3", detail.empty(), detail);
    }
  } catch (const std::exception& e) {
    r.check("selftest completed", false, e.what());
  }
  out << (r.ok() ? "selftest passed\n" : "selftest FAILED\n");
  return r.ok();
}

}  // namespace parcoh
