#include "parcoh/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "parcoh/error.hpp"

namespace parcoh {

namespace {

using nlohmann::json;

// Cursor over a spec string; positions are byte offsets into the original.
class Scanner {
 public:
  Scanner(std::string_view text, std::size_t offset = 0) : text_(text), offset_(offset) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  std::size_t position() const { return offset_ + pos_; }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
  }
  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  std::uint64_t number(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 12) {
      pos_ = start;
      fail(std::string(what) + " too large");
    }
    return std::stoull(digits);
  }
  [[noreturn]] void fail(const std::string& message) {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) &&
           (end == pos_ || std::isalnum(static_cast<unsigned char>(text_[end]))))
      ++end;
    std::string token = pos_ < text_.size() ? std::string(text_.substr(pos_, end - pos_))
                                            : std::string("<end>");
    throw ParseError(token, position(), message);
  }

 private:
  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

std::vector<std::size_t> parse_number_list(std::string_view text, std::size_t offset) {
  Scanner s(text, offset);
  std::vector<std::size_t> out;
  do {
    out.push_back(static_cast<std::size_t>(s.number("a positive integer")));
  } while (s.accept(','));
  if (!s.done()) s.fail("unexpected input after parameter list");
  return out;
}

std::string pad(const std::string& text, std::size_t width) {
  if (text.size() >= width) return text;
  return std::string(width - text.size(), ' ') + text;
}

std::string class_label(std::size_t id) { return "w" + std::to_string(id + 1); }

}  // namespace

FiniteGroup parse_group_spec(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string family(spec.substr(0, colon));
  if (family == "quaternion") {
    if (colon != std::string_view::npos)
      throw ParseError(std::string(spec.substr(colon)), colon, "quaternion takes no parameters");
    return quaternion();
  }
  static const char* const kFamilies[] = {"cyclic", "dihedral", "symmetric", "abelian", "file"};
  if (std::find(std::begin(kFamilies), std::end(kFamilies), family) == std::end(kFamilies))
    throw ParseError(family.empty() ? std::string("<empty>") : family, 0,
                     "unknown group family (expected cyclic, dihedral, symmetric, quaternion, "
                     "abelian or file)");
  if (colon == std::string_view::npos)
    throw ParseError(family, family.size(), "expected ':' and parameters after the family");
  const std::string_view rest = spec.substr(colon + 1);
  if (family == "file") {
    if (rest.empty()) throw ParseError("<end>", colon + 1, "expected a file path");
    return load_group_file(std::filesystem::path(std::string(rest)));
  }
  const auto params = parse_number_list(rest, colon + 1);
  if (family != "abelian" && params.size() != 1)
    throw ParseError(std::string(rest), colon + 1, family + " takes exactly one parameter");
  return builtin(family, params);
}

AbelianGroupStructure parse_coefficients(std::string_view spec) {
  Scanner s(spec);
  if (s.done()) s.fail("empty coefficient group");
  std::size_t free = 0;
  std::vector<std::int64_t> cyclic;
  bool divisible = false, other_terms = false;
  do {
    const std::size_t term_start = s.position();
    if (s.peek() == '0') {
      s.number("0");
      other_terms = true;
      continue;
    }
    const std::string word = s.word();
    if (word == "divisible") {
      std::size_t copies = 1;
      if (s.accept('^')) copies = s.number("an exponent");
      free += copies;
      divisible = true;
      continue;
    }
    if (word != "Z") {
      if (word.empty()) s.fail("expected 'Z', 'Z/k' or 'divisible'");
      throw ParseError(word, term_start, "expected 'Z', 'Z/k' or 'divisible'");
    }
    other_terms = true;
    if (s.accept('/')) {
      const auto k = static_cast<std::int64_t>(s.number("a cyclic order"));
      if (k == 0) {
        free += 1;  // Z/0 = Z
      } else {
        std::size_t copies = 1;
        if (s.accept('^')) copies = s.number("an exponent");
        cyclic.insert(cyclic.end(), copies, k);
      }
    } else {
      std::size_t copies = 1;
      if (s.accept('^')) copies = s.number("an exponent");
      free += copies;
    }
  } while (s.accept('+'));
  if (!s.done()) s.fail("unexpected input in coefficient group");
  if (divisible && other_terms)
    throw ParseError(std::string(spec), 0, "'divisible' cannot be combined with other terms");
  return AbelianGroupStructure::canonical(free, std::move(cyclic), divisible);
}

std::vector<std::vector<Elem>> parse_ideal_generators(std::string_view spec) {
  Scanner s(spec);
  std::vector<std::vector<Elem>> out;
  if (s.done()) return out;
  do {
    s.expect('(', "to open a generator tuple");
    std::vector<Elem> tuple;
    do {
      tuple.push_back(static_cast<Elem>(s.number("an element index")));
    } while (s.accept(','));
    s.expect(')', "to close a generator tuple");
    out.push_back(std::move(tuple));
  } while (s.accept(';'));
  if (!s.done()) s.fail("expected ';' between generator tuples");
  return out;
}

FiniteGroup group_from_json(const json& document, std::string name) {
  if (!document.is_object()) throw ParseError("<document>", 0, "expected a JSON object");
  if (!document.contains("n") || !document["n"].is_number_unsigned())
    throw ParseError("n", 0, "expected a non-negative integer field 'n'");
  if (!document.contains("table") || !document["table"].is_array())
    throw ParseError("table", 0, "expected an array field 'table'");
  const auto n = document["n"].get<std::size_t>();
  std::vector<std::vector<Elem>> table;
  for (const auto& row : document["table"]) {
    if (!row.is_array()) throw ParseError("table", 0, "table rows must be arrays");
    std::vector<Elem> values;
    for (const auto& entry : row) {
      if (!entry.is_number_unsigned()) throw ParseError("table", 0, "entries must be integers");
      values.push_back(entry.get<Elem>());
    }
    table.push_back(std::move(values));
  }
  if (table.size() != n)
    throw Error(ErrorCode::BadParams, "n = " + std::to_string(n) + " but the table has " +
                                          std::to_string(table.size()) + " rows");
  return FiniteGroup::from_cayley_table(table, std::move(name));
}

FiniteGroup load_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadParams, "cannot read group file " + path.string());
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ParseError(path.filename().string(), err.byte, "malformed JSON");
  }
  return group_from_json(document, "file:" + path.filename().string());
}

json group_to_json(const FiniteGroup& group) {
  return json{{"n", group.order()}, {"table", group.cayley_table()}};
}

std::string format_generators(const std::vector<std::vector<Elem>>& tuples) {
  std::ostringstream os;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    os << (i ? ";" : "") << "(";
    for (std::size_t k = 0; k < tuples[i].size(); ++k) os << (k ? "," : "") << tuples[i][k];
    os << ")";
  }
  return os.str();
}

std::string render_omega_table(const OmegaDecomposition& omega) {
  std::vector<std::string> labels, reps, sizes, kinds;
  for (const auto& c : omega.classes()) {
    labels.push_back(class_label(c.id));
    reps.push_back("(" + std::to_string(c.representative.first) + "," +
                   std::to_string(c.representative.second) + ")");
    sizes.push_back(std::to_string(c.members.size()));
    kinds.push_back(c.kind == OmegaKind::Identity      ? "id"
                    : c.kind == OmegaKind::InversePair ? "inv"
                                                       : "gen");
  }
  std::ostringstream os;
  auto line = [&](const std::string& head, const std::vector<std::string>& cells) {
    std::ostringstream row;
    row << std::left << std::setw(5) << head << "|";
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::size_t width = std::max(labels[j].size(), reps[j].size());
      row << ' ' << std::left << std::setw(static_cast<int>(width)) << cells[j];
    }
    std::string text = row.str();
    text.erase(text.find_last_not_of(' ') + 1);
    os << text << '\n';
  };
  line("", labels);
  line("D", reps);
  line("kind", kinds);
  line("size", sizes);
  return os.str();
}

json omega_to_json(const OmegaDecomposition& omega) {
  json classes = json::array();
  for (const auto& c : omega.classes()) {
    json members = json::array();
    for (const auto& [x, y] : c.members) members.push_back({x, y});
    classes.push_back({{"label", class_label(c.id)},
                       {"representative", {c.representative.first, c.representative.second}},
                       {"kind", to_string(c.kind)},
                       {"members", members}});
  }
  return json{{"m", omega.size()}, {"classes", classes}};
}

std::string render_matrix_table(const IntegerMatrix& matrix) {
  std::size_t width = 3;
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      width = std::max(width, matrix(i, j).get_str().size() + 1);
  std::ostringstream os;
  const std::size_t head_width = std::max<std::size_t>(3, 2 + std::to_string(matrix.rows()).size());
  os << std::string(head_width, ' ') << " |";
  for (std::size_t j = 0; j < matrix.cols(); ++j) os << pad(class_label(j), width);
  os << '\n' << std::string(head_width + 1, '-') << '+'
     << std::string(width * matrix.cols(), '-') << '\n';
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    os << std::left << std::setw(static_cast<int>(head_width)) << ("dh" + std::to_string(i))
       << std::right << " |";
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      const auto& v = matrix(i, j);
      os << pad(sgn(v) == 0 ? "." : v.get_str(), width);
    }
    os << '\n';
  }
  return os.str();
}

json structure_to_json(const AbelianGroupStructure& structure) {
  return json{{"free", structure.free_rank},
              {"torsion", structure.torsion},
              {"divisible", structure.divisible}};
}

AbelianGroupStructure structure_from_json(const json& document) {
  try {
    return AbelianGroupStructure::canonical(document.at("free").get<std::size_t>(),
                                            document.at("torsion").get<std::vector<std::int64_t>>(),
                                            document.at("divisible").get<bool>());
  } catch (const json::exception& err) {
    throw ParseError("structure", 0, std::string("malformed structure: ") + err.what());
  }
}

json report_to_json(const CohomologyReport& report) {
  return json{{"group", report.group},
              {"ideal_generators", report.ideal_generators},
              {"m_I", report.m_I},
              {"n_I", report.n_I},
              {"mu", report.mu},
              {"coefficients", structure_to_json(report.coefficients)},
              {"structure", structure_to_json(report.structure)}};
}

CohomologyReport report_from_json(const json& document) {
  CohomologyReport report;
  try {
    report.group = document.at("group").get<std::string>();
    report.ideal_generators =
        document.at("ideal_generators").get<std::vector<std::vector<Elem>>>();
    report.m_I = document.at("m_I").get<std::size_t>();
    report.n_I = document.at("n_I").get<std::size_t>();
    report.mu = document.at("mu").get<std::vector<std::int64_t>>();
  } catch (const json::exception& err) {
    throw ParseError("report", 0, std::string("malformed report: ") + err.what());
  }
  if (report.mu.size() != report.n_I || report.n_I > report.m_I)
    throw Error(ErrorCode::DimensionMismatch, "mu, m_I and n_I are inconsistent");
  report.integral = AbelianGroupStructure::canonical(report.m_I - report.n_I, report.mu);
  report.coefficients = document.contains("coefficients")
                            ? structure_from_json(document.at("coefficients"))
                            : AbelianGroupStructure::integers();
  report.structure = structure_from_json(document.at("structure"));
  return report;
}

std::string node_label(const SemilatticeNode& node) {
  const std::string structure = node.report.structure.to_string(true);
  if (node.ideal.jclass_count() == 0) return "N3: " + structure;
  if (node.principal_of) return class_label(*node.principal_of) + ": " + structure;
  return structure;
}

std::string semilattice_to_dot(const Semilattice& lattice) {
  std::ostringstream os;
  os << "digraph lambda {\n  rankdir=TB;\n  node [shape=box];\n  edge [arrowhead=none];\n";
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << node_label(lattice.nodes[i]) << "\"];\n";
  for (const auto& [from, to] : lattice.edges) os << "  n" << from << " -> n" << to << ";\n";
  os << "}\n";
  return os.str();
}

std::string render_semilattice_text(const Semilattice& lattice) {
  std::vector<std::vector<std::size_t>> covers(lattice.nodes.size());
  for (const auto& [from, to] : lattice.edges) covers[from].push_back(to);
  std::ostringstream os;
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i) {
    const auto& node = lattice.nodes[i];
    const auto& r = node.report;
    std::string gens = format_generators(r.ideal_generators);
    os << "I" << i << "  " << (gens.empty() ? "N3" : gens) << "  " << r.structure.to_string();
    if (node.principal_of) os << "  [" << class_label(*node.principal_of) << "]";
    os << "  m_I=" << r.m_I << " n_I=" << r.n_I << " mu=";
    for (std::size_t k = 0; k < r.mu.size(); ++k) os << (k ? "," : "") << r.mu[k];
    if (!covers[i].empty()) {
      os << "  covered by";
      for (auto j : covers[i]) os << " I" << j;
    }
    os << '\n';
  }
  return os.str();
}

json semilattice_to_json(const Semilattice& lattice) {
  json nodes = json::array();
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i) {
    const auto& node = lattice.nodes[i];
    json entry = report_to_json(node.report);
    entry["index"] = i;
    entry["label"] = node_label(node);
    entry["principal_of"] =
        node.principal_of ? json(class_label(*node.principal_of)) : json(nullptr);
    nodes.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const auto& [from, to] : lattice.edges) edges.push_back({from, to});
  return json{{"nodes", nodes}, {"edges", edges}};
}

}  // namespace parcoh
