#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "parcoh/cohomology.hpp"
#include "parcoh/error.hpp"
#include "parcoh/io.hpp"

using namespace parcoh;

namespace {

template <class F>
ParseError parse_failure(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error");
  return ParseError("", 0, "");
}

}  // namespace

TEST_CASE("group specs") {
  CHECK(parse_group_spec("cyclic:6").order() == 6);
  CHECK(parse_group_spec("dihedral:4").order() == 8);
  CHECK(parse_group_spec("symmetric:3").order() == 6);
  CHECK(parse_group_spec("quaternion").order() == 8);
  CHECK(parse_group_spec("abelian:2,2,3").order() == 12);
  const auto e = parse_failure([] { parse_group_spec("cyclik:6"); });
  CHECK(e.token() == "cyclik");
  CHECK(e.position() == 0);
  const auto f = parse_failure([] { parse_group_spec("cyclic:x"); });
  CHECK(f.token() == "x");
  CHECK(f.position() == 7);
  CHECK_THROWS_AS(parse_group_spec("cyclic:0"), Error);
}

TEST_CASE("coefficient specs") {
  CHECK(parse_coefficients("Z") == AbelianGroupStructure::integers());
  CHECK(parse_coefficients("Z/6").to_string() == "Z/6");
  CHECK(parse_coefficients("Z^2+Z/4").to_string() == "Z^2 + Z/4");
  CHECK(parse_coefficients("Z/2+Z/3").to_string() == "Z/6");
  CHECK(parse_coefficients("divisible").divisible);
  const auto e = parse_failure([] { parse_coefficients("Z+Z/x"); });
  CHECK(e.token() == "x");
  CHECK(e.position() == 4);
  CHECK_THROWS_AS(parse_coefficients("Z+"), ParseError);
  CHECK_THROWS_AS(parse_coefficients("divisible+Z"), ParseError);
}

TEST_CASE("ideal generator specs") {
  const auto t = parse_ideal_generators("(1,2);(1,3)");
  CHECK(t == std::vector<std::vector<Elem>>{{1, 2}, {1, 3}});
  CHECK(parse_ideal_generators(" ( 2 , 4 ) ; (3,3) ").size() == 2);
  CHECK(parse_ideal_generators("(1)").front() == std::vector<Elem>{1});
  const auto e = parse_failure([] { parse_ideal_generators("(1,2;(1,3)"); });
  CHECK(e.token() == ";");
  CHECK(e.position() == 4);
  CHECK_THROWS_AS(parse_ideal_generators("(1,2)(1,3)"), ParseError);
  CHECK(parse_ideal_generators("").empty());
  CHECK_THROWS_AS(parse_ideal_generators("(1,"), ParseError);
}

TEST_CASE("JSON round trips") {
  const auto g = dihedral(3);
  const auto back = group_from_json(group_to_json(g));
  CHECK(back.cayley_table() == g.cayley_table());
  CHECK(group_to_json(g).at("n") == 6);

  const CohomologyEngine e(cyclic(6));
  const auto report = e.partial_cohomology(e.ideal_from_tuples({{1, 2}, {1, 3}}),
                                           parse_coefficients("Z/6"));
  const auto json = report_to_json(report);
  for (const char* key : {"group", "ideal_generators", "m_I", "n_I", "mu", "structure"})
    CHECK(json.contains(key));
  CHECK(json.at("structure").contains("free"));
  CHECK(json.at("structure").contains("torsion"));
  CHECK(json.at("structure").contains("divisible"));
  const auto again = report_from_json(json);
  CHECK(again.mu == report.mu);
  CHECK(again.structure == report.structure);
  CHECK(again.ideal_generators == report.ideal_generators);
  CHECK(report_to_json(again) == json);
  CHECK(structure_from_json(structure_to_json(AbelianGroupStructure::canonical(3, {2, 4}))) ==
        AbelianGroupStructure::canonical(3, {2, 4}));
}

TEST_CASE("group files") {
  const auto path = std::filesystem::temp_directory_path() / "parcoh_test_group.json";
  {
    std::ofstream out(path);
    out << R"({"n":3,"table":[[0,1,2],[1,2,0],[2,0,1]]})";
  }
  CHECK(load_group_file(path).order() == 3);
  CHECK(parse_group_spec("file:" + path.string()).order() == 3);
  {
    std::ofstream out(path);
    out << R"({"n":2,"table":[[0,1],[1,1]]})";
  }
  CHECK_THROWS_AS(load_group_file(path), Error);
  std::filesystem::remove(path);
}

TEST_CASE("renderers") {
  const CohomologyEngine e(cyclic(6));
  const auto table = render_matrix_table(e.matrix());
  CHECK(table.rfind("    | w1 w2 w3 w4 w5 w6 w7 w8\n", 0) == 0);
  CHECK(table.find("dh3 |  .  .  .  2  . -1  1  .") != std::string::npos);
  const auto omega = render_omega_table(e.omega());
  CHECK(omega.find("(3,3)") != std::string::npos);
  const auto lat = e.semilattice(AbelianGroupStructure::integers());
  const auto dot = semilattice_to_dot(lat);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("label=\"N3: Z^2+Z/6\"") != std::string::npos);
  CHECK(dot.find("label=\"w8: Z+Z/6\"") != std::string::npos);
  std::size_t arrows = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++arrows;
  CHECK(arrows == 56);
  const auto json = semilattice_to_json(lat);
  CHECK(json.at("nodes").size() == 28);
  CHECK(json.at("edges").size() == 56);
}
