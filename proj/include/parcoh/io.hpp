#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "parcoh/cohomology.hpp"
#include "parcoh/group.hpp"
#include "parcoh/omega.hpp"
#include "parcoh/zlinalg.hpp"

namespace parcoh {

// Grammars. Every parser throws ParseError naming the token and its offset.

/// cyclic:N | dihedral:N | symmetric:N | quaternion | abelian:k1,k2,... | file:PATH
FiniteGroup parse_group_spec(std::string_view spec);

/// Z | Z/k | Z^r | sums with '+' | divisible
AbelianGroupStructure parse_coefficients(std::string_view spec);

/// "(1,2);(1,3)" -> {{1,2},{1,3}}; "(g)" is Pi(g); empty string -> no tuples.
std::vector<std::vector<Elem>> parse_ideal_generators(std::string_view spec);

/// {"n": int, "table": [[int, ...], ...]}
FiniteGroup group_from_json(const nlohmann::json& document, std::string name = "table");
FiniteGroup load_group_file(const std::filesystem::path& path);
nlohmann::json group_to_json(const FiniteGroup& group);

// Rendering.

std::string format_generators(const std::vector<std::vector<Elem>>& tuples);

/// Representative table:  "  | w1    w2 ..." / "D | (0,0) (1,5) ...".
std::string render_omega_table(const OmegaDecomposition& omega);
nlohmann::json omega_to_json(const OmegaDecomposition& omega);

/// Coboundary matrix in the layout  "dh0 |  1 -1 -1 -1  .  .  .  ."
std::string render_matrix_table(const IntegerMatrix& matrix);

nlohmann::json structure_to_json(const AbelianGroupStructure& structure);
AbelianGroupStructure structure_from_json(const nlohmann::json& document);

/// {group, ideal_generators, m_I, n_I, mu, structure: {free, torsion, divisible}}
nlohmann::json report_to_json(const CohomologyReport& report);
CohomologyReport report_from_json(const nlohmann::json& document);

std::string semilattice_to_dot(const Semilattice& lattice);
std::string render_semilattice_text(const Semilattice& lattice);
nlohmann::json semilattice_to_json(const Semilattice& lattice);

/// "w5: Z+Z/6" style label used in DOT output.
std::string node_label(const SemilatticeNode& node);

}  // namespace parcoh
