#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "parcoh/cohomology.hpp"
#include "parcoh/error.hpp"
#include "parcoh/io.hpp"

namespace py = pybind11;
using namespace parcoh;

namespace {

py::object to_python(const nlohmann::json& document) {
  return py::module_::import("json").attr("loads")(document.dump());
}

std::vector<std::vector<long>> matrix_rows(const IntegerMatrix& m) {
  std::vector<std::vector<long>> rows(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = to_int64(m(r, c));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_parcoh, m) {
  m.doc() = "Partial cohomology of finite groups";

  static py::exception<Error> error(m, "ParcohError");
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<FiniteGroup>(m, "Group")
      .def_static("parse", [](const std::string& spec) { return parse_group_spec(spec); },
                  py::arg("spec"))
      .def_static("from_table",
                  [](const std::vector<std::vector<Elem>>& table, const std::string& name) {
                    return FiniteGroup::from_cayley_table(table, name);
                  },
                  py::arg("table"), py::arg("name") = "table")
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("name", &FiniteGroup::name)
      .def("cayley_table", &FiniteGroup::cayley_table)
      .def("__repr__", [](const FiniteGroup& g) { return "<Group " + g.name() + ">"; });

  py::class_<CohomologyEngine>(m, "Engine")
      .def(py::init<FiniteGroup>(), py::arg("group"))
      .def("omega_representatives",
           [](const CohomologyEngine& e) {
             std::vector<std::pair<Elem, Elem>> reps;
             for (const auto& c : e.omega().classes()) reps.push_back(c.representative);
             return reps;
           })
      .def("coboundary_matrix", [](const CohomologyEngine& e) { return matrix_rows(e.matrix()); })
      .def("pre_cohomology",
           [](const CohomologyEngine& e, const std::string& coeff) {
             return to_python(report_to_json(e.pre_cohomology(parse_coefficients(coeff))));
           },
           py::arg("coeff") = "Z")
      .def("partial_cohomology",
           [](const CohomologyEngine& e, const std::string& ideal, const std::string& coeff) {
             const Ideal i = e.ideal_from_tuples(parse_ideal_generators(ideal));
             return to_python(report_to_json(e.partial_cohomology(i, parse_coefficients(coeff))));
           },
           py::arg("ideal"), py::arg("coeff") = "Z")
      .def("lattice",
           [](const CohomologyEngine& e, const std::string& coeff, std::size_t cap) {
             Semilattice s;
             {
               py::gil_scoped_release release;
               s = e.semilattice(parse_coefficients(coeff), cap);
             }
             return to_python(semilattice_to_json(s));
           },
           py::arg("coeff") = "Z", py::arg("cap") = 10000)
      .def("lattice_dot",
           [](const CohomologyEngine& e, const std::string& coeff, std::size_t cap) {
             return semilattice_to_dot(e.semilattice(parse_coefficients(coeff), cap));
           },
           py::arg("coeff") = "Z", py::arg("cap") = 10000);

  m.def("pre_cohomology",
        [](const std::string& group, const std::string& coeff) {
          return to_python(
              report_to_json(CohomologyEngine(parse_group_spec(group))
                                 .pre_cohomology(parse_coefficients(coeff))));
        },
        py::arg("group"), py::arg("coeff") = "Z");
}
