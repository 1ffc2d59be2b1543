#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"

#include "mwb/curvature.hpp"
#include "mwb/hochschild.hpp"
#include "mwb/io.hpp"
#include "mwb/linfty.hpp"
#include "mwb/operad_complex.hpp"
#include "mwb/tree.hpp"

namespace py = pybind11;
using namespace mwb;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(r));
}

py::list homology_list(const std::vector<DegreeHomology>& h) {
  py::list out;
  for (const auto& d : h) {
    py::dict row;
    row["degree"] = d.degree;
    row["space_dim"] = d.space_dim;
    row["dim"] = d.dim;
    row["truncation_affected"] = d.truncation_affected;
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_mwb, m) {
  m.doc() = "Bindings for the mwb core library";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Tree>(m, "Tree")
      .def(py::init([](const std::string& text) { return parse_tree(text); }), py::arg("text"))
      .def_property_readonly("leaves", &Tree::leaves)
      .def_property_readonly("edges", &Tree::edges)
      .def("edge_count", &Tree::edge_count)
      .def("__str__", [](const Tree& t) { return to_string(t); })
      .def("__repr__", [](const Tree& t) { return "Tree('" + to_string(t) + "')"; })
      .def("__eq__", [](const Tree& a, const Tree& b) { return a == b; })
      .def("__hash__", [](const Tree& t) { return py::hash(py::str(to_string(t))); });

  m.def(
      "enumerate_trees", [](std::size_t arity, std::size_t edges) { return enumerate_trees(numbered_leaves(arity), edges); },
      py::arg("arity"), py::arg("edges"), "Trees on leaves 1..arity with the given number of internal edges.");
  m.def("compose", &compose, py::arg("upper"), py::arg("at"), py::arg("lower"));

  m.def(
      "l_square_zero", [](std::size_t arity) { return !verify_square_zero(build_L_complex(arity)).has_value(); },
      py::arg("arity"));
  m.def(
      "l_homology", [](std::size_t arity) { return homology_list(L_homology(arity)); }, py::arg("arity"));

  m.def(
      "ce_homology",
      [](const std::string& path, std::size_t cutoff) {
        const auto g = parse_linfty(load_input(path).json).structure;
        return homology_list(homology_dims(ce_complex(g, cutoff).complex));
      },
      py::arg("path"), py::arg("cutoff"), "CE homology of the L-infinity or dg Lie file at path.");

  m.def(
      "hochschild_homology",
      [](const std::string& path, std::size_t max_degree, const std::string& variant) {
        return homology_list(hochschild_homology(parse_algebra(load_input(path).json), max_degree,
                                                 parse_variant(variant)));
      },
      py::arg("path"), py::arg("max_degree"), py::arg("variant") = "standard");

  m.def(
      "certify_trace",
      [](const std::string& path, std::size_t max_k, const std::string& variant) {
        const auto c = certify_chain_map(parse_algebra(load_input(path).json), max_k, parse_variant(variant));
        py::list degrees;
        for (const auto& d : c.degrees) {
          py::dict row;
          row["k"] = d.k;
          row["kind"] = d.kind == VerdictKind::kProportional ? "proportional"
                        : d.kind == VerdictKind::kVacuous    ? "vacuous"
                                                             : "failure";
          row["ratio"] = fraction(d.ratio);
          row["witness"] = d.witness ? py::object(py::str(d.witness->wedge)) : py::object(py::none());
          degrees.append(row);
        }
        py::list normalization;
        for (const auto& r : c.normalization) normalization.append(fraction(r));
        py::dict out;
        out["success"] = c.success;
        out["degrees"] = degrees;
        out["normalization"] = normalization;
        return out;
      },
      py::arg("path"), py::arg("max_k") = 3, py::arg("variant") = "standard");

  m.def(
      "verify_one_dimensional",
      [](const std::string& v_path, const std::string& manifold_path) {
        const auto V = parse_paired_space(load_input(v_path).json);
        const auto M = parse_manifold(load_input(manifold_path).json).manifold;
        const auto r = verify_one_dimensional(V, M);
        py::dict out;
        out["total_dim"] = r.total_dim;
        out["nonzero_degrees"] = r.nonzero_degrees;
        out["status"] = to_string(r.status);
        out["regime"] = to_string(r.regime);
        out["window"] = py::make_tuple(r.lo, r.hi);
        out["one_dimensional"] = r.one_dimensional();
        return out;
      },
      py::arg("v_path"), py::arg("manifold_path"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the mwb command line and returns (exit code, stdout, stderr).");
}
