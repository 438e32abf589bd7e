#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperindex/errors.hpp"
#include "hyperindex/hypergraph.hpp"
#include "hyperindex/indices.hpp"
#include "hyperindex/io.hpp"
#include "hyperindex/modring.hpp"
#include "hyperindex/oracle.hpp"

namespace py = pybind11;
using namespace hyperindex;

namespace {

// Exact conversion: cpp_int -> python int via the decimal string.
py::object to_py_int(const BigInt& v) {
    std::string s = v.str();
    PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
    if (!obj)
        throw py::error_already_set();
    return py::reinterpret_steal<py::object>(obj);
}

py::dict report_to_dict(const IndexReport& r) {
    py::dict d;
    d["m"] = r.m;
    d["n"] = r.n;
    d["k"] = r.k;
    d["invariant_divisors"] = r.invariant_divisors;
    d["free_rank"] = r.free_rank;
    d["stabilizing_index"] = to_py_int(r.stabilizing_index);
    d["cyclic_index"] = r.cyclic_index;
    py::dict dec;
    dec["cyclic_orders"] = r.decomposition.cyclic_orders;
    dec["free_rank"] = r.decomposition.free_rank;
    d["decomposition"] = dec;
    d["method"] = method_name(r.method);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "stabilizing and cyclic indices of uniform hypergraphs";
    mod.attr("__version__") = "1.0.0";

    py::register_exception<ParseError>(mod, "FormatError", PyExc_ValueError);
    py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
    py::register_exception<CapExceededError>(mod, "CapExceededError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);

    py::class_<UniformHypergraph>(mod, "Hypergraph")
        .def(py::init<int, int, std::vector<Edge>>(), py::arg("m"), py::arg("n"),
             py::arg("edges"))
        .def_property_readonly("m", &UniformHypergraph::uniformity)
        .def_property_readonly("n", &UniformHypergraph::vertex_count)
        .def_property_readonly("k", &UniformHypergraph::edge_count)
        .def_property_readonly("edges", &UniformHypergraph::edges)
        .def(py::self == py::self)
        .def("__repr__", [](const UniformHypergraph& g) {
            return "Hypergraph(m=" + std::to_string(g.uniformity()) +
                   ", n=" + std::to_string(g.vertex_count()) +
                   ", k=" + std::to_string(g.edge_count()) + ")";
        });

    mod.def("validate", [](const UniformHypergraph& g) {
        ValidationResult v = validate(g);
        return py::make_tuple(v.ok, v.message);
    });
    mod.def("is_connected", &is_connected);

    mod.def("single_edge", &single_edge, py::arg("m"));
    mod.def("path_hypertree", &path_hypertree, py::arg("m"), py::arg("edges"));
    mod.def("random_hypertree", &random_hypertree, py::arg("m"), py::arg("edges"),
            py::arg("seed") = 0);
    mod.def("complete_hypergraph", &complete_hypergraph, py::arg("m"), py::arg("n"));
    mod.def("loose_cycle", &loose_cycle, py::arg("m"), py::arg("edges"));

    mod.def("parse_uhg",
            [](const std::string& text) { return parse_uhg(text).hypergraph; });
    mod.def("serialize_uhg", &serialize_uhg);

    mod.def("coalesce", &coalesce, py::arg("g1"), py::arg("v1"), py::arg("g2"), py::arg("v2"));
    mod.def("cartesian_product", &cartesian_product);
    mod.def("cartesian_product_n", [](const std::vector<UniformHypergraph>& factors) {
        return cartesian_product_n(factors);
    });
    mod.def("blocks", [](const UniformHypergraph& g) {
        BlockDecomposition dec = blocks(g);
        py::list parts;
        for (const Block& blk : dec.blocks) {
            py::dict d;
            d["graph"] = blk.graph;
            d["vertex_map"] = blk.vertex_map;
            parts.append(d);
        }
        py::dict out;
        out["blocks"] = parts;
        out["cut_vertices"] = dec.cut_vertices;
        return out;
    });

    mod.def("stabilizing_index", [](const UniformHypergraph& g) {
        return to_py_int(stabilizing_index(g).stabilizing_index);
    });
    mod.def("cyclic_index", [](const UniformHypergraph& g) {
        CyclicResult c = cyclic_index(g);
        return py::make_tuple(c.value, c.witness.phi);
    });
    mod.def("index_report",
            [](const UniformHypergraph& g) { return report_to_dict(stabilizing_index(g)); });
    mod.def("report_json",
            [](const UniformHypergraph& g) { return report_to_json(stabilizing_index(g)); });
    mod.def("check_coloring", [](const UniformHypergraph& g, std::int64_t ell,
                                 const std::vector<std::int64_t>& phi) {
        return check_coloring(g, ColoringWitness{ell, phi});
    });

    mod.def(
        "brute_stabilizing",
        [](const UniformHypergraph& g, std::uint64_t cap, int jobs) {
            return brute_stabilizing(g, cap, jobs);
        },
        py::arg("g"), py::arg("cap") = 1000000, py::arg("jobs") = 1);
    mod.def(
        "brute_cyclic",
        [](const UniformHypergraph& g, std::uint64_t cap, int jobs) {
            return brute_cyclic(g, cap, jobs);
        },
        py::arg("g"), py::arg("cap") = 1000000, py::arg("jobs") = 1);

    mod.def(
        "power_iteration",
        [](const UniformHypergraph& g, double tol, int max_iter) {
            SpectralEstimate est = power_iteration(g, tol, max_iter);
            py::dict d;
            d["rho"] = est.rho;
            d["perron"] = est.perron;
            d["iterations"] = est.iterations;
            d["residual"] = est.residual;
            return d;
        },
        py::arg("g"), py::arg("tol") = 1e-10, py::arg("max_iter") = 100000);
    mod.def("eigenvector_exponents", &eigenvector_exponents, py::arg("g"),
            py::arg("cap") = 1000000);
}
