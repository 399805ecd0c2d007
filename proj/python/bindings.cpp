#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triflow/families.hpp"
#include "triflow/flows.hpp"
#include "triflow/graph_io.hpp"
#include "triflow/solver.hpp"
#include "triflow/sweep.hpp"

namespace py = pybind11;
using namespace triflow;

namespace {

SignedGraph make_graph(int n, const std::vector<std::tuple<int, int, int>> & edges)
{
    std::vector<Edge> es;
    for (auto [u, v, s] : edges) {
        if (s != 1 && s != -1)
            throw PreconditionError("sign must be +1 or -1");
        es.push_back({u, v, s < 0 ? Sign::negative : Sign::positive});
    }
    return SignedGraph(n, std::move(es));
}

py::dict search_dict(const SearchOutcome & r)
{
    py::dict d;
    d["status"] = to_string(r.status);
    d["nodes"] = r.nodes_explored;
    d["values"] = r.witness ? py::cast(r.witness->values) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Nowhere-zero flows on signed graphs";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<GatedError>(m, "GatedError", PyExc_RuntimeError);
    py::register_exception<LemmaViolation>(m, "LemmaViolation", PyExc_RuntimeError);

    py::class_<SignedGraph>(m, "SignedGraph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &SignedGraph::vertex_count)
        .def_property_readonly("m", &SignedGraph::edge_count)
        .def_property_readonly("negative_count", &SignedGraph::negative_count)
        .def("edges", [](const SignedGraph & g) {
            std::vector<std::tuple<int, int, int>> out;
            for (const auto & e : g.edges())
                out.emplace_back(e.u, e.v, to_int(e.sign));
            return out;
        })
        .def("degree", &SignedGraph::degree)
        .def("__str__", [](const SignedGraph & g) { return serialize_graph(g); })
        .def("__repr__", [](const SignedGraph & g) {
            return "<SignedGraph n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("parse_graph", [](const std::string & text) { return parse_graph(text); });
    m.def("serialize_graph", &serialize_graph);

    m.def("w5_star", &w5_star);
    m.def("g2t", &g2t, py::arg("t"));
    m.def("wheel", [](int n, const std::string & p) { return wheel(n, p); }, py::arg("n"), py::arg("pattern") = "pos");
    m.def("family_graph", [](const std::string & s) { return family_graph(s); });
    m.def("catalog_names", &catalog_names);
    m.def("catalog_graph", [](const std::string & s) { return catalog_graph(s); });

    m.def("is_balanced", [](const SignedGraph & g) { return is_balanced(g).balanced; });
    m.def("is_triangularly_connected", [](const SignedGraph & g) { return is_triangularly_connected(g); });
    m.def("triangle_count", [](const SignedGraph & g) { return triangles(g).size(); });
    m.def("is_flow_admissible", [](const SignedGraph & g) {
        auto r = is_flow_admissible(g);
        py::dict d;
        d["admissible"] = r.admissible;
        d["condition2"] = r.condition2;
        d["condition3"] = r.condition3;
        d["reason"] = r.reason;
        return d;
    });

    m.def("search_int_knzf", [](const SignedGraph & g, int k, std::uint64_t budget) {
        SearchOutcome r;
        {
            py::gil_scoped_release nogil;
            r = search_int_knzf(g, k, budget);
        }
        return search_dict(r);
    }, py::arg("g"), py::arg("k"), py::arg("budget") = default_search_budget);
    m.def("search_mod_knzf", [](const SignedGraph & g, int k, std::uint64_t budget) {
        return search_dict(search_mod_knzf(g, k, budget));
    }, py::arg("g"), py::arg("k"), py::arg("budget") = default_search_budget);

    m.def("verify_flow", [](const SignedGraph & g, const std::vector<int> & values, int k, bool modular) {
        Flow f{default_orientation(g), values, k, modular ? FlowKind::modular : FlowKind::integer};
        auto v = verify_flow(g, f);
        py::dict d;
        d["valid"] = v.valid();
        d["nowhere_zero"] = v.nowhere_zero;
        d["conservation_violations"] = v.conservation_violations;
        d["bound_violations"] = v.bound_violations;
        return d;
    }, py::arg("g"), py::arg("values"), py::arg("k"), py::arg("modular") = false);

    m.def("construct_4nzf", [](const SignedGraph & g) {
        auto r = construct_4nzf(g);
        py::dict d;
        d["route"] = to_string(r.route);
        d["exception"] = r.is_exception;
        d["values"] = r.flow ? py::cast(to_default(g, *r.flow).values) : py::none();
        return d;
    });
    m.def("is_w5_star", &is_w5_star);
    m.def("two_nzf_eulerian", [](const SignedGraph & g) {
        auto r = two_nzf_eulerian(g);
        return r.flow ? py::cast(to_default(g, *r.flow).values) : py::none();
    });
    m.def("eulerian_3nzf_decomposition", [](const SignedGraph & g, bool force) -> py::object {
        auto r = eulerian_3nzf_decomposition(g, force);
        if (!r.decomposition)
            return py::none();
        py::dict d;
        d["classes"] = r.decomposition->classes;
        d["common_vertex"] = r.decomposition->common_vertex;
        return d;
    }, py::arg("g"), py::arg("force") = false);
    m.def("match_count", [](const SignedGraph & g, const std::string & name) {
        return match_configuration(g, catalog_pattern(name)).size();
    });
    m.def("sweep_summary", [](int n_max, unsigned jobs) {
        SweepSummary s;
        {
            py::gil_scoped_release nogil;
            s = run_sweep(n_max, jobs).summary;
        }
        py::dict d;
        d["instances"] = s.instances;
        d["admissible"] = s.admissible;
        d["exceptions"] = s.exceptions;
        d["falsifications"] = s.falsifications;
        d["bouchet_mismatches"] = s.bouchet_mismatches;
        d["eulerian_mismatches"] = s.eulerian_mismatches;
        return d;
    }, py::arg("n_max"), py::arg("jobs") = 1);
}
