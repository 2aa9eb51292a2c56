#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <tuple>

#include "sigcon/errors.hpp"
#include "sigcon/generator.hpp"
#include "sigcon/pipeline.hpp"
#include "sigcon/report.hpp"

namespace py = pybind11;
using namespace sigcon;

namespace {

SignedGraph from_edges(int n, const std::vector<std::tuple<int, int, int>>& edges, std::vector<NodeId> leaders) {
    std::vector<Edge> list;
    list.reserve(edges.size());
    for (const auto& [s, d, sign] : edges) {
        if (sign != 1 && sign != -1) throw Error(Errc::Parse, "edge sign must be +1 or -1");
        list.push_back({s, d, sign > 0 ? Sign::Positive : Sign::Negative});
    }
    return SignedGraph::create(n, std::move(list), std::move(leaders));
}

std::vector<std::tuple<int, int, int>> edge_tuples(const SignedGraph& g) {
    std::vector<std::tuple<int, int, int>> out;
    for (const Edge& e : g.edges()) out.emplace_back(e.src, e.dst, to_int(e.sign));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Signed-network containment analysis (native core)";

    // messages carry the error kind as a "Name: " prefix
    py::register_exception<Error>(m, "SigconError", PyExc_ValueError);

    py::class_<SignedGraph>(m, "Graph")
        .def(py::init(&from_edges), py::arg("n"), py::arg("edges"), py::arg("leaders") = std::vector<NodeId>{})
        .def_static("parse", [](const std::string& text) { return parse_graph(text); }, py::arg("text"))
        .def_static("load", [](const std::string& path) { return parse_graph(read_file(path)); }, py::arg("path"))
        .def_property_readonly("n", &SignedGraph::size)
        .def_property_readonly("edges", &edge_tuples)
        .def_property_readonly("leaders",
                               [](const SignedGraph& g) { return std::vector<NodeId>(g.leaders().begin(), g.leaders().end()); })
        .def("to_edge_list", &to_edge_list)
        .def("to_json", &to_graph_json)
        .def("__len__", &SignedGraph::size)
        .def("__eq__", [](const SignedGraph& a, const SignedGraph& b) { return a == b; });

    m.def("_analyze", [](const SignedGraph& g) { return analysis_json(analyze(g)).dump(); });

    m.def(
        "_steady_state",
        [](const SignedGraph& g, const std::vector<double>& x0, double tol) {
            const Analysis a = analyze(g);
            const auto sol = steady_state_all(a, x0);
            const auto k = contained_set(sol, a.graph.leaders(), x0, tol);
            return steady_json(a, sol, x0, k).dump();
        },
        py::arg("g"), py::arg("x0"), py::arg("tol") = 1e-9);

    m.def(
        "_place",
        [](const SignedGraph& g, int budget) {
            const auto inst = follower_reduction(g, budget);
            return placement_json(inst, solve_placement(inst)).dump();
        },
        py::arg("g"), py::arg("budget"));

    m.def(
        "export_lp", [](const SignedGraph& g, int budget) { return export_lp(follower_reduction(g, budget)); },
        py::arg("g"), py::arg("budget"));

    m.def(
        "solve_sizes",
        [](const std::vector<int>& root_size, const std::vector<std::pair<int, std::vector<int>>>& candidates,
           int budget) {
            std::vector<Candidate> cands;
            for (const auto& [size, roots] : candidates) cands.push_back({size, roots, {}});
            const auto inst = PlacementInstance::from_sizes(root_size, std::move(cands), budget);
            const auto sol = solve_placement(inst);
            return std::make_pair(sol.selected_roots, sol.objective);
        },
        py::arg("root_size"), py::arg("candidates"), py::arg("budget"),
        "Exact placement on a synthetic instance; returns (selected_roots, objective).");

    m.def(
        "export_lp_sizes",
        [](const std::vector<int>& root_size, const std::vector<std::pair<int, std::vector<int>>>& candidates,
           int budget) {
            std::vector<Candidate> cands;
            for (const auto& [size, roots] : candidates) cands.push_back({size, roots, {}});
            return export_lp(PlacementInstance::from_sizes(root_size, std::move(cands), budget));
        },
        py::arg("root_size"), py::arg("candidates"), py::arg("budget"));

    m.def(
        "guaranteed_set",
        [](const SignedGraph& g, std::optional<std::vector<NodeId>> controlled) {
            return controlled ? guaranteed_set(g, *controlled) : guaranteed_set(g);
        },
        py::arg("g"), py::arg("controlled") = std::nullopt);

    m.def(
        "_simulate",
        [](const SignedGraph& g, const std::vector<double>& x0, int max_iters, double conv_tol, int stride,
           double contain_tol) {
            const WeightMatrix w = build_adjacency(g);
            const SimTrace trace = run(w, x0, g.leaders(), {max_iters, conv_tol, stride});
            py::dict out;
            out["iterations"] = trace.iterations;
            out["converged"] = trace.converged;
            out["bound"] = trace.bound;
            out["final_state"] = trace.final_state;
            out["steps"] = trace.steps;
            out["samples"] = trace.samples;
            out["contained"] = trace.converged ? empirical_contained(trace, g.leaders(), contain_tol)
                                               : std::vector<NodeId>{};
            return out;
        },
        py::arg("g"), py::arg("x0"), py::arg("max_iters") = 100000, py::arg("conv_tol") = 1e-12,
        py::arg("stride") = 0, py::arg("contain_tol") = 1e-6);

    m.def(
        "generate",
        [](const std::string& spec_json, std::optional<std::uint64_t> seed) {
            GeneratorSpec spec = GeneratorSpec::from_json(spec_json);
            if (seed) spec.seed = *seed;
            return generate(spec).graph;
        },
        py::arg("spec_json"), py::arg("seed") = std::nullopt);

    m.def(
        "initial_state",
        [](const SignedGraph& g, std::uint64_t seed, std::vector<double> leader_states) {
            InitialStateOptions opts;
            opts.leader_states = std::move(leader_states);
            return draw_initial_state(g, seed, opts);
        },
        py::arg("g"), py::arg("seed"), py::arg("leader_states") = std::vector<double>{});

    m.def(
        "_pipeline",
        [](const SignedGraph& g, int budget, int trials, std::uint64_t seed, std::vector<double> leader_states) {
            PipelineOptions opts;
            opts.budget = budget;
            opts.trials = trials;
            opts.seed = seed;
            opts.initial.leader_states = std::move(leader_states);
            return pipeline_json(run_pipeline(g, opts)).dump();
        },
        py::arg("g"), py::arg("budget"), py::arg("trials") = 1, py::arg("seed") = 0,
        py::arg("leader_states") = std::vector<double>{});
}
