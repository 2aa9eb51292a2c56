#include "sigcon/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sigcon {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json to_json(const Condensation& c, const std::vector<SccClass>* classes) {
    nlohmann::json doc;
    doc["kind"] = kind_name(c.kind);
    doc["levels"] = c.level_count();
    std::vector<int> counts;
    for (int l = 1; l <= c.level_count(); ++l) counts.push_back(c.count_at_level(l));
    doc["level_counts"] = counts;
    auto nodes = nlohmann::json::array();
    auto edges = nlohmann::json::array();
    for (int s = 0; s < c.size(); ++s) {
        nlohmann::json node{{"id", s},
                            {"level", c.level[static_cast<std::size_t>(s)]},
                            {"rank", c.rank[static_cast<std::size_t>(s)]},
                            {"members", c.members[static_cast<std::size_t>(s)]}};
        if (classes) {
            const SccClass& cls = (*classes)[static_cast<std::size_t>(s)];
            node["type"] = to_int(cls.type);
            if (cls.type == SccType::Bipartite) {
                node["camps"] = {cls.part, cls.opposite};
            }
        }
        nodes.push_back(std::move(node));
        for (int t : c.successors[static_cast<std::size_t>(s)]) edges.push_back({s, t});
    }
    doc["supernodes"] = std::move(nodes);
    doc["superedges"] = std::move(edges);
    return doc;
}

nlohmann::json analysis_json(const Analysis& a) {
    nlohmann::json doc;
    doc["n"] = a.graph.size();
    doc["leaders"] = std::vector<NodeId>(a.graph.leaders().begin(), a.graph.leaders().end());
    doc["levels"] = a.classic.level_count();
    doc["classic"] = to_json(a.classic, &a.classes);
    doc["signed"] = to_json(a.signed_cond);
    doc["enlarged"] = to_json(a.enlarged);
    std::array<int, 3> type_counts{0, 0, 0};
    for (const auto& cls : a.classes) ++type_counts[static_cast<std::size_t>(to_int(cls.type) - 1)];
    doc["type_counts"] = type_counts;
    auto assoc = nlohmann::json::array();
    for (const auto& entry : a.association.classic) {
        assoc.push_back({{"classic", entry.classic},
                         {"level", entry.level},
                         {"type", to_int(entry.type)},
                         {"signed", entry.signed_nodes},
                         {"enlarged", entry.enlarged_nodes}});
    }
    doc["association"] = std::move(assoc);
    doc["diagnostics"] = a.diagnostics;
    return doc;
}

std::string to_dot(const Condensation& c, const std::vector<SccClass>* classes) {
    std::ostringstream out;
    out << "digraph " << kind_name(c.kind) << " {\n  rankdir=TB;\n";
    for (int l = 1; l <= c.level_count(); ++l) {
        out << "  { rank=same;";
        for (int s : c.by_level[static_cast<std::size_t>(l - 1)]) out << " s" << s << ';';
        out << " }\n";
    }
    for (int s = 0; s < c.size(); ++s) {
        const auto& members = c.members[static_cast<std::size_t>(s)];
        out << "  s" << s << " [label=\"(" << c.level[static_cast<std::size_t>(s)] << ','
            << c.rank[static_cast<std::size_t>(s)] << ") |" << members.size() << '|';
        if (classes) out << " t" << to_int((*classes)[static_cast<std::size_t>(s)].type);
        out << "\"];\n";
    }
    for (int s = 0; s < c.size(); ++s) {
        for (int t : c.successors[static_cast<std::size_t>(s)]) out << "  s" << s << " -> s" << t << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string steady_csv(const Analysis& a, const SteadyStateSolution& sol, std::span<const NodeId> contained) {
    std::string out = "node,scc,type,x_bar,contained\n";
    for (NodeId v = 0; v < a.graph.size(); ++v) {
        const int c = a.classic.node_map[static_cast<std::size_t>(v)];
        const bool in = std::binary_search(contained.begin(), contained.end(), v);
        out += std::to_string(v) + ',' + std::to_string(c) + ',' +
               std::to_string(to_int(a.classes[static_cast<std::size_t>(c)].type)) + ',' +
               format_double(sol.x_bar[static_cast<std::size_t>(v)]) + ',' + (in ? "1" : "0") + '\n';
    }
    return out;
}

nlohmann::json steady_json(const Analysis& a, const SteadyStateSolution& sol, std::span<const double> x0,
                           std::span<const NodeId> contained) {
    nlohmann::json doc;
    doc["n"] = a.graph.size();
    doc["bound"] = containment_bound(a.graph.leaders(), x0);
    doc["residual"] = sol.residual;
    doc["x_bar"] = sol.x_bar;
    auto roots = nlohmann::json::array();
    for (const auto& lim : sol.roots) {
        roots.push_back({{"scc", lim.scc}, {"kind", limit_kind_name(lim.kind)}, {"alpha", lim.alpha}});
    }
    doc["root_limits"] = std::move(roots);
    doc["contained"] = std::vector<NodeId>(contained.begin(), contained.end());
    doc["contained_count"] = contained.size();
    return doc;
}

nlohmann::json placement_json(const PlacementInstance& inst, const PlacementSolution& sol) {
    nlohmann::json doc;
    doc["budget"] = inst.budget;
    doc["selected_roots"] = sol.selected_roots;
    doc["objective"] = sol.objective;
    doc["phi"] = sol.phi;
    auto roots = nlohmann::json::array();
    for (int j = 0; j < inst.root_count(); ++j) {
        roots.push_back({{"index", j},
                         {"size", inst.root_size[static_cast<std::size_t>(j)]},
                         {"members", inst.root_members[static_cast<std::size_t>(j)]}});
    }
    doc["roots"] = std::move(roots);
    auto candidates = nlohmann::json::array();
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
        const Candidate& c = inst.candidates[i];
        candidates.push_back({{"index", i},
                              {"size", c.size},
                              {"roots", c.roots},
                              {"guaranteed", sol.candidate_root[i] != -1}});
    }
    doc["candidates"] = std::move(candidates);
    auto excluded = nlohmann::json::array();
    for (const Candidate& c : inst.excluded) excluded.push_back({{"size", c.size}, {"roots", c.roots}});
    doc["excluded"] = std::move(excluded);
    return doc;
}

nlohmann::json trace_summary_json(const SimTrace& trace, std::span<const NodeId> contained,
                                  std::span<const NodeId> guaranteed) {
    nlohmann::json doc;
    doc["iterations"] = trace.iterations;
    doc["converged"] = trace.converged;
    doc["bound"] = trace.bound;
    doc["samples"] = trace.steps.size();
    doc["contained"] = std::vector<NodeId>(contained.begin(), contained.end());
    doc["contained_count"] = contained.size();
    doc["guaranteed_count"] = guaranteed.size();
    doc["guaranteed_within_contained"] =
        std::includes(contained.begin(), contained.end(), guaranteed.begin(), guaranteed.end());
    return doc;
}

}  // namespace sigcon
