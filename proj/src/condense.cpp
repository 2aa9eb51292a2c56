#include "sigcon/condense.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sigcon/errors.hpp"

namespace sigcon {

Partition scc(const Digraph& graph) {
    const int n = static_cast<int>(graph.size());
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> call;  // (node, next successor slot)
    Partition out;
    out.component_of.assign(static_cast<std::size_t>(n), -1);
    int counter = 0;

    for (int start = 0; start < n; ++start) {
        if (index[static_cast<std::size_t>(start)] != -1) continue;
        call.emplace_back(start, 0);
        while (!call.empty()) {
            auto& [v, slot] = call.back();
            const auto vi = static_cast<std::size_t>(v);
            if (slot == 0 && index[vi] == -1) {
                index[vi] = low[vi] = counter++;
                stack.push_back(v);
                on_stack[vi] = 1;
            }
            const auto& succ = graph[vi];
            if (slot < succ.size()) {
                const int w = succ[slot++];
                const auto wi = static_cast<std::size_t>(w);
                if (index[wi] == -1) {
                    call.emplace_back(w, 0);
                } else if (on_stack[wi]) {
                    low[vi] = std::min(low[vi], index[wi]);
                }
                continue;
            }
            if (low[vi] == index[vi]) {
                std::vector<NodeId> comp;
                int w = -1;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    out.component_of[static_cast<std::size_t>(w)] = out.count();
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.members.push_back(std::move(comp));
            }
            const int finished = v;
            call.pop_back();
            if (!call.empty()) {
                const auto parent = static_cast<std::size_t>(call.back().first);
                low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
            }
        }
    }
    return out;
}

const char* kind_name(CondensationKind kind) {
    switch (kind) {
        case CondensationKind::Classic: return "classic";
        case CondensationKind::Enlarged: return "enlarged";
        case CondensationKind::Signed: return "signed";
    }
    return "unknown";
}

Condensation condensation_from_dag(std::vector<std::vector<NodeId>> members,
                                   const std::vector<std::pair<int, int>>& superedges, int node_count,
                                   CondensationKind kind) {
    const int m = static_cast<int>(members.size());
    for (auto& mem : members) std::sort(mem.begin(), mem.end());

    std::vector<std::vector<int>> succ(static_cast<std::size_t>(m));
    for (auto [u, v] : superedges) {
        if (u != v) succ[static_cast<std::size_t>(u)].push_back(v);
    }
    std::vector<int> indegree(static_cast<std::size_t>(m), 0);
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int v : s) ++indegree[static_cast<std::size_t>(v)];
    }

    // Kahn order; level = 1 + max predecessor level.
    std::vector<int> level(static_cast<std::size_t>(m), 1);
    std::vector<int> queue;
    for (int u = 0; u < m; ++u) {
        if (indegree[static_cast<std::size_t>(u)] == 0) queue.push_back(u);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int v : succ[static_cast<std::size_t>(u)]) {
            auto& lv = level[static_cast<std::size_t>(v)];
            lv = std::max(lv, level[static_cast<std::size_t>(u)] + 1);
            if (--indegree[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
        }
    }
    if (static_cast<int>(queue.size()) != m) {
        throw Error(Errc::NotAcyclic, "condensing map induces a cycle among supernodes");
    }

    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    const auto first_member = [&](int u) {
        const auto& mem = members[static_cast<std::size_t>(u)];
        return mem.empty() ? node_count : mem.front();
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int la = level[static_cast<std::size_t>(a)], lb = level[static_cast<std::size_t>(b)];
        if (la != lb) return la < lb;
        return first_member(a) < first_member(b);
    });
    std::vector<int> renumber(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) renumber[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

    Condensation c;
    c.kind = kind;
    c.node_map.assign(static_cast<std::size_t>(node_count), -1);
    c.members.resize(static_cast<std::size_t>(m));
    c.successors.resize(static_cast<std::size_t>(m));
    c.predecessors.resize(static_cast<std::size_t>(m));
    c.level.resize(static_cast<std::size_t>(m));
    c.rank.resize(static_cast<std::size_t>(m));
    for (int old = 0; old < m; ++old) {
        const int id = renumber[static_cast<std::size_t>(old)];
        c.level[static_cast<std::size_t>(id)] = level[static_cast<std::size_t>(old)];
        c.members[static_cast<std::size_t>(id)] = std::move(members[static_cast<std::size_t>(old)]);
        for (NodeId v : c.members[static_cast<std::size_t>(id)]) c.node_map[static_cast<std::size_t>(v)] = id;
        for (int w : succ[static_cast<std::size_t>(old)]) {
            const int wid = renumber[static_cast<std::size_t>(w)];
            c.successors[static_cast<std::size_t>(id)].push_back(wid);
            c.predecessors[static_cast<std::size_t>(wid)].push_back(id);
        }
    }
    for (auto& s : c.successors) std::sort(s.begin(), s.end());
    for (auto& p : c.predecessors) std::sort(p.begin(), p.end());
    for (int id = 0; id < m; ++id) {
        const int l = c.level[static_cast<std::size_t>(id)];
        if (static_cast<int>(c.by_level.size()) < l) c.by_level.resize(static_cast<std::size_t>(l));
        auto& bucket = c.by_level[static_cast<std::size_t>(l - 1)];
        bucket.push_back(id);
        c.rank[static_cast<std::size_t>(id)] = static_cast<int>(bucket.size());
    }
    return c;
}

Condensation condense(const Digraph& graph, std::span<const int> f, CondensationKind kind) {
    const int n = static_cast<int>(graph.size());
    if (static_cast<int>(f.size()) != n) invariant_failure("condensing map is not total on the graph");
    std::map<int, int> dense;
    for (int v : f) dense.emplace(v, 0);
    int next = 0;
    for (auto& [key, id] : dense) id = next++;

    std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(next));
    for (int v = 0; v < n; ++v) members[static_cast<std::size_t>(dense[f[static_cast<std::size_t>(v)]])].push_back(v);
    std::vector<std::pair<int, int>> superedges;
    for (int u = 0; u < n; ++u) {
        const int fu = dense[f[static_cast<std::size_t>(u)]];
        for (int v : graph[static_cast<std::size_t>(u)]) {
            const int fv = dense[f[static_cast<std::size_t>(v)]];
            if (fu != fv) superedges.emplace_back(fu, fv);
        }
    }
    return condensation_from_dag(std::move(members), superedges, n, kind);
}

Condensation classic_condensation(const SignedGraph& g) {
    const Digraph graph = g.successors();
    const Partition p = scc(graph);
    return condense(graph, p.component_of, CondensationKind::Classic);
}

Condensation enlarged_condensation(const SignedGraph& g) {
    const Digraph graph = enlarged_graph(build_adjacency(g)).successors();
    const Partition p = scc(graph);
    return condense(graph, p.component_of, CondensationKind::Enlarged);
}

namespace {

Condensation signed_from(const SignedGraph& g, const Condensation& classic, const Partition& enlarged_sccs) {
    const int n = g.size();
    std::map<int, int> dense;
    for (int v = 0; v < n; ++v) dense.emplace(enlarged_sccs.component_of[static_cast<std::size_t>(v)], 0);
    int next = 0;
    for (auto& [key, id] : dense) id = next++;

    std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(next));
    std::vector<int> parent(static_cast<std::size_t>(next), -1);
    for (int v = 0; v < n; ++v) {
        const int s = dense[enlarged_sccs.component_of[static_cast<std::size_t>(v)]];
        members[static_cast<std::size_t>(s)].push_back(v);
        const int c = classic.node_map[static_cast<std::size_t>(v)];
        if (parent[static_cast<std::size_t>(s)] != -1 && parent[static_cast<std::size_t>(s)] != c) {
            invariant_failure("an enlarged-graph SCC spans two classic SCCs");
        }
        parent[static_cast<std::size_t>(s)] = c;
    }
    std::vector<std::vector<int>> over(static_cast<std::size_t>(classic.size()));
    for (int s = 0; s < next; ++s) over[static_cast<std::size_t>(parent[static_cast<std::size_t>(s)])].push_back(s);

    std::vector<std::pair<int, int>> superedges;
    for (int a = 0; a < classic.size(); ++a) {
        for (int b : classic.successors[static_cast<std::size_t>(a)]) {
            for (int s : over[static_cast<std::size_t>(a)]) {
                for (int t : over[static_cast<std::size_t>(b)]) superedges.emplace_back(s, t);
            }
        }
    }
    return condensation_from_dag(std::move(members), superedges, n, CondensationKind::Signed);
}

}  // namespace

Condensation signed_condensation(const SignedGraph& g) {
    const Digraph graph = enlarged_graph(build_adjacency(g)).successors();
    return signed_from(g, classic_condensation(g), scc(graph));
}

int SccClass::gauge_of(NodeId v) const {
    const auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) invariant_failure("node " + std::to_string(v) + " not in SCC");
    return gauge[static_cast<std::size_t>(it - members.begin())];
}

SccClass classify_scc(const SignedGraph& g, std::span<const NodeId> members, int component) {
    SccClass out;
    out.component = component;
    out.members.assign(members.begin(), members.end());
    std::sort(out.members.begin(), out.members.end());
    const int m = static_cast<int>(out.members.size());
    const auto local = [&](NodeId v) -> int {
        const auto it = std::lower_bound(out.members.begin(), out.members.end(), v);
        return (it != out.members.end() && *it == v) ? static_cast<int>(it - out.members.begin()) : -1;
    };

    // Enlarged graph of the induced subgraph: local i and its mirror i + m.
    Digraph lifted(static_cast<std::size_t>(2 * m));
    bool negative = false;
    for (int i = 0; i < m; ++i) {
        for (const InEdge& in : g.in_edges(out.members[static_cast<std::size_t>(i)])) {
            const int j = local(in.src);
            if (j < 0) continue;
            if (in.sign == Sign::Negative) {
                negative = true;
                lifted[static_cast<std::size_t>(j)].push_back(i + m);
                lifted[static_cast<std::size_t>(j + m)].push_back(i);
            } else if (j != i) {
                lifted[static_cast<std::size_t>(j)].push_back(i);
                lifted[static_cast<std::size_t>(j + m)].push_back(i + m);
            }
        }
    }

    out.gauge.assign(static_cast<std::size_t>(m), 1);
    if (!negative) {
        out.type = SccType::Consensus;
        out.part = out.members;
        return out;
    }
    const Partition p = scc(lifted);
    if (p.count() == 1) {
        out.type = SccType::Unbalanced;
        out.part = out.members;
        return out;
    }
    if (p.count() != 2) {
        invariant_failure("enlarged subgraph of a strongly connected component has " + std::to_string(p.count()) +
                          " SCCs");
    }
    out.type = SccType::Bipartite;
    const int anchor = p.component_of[0];
    for (int i = 0; i < m; ++i) {
        const NodeId v = out.members[static_cast<std::size_t>(i)];
        if (p.component_of[static_cast<std::size_t>(i)] == anchor) {
            out.part.push_back(v);
        } else {
            out.opposite.push_back(v);
            out.gauge[static_cast<std::size_t>(i)] = -1;
        }
    }
    return out;
}

std::vector<SccClass> classify_all(const SignedGraph& g, const Condensation& classic) {
    std::vector<SccClass> out;
    out.reserve(static_cast<std::size_t>(classic.size()));
    for (int c = 0; c < classic.size(); ++c) out.push_back(classify_scc(g, classic.members[static_cast<std::size_t>(c)], c));
    return out;
}

namespace {

std::vector<int> merge_sets(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Reach reach(const Condensation& c) {
    const int m = c.size();
    Reach r;
    r.upstream.resize(static_cast<std::size_t>(m));
    r.downstream.resize(static_cast<std::size_t>(m));
    // Supernode ids are a topological order.
    for (int v = 0; v < m; ++v) {
        auto& up = r.upstream[static_cast<std::size_t>(v)];
        up = {v};
        for (int p : c.predecessors[static_cast<std::size_t>(v)]) up = merge_sets(up, r.upstream[static_cast<std::size_t>(p)]);
    }
    for (int v = m - 1; v >= 0; --v) {
        auto& down = r.downstream[static_cast<std::size_t>(v)];
        down = {v};
        for (int s : c.successors[static_cast<std::size_t>(v)]) down = merge_sets(down, r.downstream[static_cast<std::size_t>(s)]);
    }
    return r;
}

std::vector<int> Reach::upstream_at_level(const Condensation& c, int target, int level) const {
    std::vector<int> out;
    for (int u : upstream[static_cast<std::size_t>(target)]) {
        if (c.level[static_cast<std::size_t>(u)] == level) out.push_back(u);
    }
    return out;
}

int Reach::delta(const Condensation& c, int target, int level) const {
    return static_cast<int>(upstream_at_level(c, target, level).size());
}

std::array<std::vector<int>, 3> Reach::upstream_by_type(const Condensation& c, const std::vector<SccClass>& classes,
                                                        int target, int level) const {
    std::array<std::vector<int>, 3> out;
    for (int u : upstream_at_level(c, target, level)) {
        out[static_cast<std::size_t>(to_int(classes[static_cast<std::size_t>(u)].type) - 1)].push_back(u);
    }
    return out;
}

std::vector<int> Reach::upstream_roots(const Condensation& c, int target) const {
    return upstream_at_level(c, target, 1);
}

Association associate(const Condensation& classic, const Condensation& signed_cond, const Condensation& enlarged,
                      const std::vector<SccClass>& classes) {
    if (classic.level_count() != signed_cond.level_count() || classic.level_count() != enlarged.level_count()) {
        invariant_failure("level counts differ: classic " + std::to_string(classic.level_count()) + ", signed " +
                          std::to_string(signed_cond.level_count()) + ", enlarged " +
                          std::to_string(enlarged.level_count()));
    }
    const int n = static_cast<int>(classic.node_map.size());
    Association out;
    for (int c = 0; c < classic.size(); ++c) {
        ClassicAssociation a;
        a.classic = c;
        a.level = classic.level[static_cast<std::size_t>(c)];
        a.type = classes[static_cast<std::size_t>(c)].type;
        for (NodeId v : classic.members[static_cast<std::size_t>(c)]) {
            a.signed_nodes.push_back(signed_cond.node_map[static_cast<std::size_t>(v)]);
            a.enlarged_nodes.push_back(enlarged.node_map[static_cast<std::size_t>(v)]);
            a.enlarged_nodes.push_back(enlarged.node_map[static_cast<std::size_t>(v + n)]);
        }
        for (auto* ids : {&a.signed_nodes, &a.enlarged_nodes}) {
            std::sort(ids->begin(), ids->end());
            ids->erase(std::unique(ids->begin(), ids->end()), ids->end());
        }
        for (int s : a.signed_nodes) {
            if (signed_cond.level[static_cast<std::size_t>(s)] != a.level) {
                invariant_failure("signed supernode " + std::to_string(s) + " level differs from its classic SCC");
            }
        }
        for (int e : a.enlarged_nodes) {
            if (enlarged.level[static_cast<std::size_t>(e)] != a.level) {
                invariant_failure("enlarged supernode " + std::to_string(e) + " level differs from its classic SCC");
            }
        }
        out.classic.push_back(std::move(a));
    }
    out.enlarged_to_classic.assign(static_cast<std::size_t>(enlarged.size()), -1);
    for (int e = 0; e < enlarged.size(); ++e) {
        for (NodeId v : enlarged.members[static_cast<std::size_t>(e)]) {
            const int c = classic.node_map[static_cast<std::size_t>(v % n)];
            auto& slot = out.enlarged_to_classic[static_cast<std::size_t>(e)];
            if (slot != -1 && slot != c) invariant_failure("enlarged supernode spans two classic SCCs");
            slot = c;
        }
    }
    for (int l = 1; l <= classic.level_count(); ++l) {
        const int nc = classic.count_at_level(l), ns = signed_cond.count_at_level(l), ne = enlarged.count_at_level(l);
        if (!(nc <= ns && ns <= ne)) {
            invariant_failure("level " + std::to_string(l) + " supernode counts violate n_c <= n_s <= n_e");
        }
    }
    return out;
}

Analysis analyze(const SignedGraph& g) {
    Analysis a;
    a.graph = g;
    a.weights = build_adjacency(g);
    const Digraph classic_graph = g.successors();
    a.classic = condense(classic_graph, scc(classic_graph).component_of, CondensationKind::Classic);
    const Digraph lifted = enlarged_graph(a.weights).successors();
    const Partition lifted_sccs = scc(lifted);
    a.enlarged = condense(lifted, lifted_sccs.component_of, CondensationKind::Enlarged);
    a.signed_cond = signed_from(g, a.classic, lifted_sccs);
    a.classes = classify_all(g, a.classic);
    a.classic_reach = reach(a.classic);
    a.association = associate(a.classic, a.signed_cond, a.enlarged, a.classes);

    // Local (induced-subgraph) classification against the global enlarged SCCs.
    for (const auto& assoc : a.association.classic) {
        const std::size_t expected_signed = assoc.type == SccType::Bipartite ? 2 : 1;
        const std::size_t expected_enlarged = assoc.type == SccType::Unbalanced ? 1 : 2;
        if (assoc.signed_nodes.size() != expected_signed || assoc.enlarged_nodes.size() != expected_enlarged) {
            a.diagnostics.push_back("classic SCC " + std::to_string(assoc.classic) + " classified type " +
                                    std::to_string(to_int(assoc.type)) + " but the global enlarged graph has " +
                                    std::to_string(assoc.enlarged_nodes.size()) + " SCCs over it");
        }
    }
    return a;
}

}  // namespace sigcon
