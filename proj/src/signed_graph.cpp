#include "sigcon/signed_graph.hpp"

#include <algorithm>

#include "sigcon/errors.hpp"

namespace sigcon {

SignedGraph SignedGraph::create(int n, std::vector<Edge> edges, std::vector<NodeId> leaders,
                                std::vector<std::string>* warnings) {
    if (n < 0) throw Error(Errc::InvalidNode, "negative node count");
    const auto in_range = [n](NodeId v) { return v >= 0 && v < n; };

    for (const Edge& e : edges) {
        if (!in_range(e.src) || !in_range(e.dst)) {
            throw Error(Errc::InvalidNode, "edge (" + std::to_string(e.src) + "," +
                                               std::to_string(e.dst) + ") outside [0," +
                                               std::to_string(n) + ")");
        }
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i].src == edges[i - 1].src && edges[i].dst == edges[i - 1].dst) {
            throw Error(Errc::DuplicateEdge, "(" + std::to_string(edges[i].src) + "," +
                                                 std::to_string(edges[i].dst) + ")");
        }
    }

    std::vector<std::uint8_t> has_loop(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges) {
        if (e.src == e.dst) has_loop[static_cast<std::size_t>(e.src)] = 1;
    }
    bool repaired = false;
    for (NodeId v = 0; v < n; ++v) {
        if (!has_loop[static_cast<std::size_t>(v)]) {
            edges.push_back({v, v, Sign::Positive});
            repaired = true;
            if (warnings) warnings->push_back("self-loop added: " + std::to_string(v));
        }
    }
    if (repaired) std::sort(edges.begin(), edges.end());

    std::sort(leaders.begin(), leaders.end());
    leaders.erase(std::unique(leaders.begin(), leaders.end()), leaders.end());

    SignedGraph g;
    g.n_ = n;
    g.is_leader_.assign(static_cast<std::size_t>(n), 0);
    for (NodeId v : leaders) {
        if (!in_range(v)) throw Error(Errc::InvalidNode, "leader " + std::to_string(v) + " out of range");
        g.is_leader_[static_cast<std::size_t>(v)] = 1;
    }
    for (const Edge& e : edges) {
        if (e.src != e.dst && g.is_leader_[static_cast<std::size_t>(e.dst)]) {
            throw Error(Errc::LeaderHasIncoming, "leader " + std::to_string(e.dst) +
                                                     " has incoming edge from " + std::to_string(e.src));
        }
    }

    g.in_.assign(static_cast<std::size_t>(n), {});
    for (const Edge& e : edges) g.in_[static_cast<std::size_t>(e.dst)].push_back({e.src, e.sign});
    for (auto& row : g.in_) {
        std::sort(row.begin(), row.end(), [](const InEdge& a, const InEdge& b) { return a.src < b.src; });
    }
    g.edges_ = std::move(edges);
    g.leaders_ = std::move(leaders);
    return g;
}

std::vector<NodeId> SignedGraph::followers() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n_; ++v) {
        if (!is_leader(v)) out.push_back(v);
    }
    return out;
}

Digraph SignedGraph::successors() const {
    Digraph out(static_cast<std::size_t>(n_));
    for (const Edge& e : edges_) {
        if (e.src != e.dst) out[static_cast<std::size_t>(e.src)].push_back(e.dst);
    }
    return out;
}

bool SignedGraph::has_negative_edge() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.sign == Sign::Negative; });
}

SignedGraph SignedGraph::with_edges(std::span<const Edge> extra) const {
    std::vector<Edge> all(edges_.begin(), edges_.end());
    all.insert(all.end(), extra.begin(), extra.end());
    return create(n_, std::move(all), leaders_);
}

WeightMatrix build_adjacency(const SignedGraph& g, WeightRule rule) {
    (void)rule;  // Uniform is the only rule.
    const int n = g.size();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(g.edges().size());
    for (NodeId i = 0; i < n; ++i) {
        const auto row = g.in_edges(i);
        const double magnitude = 1.0 / static_cast<double>(row.size());
        for (const InEdge& in : row) triplets.emplace_back(i, in.src, to_int(in.sign) * magnitude);
    }
    WeightMatrix w;
    w.a.resize(n, n);
    w.a.setFromTriplets(triplets.begin(), triplets.end());
    w.a.makeCompressed();
    return w;
}

EnlargedGraph enlarged_graph(const WeightMatrix& w) {
    const int n = w.size();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(w.a.nonZeros()) * 2);
    for (int i = 0; i < n; ++i) {
        for (SparseRowMatrix::InnerIterator it(w.a, i); it; ++it) {
            const int j = static_cast<int>(it.col());
            const double v = it.value();
            if (v > 0) {
                triplets.emplace_back(i, j, v);
                triplets.emplace_back(i + n, j + n, v);
            } else if (v < 0) {
                triplets.emplace_back(i + n, j, -v);
                triplets.emplace_back(i, j + n, -v);
            }
        }
    }
    EnlargedGraph e;
    e.n = n;
    e.a.resize(2 * n, 2 * n);
    e.a.setFromTriplets(triplets.begin(), triplets.end());
    e.a.makeCompressed();
    return e;
}

Digraph digraph_from_rows(const SparseRowMatrix& a) {
    Digraph out(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) {
        for (SparseRowMatrix::InnerIterator it(a, i); it; ++it) {
            const int j = static_cast<int>(it.col());
            if (j != i && it.value() != 0.0) out[static_cast<std::size_t>(j)].push_back(i);
        }
    }
    for (auto& succ : out) std::sort(succ.begin(), succ.end());
    return out;
}

Digraph EnlargedGraph::successors() const { return digraph_from_rows(a); }

}  // namespace sigcon
