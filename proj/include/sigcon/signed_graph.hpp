#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/SparseCore>

namespace sigcon {

using NodeId = int;

/// Successor lists of an unsigned directed graph.
using Digraph = std::vector<std::vector<NodeId>>;

enum class Sign : std::int8_t { Negative = -1, Positive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }

/// `src` influences `dst`: the edge contributes a_{dst,src} to the weight matrix.
struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    Sign sign = Sign::Positive;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct InEdge {
    NodeId src;
    Sign sign;
};

/// Directed signed graph with a leader set. Immutable once built.
///
/// Invariants enforced by `create`: node ids lie in [0, n), no (src, dst) pair
/// appears twice, every leader's only incoming edge is its own self-loop, and
/// every node carries a self-loop (missing ones are inserted as positive).
class SignedGraph {
public:
    SignedGraph() = default;

    static SignedGraph create(int n, std::vector<Edge> edges, std::vector<NodeId> leaders,
                              std::vector<std::string>* warnings = nullptr);

    int size() const { return n_; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const NodeId> leaders() const { return leaders_; }
    bool is_leader(NodeId v) const { return is_leader_[static_cast<std::size_t>(v)] != 0; }

    /// In-neighbourhood N_i of node i, self included, ordered by source id.
    std::span<const InEdge> in_edges(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }

    std::vector<NodeId> followers() const;
    Digraph successors() const;
    bool has_negative_edge() const;

    /// Returns a copy with `extra` appended (revalidated).
    SignedGraph with_edges(std::span<const Edge> extra) const;

    friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.leaders_ == b.leaders_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<NodeId> leaders_;
    std::vector<std::uint8_t> is_leader_;
    std::vector<std::vector<InEdge>> in_;
};

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Only uniform 1/|N_i| magnitudes ship today.
enum class WeightRule { Uniform };

/// Row i holds a_ij, the influence of j on i. Rows have absolute sum 1.
struct WeightMatrix {
    SparseRowMatrix a;

    int size() const { return static_cast<int>(a.rows()); }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(a); }
};

WeightMatrix build_adjacency(const SignedGraph& g, WeightRule rule = WeightRule::Uniform);

/// Unsigned 2n-node lift. Node i + n is the mirror i^- of node i.
struct EnlargedGraph {
    int n = 0;
    SparseRowMatrix a;

    int size() const { return 2 * n; }
    static int mirror(int node, int n) { return node < n ? node + n : node - n; }
    /// Edge j -> i for every positive entry a(i, j).
    Digraph successors() const;
};

EnlargedGraph enlarged_graph(const WeightMatrix& w);

/// Successor lists of the graph whose row-i entries are the in-weights of i.
Digraph digraph_from_rows(const SparseRowMatrix& a);

// Text formats.

/// Edge-list format: `src dst sign` lines, `#` comments, `#leaders: ...` header.
SignedGraph parse_edge_list(std::string_view text, std::vector<std::string>* warnings = nullptr);
/// JSON format: {"n": .., "edges": [[src, dst, +-1], ..], "leaders": [..]}.
SignedGraph parse_graph_json(std::string_view text, std::vector<std::string>* warnings = nullptr);
/// Dispatches on the first non-blank character ('{' selects JSON).
SignedGraph parse_graph(std::string_view text, std::vector<std::string>* warnings = nullptr);

std::string to_edge_list(const SignedGraph& g);
std::string to_graph_json(const SignedGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace sigcon
