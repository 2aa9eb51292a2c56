#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigcon/signed_graph.hpp"

namespace sigcon {

/// Strongly connected components of a digraph.
struct Partition {
    std::vector<int> component_of;             // node -> component id
    std::vector<std::vector<NodeId>> members;  // component id -> sorted nodes

    int count() const { return static_cast<int>(members.size()); }
};

/// Tarjan's algorithm. Components are numbered in reverse topological order
/// (a component's successors all have smaller ids).
Partition scc(const Digraph& graph);

enum class CondensationKind { Classic, Enlarged, Signed };

const char* kind_name(CondensationKind kind);

/// DAG over supernodes with a longest-path level decomposition.
///
/// Supernodes are numbered in (level, rank) order, so id order is a
/// topological order and `by_level[l - 1]` lists the level-l supernodes by
/// rank. Within a level, rank follows the smallest member id.
struct Condensation {
    CondensationKind kind = CondensationKind::Classic;
    std::vector<int> node_map;                 // original node -> supernode
    std::vector<std::vector<NodeId>> members;  // supernode -> sorted nodes
    std::vector<std::vector<int>> successors;
    std::vector<std::vector<int>> predecessors;
    std::vector<int> level;  // 1-based
    std::vector<int> rank;   // 1-based within level
    std::vector<std::vector<int>> by_level;

    int size() const { return static_cast<int>(members.size()); }
    int level_count() const { return static_cast<int>(by_level.size()); }
    int count_at_level(int l) const { return static_cast<int>(by_level[static_cast<std::size_t>(l - 1)].size()); }
    /// g^d: the supernode at (level, rank).
    int at(int l, int r) const { return by_level[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(r - 1)]; }
    std::vector<int> roots() const { return by_level.empty() ? std::vector<int>{} : by_level.front(); }
};

/// Condensation of `graph` induced by the condensing map `f` (values need not
/// be contiguous). Throws NotAcyclic if the induced supernode graph has a cycle.
Condensation condense(const Digraph& graph, std::span<const int> f, CondensationKind kind);

/// Builds a condensation from explicit supernode member sets and superedges.
Condensation condensation_from_dag(std::vector<std::vector<NodeId>> members,
                                   const std::vector<std::pair<int, int>>& superedges,
                                   int node_count, CondensationKind kind);

Condensation classic_condensation(const SignedGraph& g);
/// Condensation of the enlarged graph itself, over 2n nodes.
Condensation enlarged_condensation(const SignedGraph& g);

/// Signed condensation. Each supernode is the set of original nodes lying in
/// one SCC of the enlarged graph. A balanced SCC with negative edges thus
/// splits into its two camps. Superedges run between supernodes whose
/// classic SCCs are joined by a superedge, so both camps of an SCC inherit
/// the SCC's incoming and outgoing links and the result stays acyclic with
/// the classic level structure.
Condensation signed_condensation(const SignedGraph& g);

/// Type 1: no negative internal weight. Type 2: negative weights, structurally
/// balanced. Type 3: negative weights, unbalanced.
enum class SccType { Consensus = 1, Bipartite = 2, Unbalanced = 3 };

inline int to_int(SccType t) { return static_cast<int>(t); }

struct SccClass {
    int component = 0;
    SccType type = SccType::Consensus;
    std::vector<NodeId> members;    // sorted
    std::vector<NodeId> part;       // gauge +1 camp (all members for type 1/3)
    std::vector<NodeId> opposite;   // gauge -1 camp (type 2 only)
    std::vector<int> gauge;         // +-1 per member, aligned with `members`

    int gauge_of(NodeId v) const;
};

/// Classifies one SCC of `g` from the SCC structure of the enlarged graph of
/// its induced subgraph. Gauge +1 is anchored on the camp of the smallest id.
SccClass classify_scc(const SignedGraph& g, std::span<const NodeId> members, int component = 0);

std::vector<SccClass> classify_all(const SignedGraph& g, const Condensation& classic);

/// Upstream / downstream sets (self included) of each supernode of a DAG.
struct Reach {
    std::vector<std::vector<int>> upstream;    // sorted supernode ids
    std::vector<std::vector<int>> downstream;  // sorted supernode ids

    /// J_i(target): upstream supernodes of `target` at `level`.
    std::vector<int> upstream_at_level(const Condensation& c, int target, int level) const;
    /// delta_i(target) = |J_i(target)|.
    int delta(const Condensation& c, int target, int level) const;
    /// J_i(target) split by SCC type (index 0 -> type 1, ...). `classes` is
    /// indexed by supernode of the classic condensation `c`.
    std::array<std::vector<int>, 3> upstream_by_type(const Condensation& c, const std::vector<SccClass>& classes,
                                                     int target, int level) const;
    /// Level-1 supernodes in the upstream of `target`.
    std::vector<int> upstream_roots(const Condensation& c, int target) const;
};

Reach reach(const Condensation& c);

/// Correspondence of one classic supernode with the signed and enlarged
/// condensations. `signed_pair` has two entries for a split balanced SCC.
struct ClassicAssociation {
    int classic = 0;
    int level = 0;
    SccType type = SccType::Consensus;
    std::vector<int> signed_nodes;
    std::vector<int> enlarged_nodes;
};

struct Association {
    std::vector<ClassicAssociation> classic;
    std::vector<int> enlarged_to_classic;
};

/// Checks that all three condensations share the level count and that each
/// classic SCC maps onto its signed and enlarged supernodes at its own level.
Association associate(const Condensation& classic, const Condensation& signed_cond,
                      const Condensation& enlarged, const std::vector<SccClass>& classes);

/// Everything derived from the graph structure alone.
struct Analysis {
    SignedGraph graph;
    WeightMatrix weights;
    Condensation classic;
    Condensation enlarged;
    Condensation signed_cond;
    std::vector<SccClass> classes;
    Reach classic_reach;
    Association association;
    std::vector<std::string> diagnostics;
};

Analysis analyze(const SignedGraph& g);

}  // namespace sigcon
