#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sigcon/signed_graph.hpp"

namespace sigcon {

/// Shape of a random layered signed graph. Levels and SCC counts describe the
/// follower part; leaders are extra isolated nodes with ids 0..n_leaders-1.
struct GeneratorSpec {
    int levels = 1;
    std::vector<int> sccs_per_level{1};
    int size_min = 1;
    int size_max = 1;
    std::array<int, 3> type_mix{0, 0, 0};  // exact SCC counts of type 1, 2, 3; all zero = all type 1
    double inter_scc_edge_prob = 0.1;
    double intra_edge_prob = -1.0;  // negative: about two extra out-edges per node
    int n_leaders = 0;
    std::optional<int> total_nodes;  // leaders included
    std::uint64_t seed = 0;

    int scc_count() const;

    /// Accepts the JSON document described in the README. `sccs_per_level`
    /// may be a single integer (same count on every level) and `type_mix`
    /// either [t1, t2, t3] or {"1": t1, "2": t2, "3": t3}.
    static GeneratorSpec from_json(std::string_view text);
};

struct GeneratedGraph {
    SignedGraph graph;
    std::vector<std::vector<NodeId>> scc_members;  // generated follower SCCs
    std::vector<int> scc_level;
    std::vector<int> scc_type;
};

/// Builds the graph and verifies its follower condensation (levels, SCCs per
/// level, SCC types) before returning. Throws InvalidSpec for unsatisfiable
/// shapes.
GeneratedGraph generate(const GeneratorSpec& spec);

}  // namespace sigcon
