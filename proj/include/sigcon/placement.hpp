#pragma once

#include <span>
#include <string>
#include <vector>

#include "sigcon/condense.hpp"

namespace sigcon {

/// A non-root SCC of the follower condensation that can still be guaranteed
/// with the given budget.
struct Candidate {
    int size = 0;
    std::vector<int> roots;        // indices into PlacementInstance::root_size, sorted
    std::vector<NodeId> members;  // original node ids (empty for synthetic instances)
};

/// Reduced placement graph: roots r_j of the follower condensation, the
/// retained non-roots gamma_i, and the budget d. Edge (gamma_i, r_j) exists
/// iff r_j is upstream of gamma_i; edge (r_j, pi) exists for every root.
struct PlacementInstance {
    int budget = 0;
    std::vector<int> root_size;
    std::vector<std::vector<NodeId>> root_members;
    std::vector<Candidate> candidates;
    std::vector<Candidate> excluded;  // non-roots with more than `budget` upstream roots

    int root_count() const { return static_cast<int>(root_size.size()); }
    /// k_j^out: number of retained candidates downstream of root j.
    std::vector<int> root_out_degree() const;

    /// Synthetic instance; candidates with more than `budget` roots are moved
    /// to `excluded`. Throws BudgetExceedsRoots when budget > roots.
    static PlacementInstance from_sizes(std::vector<int> root_size, std::vector<Candidate> candidates, int budget);
};

/// Reduced graph built from the follower subgraph (leaders removed).
PlacementInstance follower_reduction(const SignedGraph& g, int budget);

struct PlacementSolution {
    std::vector<int> selected_roots;   // sorted root indices, |S| = budget
    std::vector<int> root_vars;        // y_{j,pi}
    std::vector<int> candidate_root;   // root carrying y_{i,j} = 1, or -1
    std::vector<NodeId> phi;           // sorted original nodes (empty for synthetic instances)
    long objective = 0;
};

/// Objective for a fixed root selection: selected root sizes plus every
/// candidate whose upstream roots are all selected.
long placement_value(const PlacementInstance& inst, std::span<const int> selected);

/// Exact maximiser by branch-and-bound over the root variables; among equal
/// optima the lexicographically smallest root set wins.
PlacementSolution solve_placement(const PlacementInstance& inst);

/// Literal check of the budget equality, the root out-degree and candidate
/// in-degree constraints, and binarity.
bool satisfies_constraints(const PlacementInstance& inst, const PlacementSolution& sol, std::string* why = nullptr);

/// Followers in SCCs whose upstream root SCCs consist of leaders only.
std::vector<NodeId> guaranteed_set(const SignedGraph& g);
std::vector<NodeId> guaranteed_set(const Analysis& a);
/// Same, after wiring a leader to every node of `controlled`.
std::vector<NodeId> guaranteed_set(const SignedGraph& g, std::span<const NodeId> controlled);

/// CPLEX LP text for the placement ILP.
std::string export_lp(const PlacementInstance& inst);

}  // namespace sigcon
