#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sigcon/condense.hpp"

namespace sigcon {

struct SteadyStateOptions {
    double perron_tol = 1e-12;
    int direct_solve_limit = 2000;  // larger blocks use power iteration
    int power_max_iters = 2'000'000;
    double residual_tol = 1e-9;
};

/// Left eigenvector for eigenvalue 1 of an irreducible, row-stochastic,
/// nonnegative block with positive diagonal, normalised to sum 1.
Eigen::VectorXd left_perron(const SparseRowMatrix& block, const SteadyStateOptions& opts = {});

enum class LimitKind { Consensus, Bipartite, Zero };

const char* limit_kind_name(LimitKind kind);

struct RsccLimit {
    int scc = 0;
    LimitKind kind = LimitKind::Consensus;
    double alpha = 0.0;
    std::vector<int> gauge;  // aligned with the SCC's sorted members
};

struct SteadyStateSolution {
    std::vector<double> x_bar;
    std::vector<RsccLimit> roots;
    double residual = 0.0;  // max |x_bar - A x_bar|
};

/// Sub-block of `a` with rows `rows` and columns `cols` (both sorted).
SparseRowMatrix extract_block(const SparseRowMatrix& a, std::span<const NodeId> rows, std::span<const NodeId> cols);

/// Limits of the level-1 SCCs. Type-2 SCCs go through the gauge transform:
/// xi is the Perron vector of D A D and node i tends to s_i * xi^T D x0.
std::vector<RsccLimit> root_limits(const WeightMatrix& w, const Condensation& classic,
                                   const std::vector<SccClass>& classes, std::span<const double> x0,
                                   const SteadyStateOptions& opts = {});

/// Asymptotic state of every node, solving (I - A_sp) x_sp = sum of
/// upstream contributions level by level.
SteadyStateSolution steady_state_all(const WeightMatrix& w, const Condensation& classic,
                                     const std::vector<SccClass>& classes, std::span<const double> x0,
                                     const SteadyStateOptions& opts = {});

inline SteadyStateSolution steady_state_all(const Analysis& a, std::span<const double> x0,
                                            const SteadyStateOptions& opts = {}) {
    return steady_state_all(a.weights, a.classic, a.classes, x0, opts);
}

/// max over leaders of |x0_j|; 0 when there are no leaders.
double containment_bound(std::span<const NodeId> leaders, std::span<const double> x0);

/// Followers whose limit satisfies |x_bar_i| <= bound + tol.
std::vector<NodeId> contained_set(const SteadyStateSolution& sol, std::span<const NodeId> leaders,
                                  std::span<const double> x0, double tol = 1e-9);

}  // namespace sigcon
