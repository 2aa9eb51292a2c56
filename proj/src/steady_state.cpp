#include "sigcon/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

#include "sigcon/errors.hpp"

namespace sigcon {
namespace {

using SparseColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

double perron_residual(const SparseRowMatrix& block, const Eigen::VectorXd& xi) {
    const Eigen::VectorXd moved = block.transpose() * xi;
    return (moved - xi).lpNorm<Eigen::Infinity>();
}

Eigen::VectorXd perron_direct(const SparseRowMatrix& block) {
    const int m = static_cast<int>(block.rows());
    // (M^T - I) xi = 0 with the last equation replaced by sum(xi) = 1.
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(block.nonZeros() + 2 * m));
    for (int i = 0; i < m; ++i) {
        for (SparseRowMatrix::InnerIterator it(block, i); it; ++it) {
            const int j = static_cast<int>(it.col());
            if (j != m - 1) triplets.emplace_back(j, i, it.value());
        }
    }
    for (int j = 0; j < m - 1; ++j) triplets.emplace_back(j, j, -1.0);
    for (int i = 0; i < m; ++i) triplets.emplace_back(m - 1, i, 1.0);
    SparseColMatrix system(m, m);
    system.setFromTriplets(triplets.begin(), triplets.end());
    system.makeCompressed();

    Eigen::SparseLU<SparseColMatrix> lu;
    lu.compute(system);
    if (lu.info() != Eigen::Success) {
        throw Error(Errc::NoConvergence, "Perron system is singular (block not irreducible?)");
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs(m - 1) = 1.0;
    return lu.solve(rhs);
}

Eigen::VectorXd perron_power(const SparseRowMatrix& block, const SteadyStateOptions& opts) {
    const int m = static_cast<int>(block.rows());
    Eigen::VectorXd xi = Eigen::VectorXd::Constant(m, 1.0 / m);
    for (int k = 0; k < opts.power_max_iters; ++k) {
        Eigen::VectorXd next = block.transpose() * xi;
        next /= next.sum();
        const double change = (next - xi).lpNorm<Eigen::Infinity>();
        xi.swap(next);
        if (change <= opts.perron_tol * 1e-2) break;
    }
    return xi;
}

// Two-colouring of the signed support of a block: true iff some +-1 gauge
// makes every entry of D B D nonnegative.
bool gauge_balanced(const SparseRowMatrix& block) {
    const int m = static_cast<int>(block.rows());
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (SparseRowMatrix::InnerIterator it(block, i); it; ++it) {
            const int j = static_cast<int>(it.col());
            const int s = it.value() < 0 ? -1 : 1;
            if (i == j) {
                if (s < 0) return false;
                continue;
            }
            adj[static_cast<std::size_t>(i)].emplace_back(j, s);
            adj[static_cast<std::size_t>(j)].emplace_back(i, s);
        }
    }
    std::vector<int> colour(static_cast<std::size_t>(m), 0);
    std::vector<int> queue;
    for (int start = 0; start < m; ++start) {
        if (colour[static_cast<std::size_t>(start)] != 0) continue;
        colour[static_cast<std::size_t>(start)] = 1;
        queue.assign(1, start);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            const int u = queue[h];
            for (auto [v, s] : adj[static_cast<std::size_t>(u)]) {
                const int want = colour[static_cast<std::size_t>(u)] * s;
                auto& cv = colour[static_cast<std::size_t>(v)];
                if (cv == 0) {
                    cv = want;
                    queue.push_back(v);
                } else if (cv != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

Eigen::VectorXd left_perron(const SparseRowMatrix& block, const SteadyStateOptions& opts) {
    const int m = static_cast<int>(block.rows());
    if (m == 0) return {};
    Eigen::VectorXd xi = m <= opts.direct_solve_limit ? perron_direct(block) : perron_power(block, opts);
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
        if (xi(i) < 0 && xi(i) > -1e-14) xi(i) = 0.0;
    }
    xi /= xi.sum();
    const double residual = perron_residual(block, xi);
    if (!(residual <= opts.perron_tol) || xi.minCoeff() < 0) {
        throw Error(Errc::NoConvergence, "left Perron vector residual " + std::to_string(residual) +
                                             " exceeds tolerance on a block of size " + std::to_string(m));
    }
    return xi;
}

const char* limit_kind_name(LimitKind kind) {
    switch (kind) {
        case LimitKind::Consensus: return "consensus";
        case LimitKind::Bipartite: return "bipartite";
        case LimitKind::Zero: return "zero";
    }
    return "unknown";
}

SparseRowMatrix extract_block(const SparseRowMatrix& a, std::span<const NodeId> rows, std::span<const NodeId> cols) {
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (SparseRowMatrix::InnerIterator it(a, rows[r]); it; ++it) {
            const auto found = std::lower_bound(cols.begin(), cols.end(), static_cast<NodeId>(it.col()));
            if (found != cols.end() && *found == it.col()) {
                triplets.emplace_back(static_cast<int>(r), static_cast<int>(found - cols.begin()), it.value());
            }
        }
    }
    SparseRowMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    out.setFromTriplets(triplets.begin(), triplets.end());
    out.makeCompressed();
    return out;
}

std::vector<RsccLimit> root_limits(const WeightMatrix& w, const Condensation& classic,
                                   const std::vector<SccClass>& classes, std::span<const double> x0,
                                   const SteadyStateOptions& opts) {
    std::vector<RsccLimit> out;
    for (int c : classic.roots()) {
        const SccClass& cls = classes[static_cast<std::size_t>(c)];
        const auto& members = cls.members;
        if (members != classic.members[static_cast<std::size_t>(c)]) invariant_failure("class/SCC mismatch");
        RsccLimit lim;
        lim.scc = c;
        lim.gauge = cls.gauge;
        SparseRowMatrix block = extract_block(w.a, members, members);
        switch (cls.type) {
            case SccType::Consensus: {
                lim.kind = LimitKind::Consensus;
                const Eigen::VectorXd xi = left_perron(block, opts);
                double alpha = 0.0;
                for (std::size_t i = 0; i < members.size(); ++i) alpha += xi(static_cast<Eigen::Index>(i)) * x0[static_cast<std::size_t>(members[i])];
                lim.alpha = alpha;
                break;
            }
            case SccType::Bipartite: {
                lim.kind = LimitKind::Bipartite;
                for (int i = 0; i < block.outerSize(); ++i) {
                    for (SparseRowMatrix::InnerIterator it(block, i); it; ++it) {
                        it.valueRef() *= cls.gauge[static_cast<std::size_t>(i)] * cls.gauge[static_cast<std::size_t>(it.col())];
                    }
                }
                const Eigen::VectorXd xi = left_perron(block, opts);
                double alpha = 0.0;
                for (std::size_t i = 0; i < members.size(); ++i) {
                    alpha += xi(static_cast<Eigen::Index>(i)) * cls.gauge[i] * x0[static_cast<std::size_t>(members[i])];
                }
                lim.alpha = alpha;
                break;
            }
            case SccType::Unbalanced: {
                // rho(A_scc) = 1 only when -A_scc is balanced, which needs all
                // self-loops negative; such a block oscillates with period 2.
                SparseRowMatrix negated = -block;
                if (gauge_balanced(negated)) {
                    throw Error(Errc::Oscillatory, "root SCC " + std::to_string(c) +
                                                       " has eigenvalue -1 and no limit (all self-loops negative)");
                }
                lim.kind = LimitKind::Zero;
                lim.alpha = 0.0;
                break;
            }
        }
        out.push_back(std::move(lim));
    }
    return out;
}

SteadyStateSolution steady_state_all(const WeightMatrix& w, const Condensation& classic,
                                     const std::vector<SccClass>& classes, std::span<const double> x0,
                                     const SteadyStateOptions& opts) {
    const int n = w.size();
    if (static_cast<int>(x0.size()) != n) {
        throw Error(Errc::InvalidSpec, "initial state has " + std::to_string(x0.size()) + " entries, graph has " +
                                           std::to_string(n) + " nodes");
    }
    SteadyStateSolution sol;
    sol.x_bar.assign(static_cast<std::size_t>(n), 0.0);
    sol.roots = root_limits(w, classic, classes, x0, opts);
    for (const RsccLimit& lim : sol.roots) {
        const auto& members = classic.members[static_cast<std::size_t>(lim.scc)];
        for (std::size_t i = 0; i < members.size(); ++i) {
            const double value = lim.kind == LimitKind::Zero ? 0.0 : lim.gauge[i] * lim.alpha;
            sol.x_bar[static_cast<std::size_t>(members[i])] = value;
        }
    }

    // Supernode ids follow level order, so every upstream block is final here.
    for (int c = 0; c < classic.size(); ++c) {
        if (classic.level[static_cast<std::size_t>(c)] == 1) continue;
        const auto& members = classic.members[static_cast<std::size_t>(c)];
        const int m = static_cast<int>(members.size());
        const auto local = [&](NodeId v) -> int {
            const auto it = std::lower_bound(members.begin(), members.end(), v);
            return (it != members.end() && *it == v) ? static_cast<int>(it - members.begin()) : -1;
        };
        std::vector<Eigen::Triplet<double>> triplets;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (int r = 0; r < m; ++r) {
            triplets.emplace_back(r, r, 1.0);
            for (SparseRowMatrix::InnerIterator it(w.a, members[static_cast<std::size_t>(r)]); it; ++it) {
                const int j = static_cast<int>(it.col());
                const int lj = local(j);
                if (lj >= 0) {
                    triplets.emplace_back(r, lj, -it.value());
                } else {
                    rhs(r) += it.value() * sol.x_bar[static_cast<std::size_t>(j)];
                }
            }
        }
        SparseColMatrix system(m, m);
        system.setFromTriplets(triplets.begin(), triplets.end());
        system.makeCompressed();
        Eigen::SparseLU<SparseColMatrix> lu;
        lu.compute(system);
        if (lu.info() != Eigen::Success) {
            invariant_failure("I - A_sp is singular for SCC " + std::to_string(c));
        }
        const Eigen::VectorXd x = lu.solve(rhs);
        for (int r = 0; r < m; ++r) sol.x_bar[static_cast<std::size_t>(members[static_cast<std::size_t>(r)])] = x(r);
    }
    for (NodeId v = 0; v < n; ++v) {
        if (classic.level[static_cast<std::size_t>(classic.node_map[static_cast<std::size_t>(v)])] == 1 &&
            w.a.coeff(v, v) == 1.0) {
            sol.x_bar[static_cast<std::size_t>(v)] = x0[static_cast<std::size_t>(v)];
        }
    }

    const Eigen::Map<const Eigen::VectorXd> xb(sol.x_bar.data(), n);
    sol.residual = n == 0 ? 0.0 : (xb - w.a * xb).lpNorm<Eigen::Infinity>();
    if (!(sol.residual <= opts.residual_tol)) {
        throw Error(Errc::NoConvergence, "steady-state fixed-point residual " + std::to_string(sol.residual) +
                                             " exceeds " + std::to_string(opts.residual_tol));
    }
    return sol;
}

double containment_bound(std::span<const NodeId> leaders, std::span<const double> x0) {
    double bound = 0.0;
    for (NodeId v : leaders) bound = std::max(bound, std::abs(x0[static_cast<std::size_t>(v)]));
    return bound;
}

std::vector<NodeId> contained_set(const SteadyStateSolution& sol, std::span<const NodeId> leaders,
                                  std::span<const double> x0, double tol) {
    const double bound = containment_bound(leaders, x0);
    std::vector<NodeId> out;
    for (NodeId v = 0; v < static_cast<NodeId>(sol.x_bar.size()); ++v) {
        if (std::binary_search(leaders.begin(), leaders.end(), v)) continue;
        if (std::abs(sol.x_bar[static_cast<std::size_t>(v)]) <= bound + tol) out.push_back(v);
    }
    return out;
}

}  // namespace sigcon
