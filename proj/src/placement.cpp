#include "sigcon/placement.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "sigcon/errors.hpp"

namespace sigcon {

std::vector<int> PlacementInstance::root_out_degree() const {
    std::vector<int> out(root_size.size(), 0);
    for (const Candidate& c : candidates) {
        for (int j : c.roots) ++out[static_cast<std::size_t>(j)];
    }
    return out;
}

PlacementInstance PlacementInstance::from_sizes(std::vector<int> root_size, std::vector<Candidate> candidates,
                                                int budget) {
    if (budget < 1) throw Error(Errc::InvalidSpec, "budget must be at least 1");
    if (budget > static_cast<int>(root_size.size())) {
        throw Error(Errc::BudgetExceedsRoots, "budget " + std::to_string(budget) + " exceeds the " +
                                                  std::to_string(root_size.size()) + " follower roots");
    }
    PlacementInstance inst;
    inst.budget = budget;
    inst.root_size = std::move(root_size);
    inst.root_members.resize(inst.root_size.size());
    for (Candidate& c : candidates) {
        std::sort(c.roots.begin(), c.roots.end());
        c.roots.erase(std::unique(c.roots.begin(), c.roots.end()), c.roots.end());
        if (c.roots.empty()) invariant_failure("non-root candidate without an upstream root");
        for (int j : c.roots) {
            if (j < 0 || j >= inst.root_count()) invariant_failure("candidate refers to unknown root");
        }
        (static_cast<int>(c.roots.size()) <= budget ? inst.candidates : inst.excluded).push_back(std::move(c));
    }
    return inst;
}

PlacementInstance follower_reduction(const SignedGraph& g, int budget) {
    const std::vector<NodeId> followers = g.followers();
    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t i = 0; i < followers.size(); ++i) local[static_cast<std::size_t>(followers[i])] = static_cast<int>(i);
    Digraph sub(followers.size());
    for (const Edge& e : g.edges()) {
        const int s = local[static_cast<std::size_t>(e.src)], d = local[static_cast<std::size_t>(e.dst)];
        if (s >= 0 && d >= 0 && s != d) sub[static_cast<std::size_t>(s)].push_back(d);
    }
    const Condensation fc = condense(sub, scc(sub).component_of, CondensationKind::Classic);
    const Reach r = reach(fc);

    const auto original = [&](const std::vector<NodeId>& locals) {
        std::vector<NodeId> out;
        for (NodeId v : locals) out.push_back(followers[static_cast<std::size_t>(v)]);
        std::sort(out.begin(), out.end());
        return out;
    };
    const std::vector<int> roots = fc.roots();
    std::vector<int> root_index(static_cast<std::size_t>(fc.size()), -1);
    std::vector<int> sizes;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        root_index[static_cast<std::size_t>(roots[j])] = static_cast<int>(j);
        sizes.push_back(static_cast<int>(fc.members[static_cast<std::size_t>(roots[j])].size()));
    }
    std::vector<Candidate> candidates;
    for (int s = 0; s < fc.size(); ++s) {
        if (fc.level[static_cast<std::size_t>(s)] == 1) continue;
        Candidate c;
        c.size = static_cast<int>(fc.members[static_cast<std::size_t>(s)].size());
        c.members = original(fc.members[static_cast<std::size_t>(s)]);
        for (int u : r.upstream_roots(fc, s)) c.roots.push_back(root_index[static_cast<std::size_t>(u)]);
        candidates.push_back(std::move(c));
    }
    PlacementInstance inst = PlacementInstance::from_sizes(std::move(sizes), std::move(candidates), budget);
    for (std::size_t j = 0; j < roots.size(); ++j) {
        inst.root_members[j] = original(fc.members[static_cast<std::size_t>(roots[j])]);
    }
    return inst;
}

long placement_value(const PlacementInstance& inst, std::span<const int> selected) {
    std::vector<std::uint8_t> chosen(inst.root_size.size(), 0);
    long value = 0;
    for (int j : selected) {
        chosen[static_cast<std::size_t>(j)] = 1;
        value += inst.root_size[static_cast<std::size_t>(j)];
    }
    for (const Candidate& c : inst.candidates) {
        if (std::all_of(c.roots.begin(), c.roots.end(), [&](int j) { return chosen[static_cast<std::size_t>(j)] != 0; })) {
            value += c.size;
        }
    }
    return value;
}

PlacementSolution solve_placement(const PlacementInstance& inst) {
    const int roots = inst.root_count();
    const int d = inst.budget;
    if (d < 1 || d > roots) invariant_failure("placement budget outside [1, roots]");

    // 0 undecided, 1 selected, 2 rejected.
    std::vector<int> state(static_cast<std::size_t>(roots), 0);
    std::vector<int> selected;
    std::vector<int> best;
    long best_value = -1;
    std::vector<int> spare;

    const auto upper_bound = [&](int next, long selected_mass) {
        long bound = selected_mass;
        spare.clear();
        for (int j = next; j < roots; ++j) spare.push_back(inst.root_size[static_cast<std::size_t>(j)]);
        const auto take = std::min<std::size_t>(spare.size(), static_cast<std::size_t>(d) - selected.size());
        std::partial_sort(spare.begin(), spare.begin() + static_cast<std::ptrdiff_t>(take), spare.end(), std::greater<>());
        for (std::size_t t = 0; t < take; ++t) bound += spare[t];
        for (const Candidate& c : inst.candidates) {
            const bool blocked = std::any_of(c.roots.begin(), c.roots.end(),
                                             [&](int j) { return state[static_cast<std::size_t>(j)] == 2; });
            if (!blocked) bound += c.size;
        }
        return bound;
    };

    std::function<void(int, long)> search = [&](int next, long selected_mass) {
        if (static_cast<int>(selected.size()) == d) {
            const long value = placement_value(inst, selected);
            if (value > best_value) {
                best_value = value;
                best = selected;
            }
            return;
        }
        if (roots - next < d - static_cast<int>(selected.size())) return;
        if (best_value >= 0 && upper_bound(next, selected_mass) <= best_value) return;

        state[static_cast<std::size_t>(next)] = 1;
        selected.push_back(next);
        search(next + 1, selected_mass + inst.root_size[static_cast<std::size_t>(next)]);
        selected.pop_back();
        state[static_cast<std::size_t>(next)] = 2;
        search(next + 1, selected_mass);
        state[static_cast<std::size_t>(next)] = 0;
    };
    search(0, 0);
    if (best_value < 0) invariant_failure("placement ILP infeasible");

    PlacementSolution sol;
    sol.selected_roots = best;
    sol.objective = best_value;
    sol.root_vars.assign(static_cast<std::size_t>(roots), 0);
    for (int j : best) {
        sol.root_vars[static_cast<std::size_t>(j)] = 1;
        const auto& members = inst.root_members[static_cast<std::size_t>(j)];
        sol.phi.insert(sol.phi.end(), members.begin(), members.end());
    }
    sol.candidate_root.assign(inst.candidates.size(), -1);
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
        const Candidate& c = inst.candidates[i];
        if (std::all_of(c.roots.begin(), c.roots.end(), [&](int j) { return sol.root_vars[static_cast<std::size_t>(j)] == 1; })) {
            sol.candidate_root[i] = c.roots.front();
            sol.phi.insert(sol.phi.end(), c.members.begin(), c.members.end());
        }
    }
    std::sort(sol.phi.begin(), sol.phi.end());
    return sol;
}

bool satisfies_constraints(const PlacementInstance& inst, const PlacementSolution& sol, std::string* why) {
    const auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int roots = inst.root_count();
    if (static_cast<int>(sol.root_vars.size()) != roots || sol.candidate_root.size() != inst.candidates.size()) {
        return fail("assignment has the wrong shape");
    }
    int selected = 0;
    for (int y : sol.root_vars) {
        if (y != 0 && y != 1) return fail("non-binary root variable");
        selected += y;
    }
    if (selected != inst.budget) return fail("sum of root variables differs from the budget");

    const std::vector<int> k_out = inst.root_out_degree();
    std::vector<int> root_load(static_cast<std::size_t>(roots), 0);
    long objective = 0;
    for (int j = 0; j < roots; ++j) objective += static_cast<long>(inst.root_size[static_cast<std::size_t>(j)]) * sol.root_vars[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
        const Candidate& c = inst.candidates[i];
        const int carrier = sol.candidate_root[i];
        int row_sum = 0;
        for (int j : c.roots) {
            const int y = (carrier == j) ? 1 : 0;
            row_sum += y;
            root_load[static_cast<std::size_t>(j)] += y;
        }
        if (carrier != -1 && row_sum != 1) return fail("candidate assigned to a root it has no edge to");
        if (row_sum > 1) return fail("candidate carries more than one edge variable");
        int upstream_selected = 0;
        for (int j : c.roots) upstream_selected += sol.root_vars[static_cast<std::size_t>(j)];
        const int k_in = static_cast<int>(c.roots.size());
        if (k_in * row_sum > upstream_selected) return fail("candidate " + std::to_string(i) + " violates the in-degree constraint");
        objective += static_cast<long>(c.size) * row_sum;
    }
    for (int j = 0; j < roots; ++j) {
        if (root_load[static_cast<std::size_t>(j)] > k_out[static_cast<std::size_t>(j)] * sol.root_vars[static_cast<std::size_t>(j)]) {
            return fail("root " + std::to_string(j) + " violates the out-degree constraint");
        }
    }
    if (objective != sol.objective) return fail("objective does not match the assignment");
    return true;
}

std::vector<NodeId> guaranteed_set(const Analysis& a) {
    const SignedGraph& g = a.graph;
    std::vector<NodeId> out;
    for (int c = 0; c < a.classic.size(); ++c) {
        const auto& members = a.classic.members[static_cast<std::size_t>(c)];
        if (g.is_leader(members.front())) continue;
        bool guaranteed = true;
        for (int root : a.classic_reach.upstream_roots(a.classic, c)) {
            for (NodeId v : a.classic.members[static_cast<std::size_t>(root)]) guaranteed = guaranteed && g.is_leader(v);
        }
        if (guaranteed) out.insert(out.end(), members.begin(), members.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> guaranteed_set(const SignedGraph& g) { return guaranteed_set(analyze(g)); }

std::vector<NodeId> guaranteed_set(const SignedGraph& g, std::span<const NodeId> controlled) {
    if (controlled.empty()) return guaranteed_set(g);
    if (g.leaders().empty()) throw Error(Errc::NoLeaders, "cannot control followers without leaders");
    const NodeId leader = g.leaders().front();
    std::vector<Edge> extra;
    for (NodeId v : controlled) {
        if (g.is_leader(v)) continue;
        const auto in = g.in_edges(v);
        if (std::none_of(in.begin(), in.end(), [&](const InEdge& e) { return e.src == leader; })) {
            extra.push_back({leader, v, Sign::Positive});
        }
    }
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    return guaranteed_set(g.with_edges(extra));
}

namespace {

class LpExpr {
public:
    explicit LpExpr(std::ostringstream& out) : out_(out) {}

    void term(long coeff, const std::string& var) {
        if (coeff == 0) return;
        if (count_ > 0 && count_ % 8 == 0) out_ << "\n   ";
        if (count_ == 0) {
            if (coeff < 0) out_ << "- ";
        } else {
            out_ << (coeff < 0 ? " - " : " + ");
        }
        const long mag = coeff < 0 ? -coeff : coeff;
        if (mag != 1) out_ << mag << ' ';
        out_ << var;
        ++count_;
    }

private:
    std::ostringstream& out_;
    int count_ = 0;
};

std::string edge_var(std::size_t i, int j) { return "y_" + std::to_string(i) + "_" + std::to_string(j); }
std::string root_var(int j) { return "y_" + std::to_string(j) + "_pi"; }

}  // namespace

std::string export_lp(const PlacementInstance& inst) {
    std::ostringstream out;
    const int roots = inst.root_count();
    out << "\\ Control placement: " << roots << " roots, " << inst.candidates.size() << " candidates, budget "
        << inst.budget << "\n";
    out << "Maximize\n obj: ";
    {
        LpExpr obj(out);
        for (int j = 0; j < roots; ++j) obj.term(inst.root_size[static_cast<std::size_t>(j)], root_var(j));
        for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
            for (int j : inst.candidates[i].roots) obj.term(inst.candidates[i].size, edge_var(i, j));
        }
    }
    out << "\nSubject To\n budget: ";
    {
        LpExpr budget(out);
        for (int j = 0; j < roots; ++j) budget.term(1, root_var(j));
    }
    out << " = " << inst.budget << "\n";

    const std::vector<int> k_out = inst.root_out_degree();
    for (int j = 0; j < roots; ++j) {
        if (k_out[static_cast<std::size_t>(j)] == 0) continue;
        out << " root_" << j << ": ";
        LpExpr row(out);
        for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
            const auto& r = inst.candidates[i].roots;
            if (std::binary_search(r.begin(), r.end(), j)) row.term(1, edge_var(i, j));
        }
        row.term(-k_out[static_cast<std::size_t>(j)], root_var(j));
        out << " <= 0\n";
    }
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
        const Candidate& c = inst.candidates[i];
        out << " cand_" << i << ": ";
        LpExpr row(out);
        const long k_in = static_cast<long>(c.roots.size());
        for (int j : c.roots) row.term(k_in, edge_var(i, j));
        for (int j : c.roots) row.term(-1, root_var(j));
        out << " <= 0\n";
    }
    out << "Binary\n";
    for (int j = 0; j < roots; ++j) out << ' ' << root_var(j) << '\n';
    for (std::size_t i = 0; i < inst.candidates.size(); ++i) {
        for (int j : inst.candidates[i].roots) out << ' ' << edge_var(i, j) << '\n';
    }
    out << "End\n";
    return out.str();
}

}  // namespace sigcon
