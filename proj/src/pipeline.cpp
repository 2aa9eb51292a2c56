#include "sigcon/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "sigcon/errors.hpp"
#include "sigcon/report.hpp"
#include "sigcon/rng.hpp"
#include "sigcon/steady_state.hpp"

namespace sigcon {

std::vector<double> draw_initial_state(const SignedGraph& g, std::uint64_t seed, const InitialStateOptions& opts) {
    const auto leaders = g.leaders();
    if (!opts.leader_states.empty() && opts.leader_states.size() != leaders.size()) {
        throw Error(Errc::InvalidSpec, std::to_string(opts.leader_states.size()) + " leader states given for " +
                                           std::to_string(leaders.size()) + " leaders");
    }
    Rng rng(seed);
    std::vector<double> x0(static_cast<std::size_t>(g.size()));
    std::size_t next_leader = 0;
    for (NodeId v = 0; v < g.size(); ++v) {
        double value = 0.0;
        if (g.is_leader(v)) {
            value = opts.leader_states.empty() ? rng.uniform(opts.leader_min, opts.leader_max)
                                               : opts.leader_states[next_leader];
            ++next_leader;
        } else {
            value = rng.uniform(opts.follower_min, opts.follower_max);
        }
        x0[static_cast<std::size_t>(v)] = value;
    }
    return x0;
}

PipelineReport run_pipeline(const SignedGraph& g, const PipelineOptions& opts) {
    if (opts.trials < 0) throw Error(Errc::InvalidSpec, "trials must be >= 0");
    PipelineReport report;
    report.instance = follower_reduction(g, opts.budget);
    report.placement = solve_placement(report.instance);

    std::vector<std::vector<NodeId>> chosen;
    for (int j : report.placement.selected_roots) chosen.push_back(report.instance.root_members[static_cast<std::size_t>(j)]);
    report.realized = realize_control(g, chosen, derive_seed(opts.seed, 0));

    const Analysis a = analyze(report.realized.graph);
    report.phi = guaranteed_set(a);

    for (int t = 0; t < opts.trials; ++t) {
        TrialReport trial;
        trial.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(t) + 1);
        const std::vector<double> x0 = draw_initial_state(a.graph, trial.seed, opts.initial);
        const SimTrace trace = run(a.weights, x0, a.graph.leaders(), opts.sim);
        trial.converged = trace.converged;
        trial.iterations = trace.iterations;
        if (trace.converged) {
            const auto k = empirical_contained(trace, a.graph.leaders(), opts.contain_tol);
            trial.contained = static_cast<int>(k.size());
            trial.phi_within_contained = std::includes(k.begin(), k.end(), report.phi.begin(), report.phi.end());
        }
        const SteadyStateSolution sol = steady_state_all(a, x0);
        for (std::size_t i = 0; i < x0.size(); ++i) {
            trial.max_steady_gap = std::max(trial.max_steady_gap, std::abs(sol.x_bar[i] - trace.final_state[i]));
        }
        report.trials.push_back(trial);
    }
    return report;
}

nlohmann::json pipeline_json(const PipelineReport& report) {
    nlohmann::json doc;
    doc["placement"] = placement_json(report.instance, report.placement);
    auto added = nlohmann::json::array();
    for (const Edge& e : report.realized.added) added.push_back({e.src, e.dst});
    doc["control_edges"] = std::move(added);
    doc["phi_count"] = report.phi.size();
    doc["phi"] = report.phi;
    auto trials = nlohmann::json::array();
    bool all_ok = true;
    for (const TrialReport& t : report.trials) {
        const bool ok = t.converged && t.phi_within_contained && t.contained >= static_cast<int>(report.phi.size());
        all_ok = all_ok && ok;
        trials.push_back({{"seed", t.seed},
                          {"converged", t.converged},
                          {"iterations", t.iterations},
                          {"contained_count", t.contained},
                          {"phi_within_contained", t.phi_within_contained},
                          {"max_steady_gap", t.max_steady_gap}});
    }
    doc["trials"] = std::move(trials);
    doc["all_trials_contain_phi"] = all_ok;
    return doc;
}

}  // namespace sigcon
