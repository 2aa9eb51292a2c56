#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigcon/placement.hpp"
#include "sigcon/simulate.hpp"

namespace sigcon {

struct InitialStateOptions {
    std::vector<double> leader_states;  // used verbatim when non-empty
    double leader_min = -1.0;
    double leader_max = 1.0;
    double follower_min = -10.0;
    double follower_max = 10.0;
};

/// Leaders take `leader_states` (or uniform draws), followers are uniform.
std::vector<double> draw_initial_state(const SignedGraph& g, std::uint64_t seed, const InitialStateOptions& opts = {});

struct PipelineOptions {
    int budget = 1;
    int trials = 1;
    std::uint64_t seed = 0;
    InitialStateOptions initial;
    SimOptions sim{100'000, 1e-12, 0};
    double contain_tol = 1e-6;
};

struct TrialReport {
    std::uint64_t seed = 0;
    bool converged = false;
    int iterations = 0;
    int contained = 0;
    bool phi_within_contained = false;
    double max_steady_gap = 0.0;  // max |x_sim - x_bar|
};

struct PipelineReport {
    PlacementInstance instance;
    PlacementSolution placement;
    ControlRealization realized;
    std::vector<NodeId> phi;  // guaranteed set on the realized graph
    std::vector<TrialReport> trials;
};

/// place -> realize_control -> `trials` simulations of the realized graph.
PipelineReport run_pipeline(const SignedGraph& g, const PipelineOptions& opts);

nlohmann::json pipeline_json(const PipelineReport& report);

}  // namespace sigcon
