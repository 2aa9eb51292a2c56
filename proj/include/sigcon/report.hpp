#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigcon/condense.hpp"
#include "sigcon/placement.hpp"
#include "sigcon/simulate.hpp"
#include "sigcon/steady_state.hpp"

namespace sigcon {

nlohmann::json to_json(const Condensation& c, const std::vector<SccClass>* classes = nullptr);
nlohmann::json analysis_json(const Analysis& a);
std::string to_dot(const Condensation& c, const std::vector<SccClass>* classes = nullptr);

/// Columns: node, scc, type, x_bar, contained.
std::string steady_csv(const Analysis& a, const SteadyStateSolution& sol, std::span<const NodeId> contained);
nlohmann::json steady_json(const Analysis& a, const SteadyStateSolution& sol, std::span<const double> x0,
                           std::span<const NodeId> contained);

nlohmann::json placement_json(const PlacementInstance& inst, const PlacementSolution& sol);
nlohmann::json trace_summary_json(const SimTrace& trace, std::span<const NodeId> contained,
                                  std::span<const NodeId> guaranteed);

/// Doubles rendered with 17 significant digits.
std::string format_double(double v);

}  // namespace sigcon
