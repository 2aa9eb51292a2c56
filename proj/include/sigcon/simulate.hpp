#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sigcon/signed_graph.hpp"

namespace sigcon {

struct SimOptions {
    int max_iters = 100'000;
    double conv_tol = 1e-12;
    /// Sampling stride; 0 records only the initial and final states, a
    /// negative value selects 1 for n <= 100 and 10 otherwise.
    int stride = -1;
};

struct SimTrace {
    std::vector<int> steps;                   // iteration index of each sample
    std::vector<std::vector<double>> samples;  // one state per sample
    int iterations = 0;
    bool converged = false;
    std::vector<double> final_state;
    double bound = 0.0;  // max_{j in C} |x_j(0)|
};

/// Iterates x <- A x until the successive difference drops to `conv_tol`
/// (sup norm) or `max_iters` is reached. Non-convergence is reported through
/// `converged`, not thrown.
SimTrace run(const WeightMatrix& w, std::span<const double> x0, std::span<const NodeId> leaders,
             const SimOptions& opts = {});

/// Followers with |x_final| <= bound + tol. Throws NotConverged on an
/// unconverged trace.
std::vector<NodeId> empirical_contained(const SimTrace& trace, std::span<const NodeId> leaders, double tol = 1e-6);

struct ControlRealization {
    SignedGraph graph;
    std::vector<Edge> added;  // one leader -> member edge per selected root
};

/// Adds a positive edge from a random leader to a random member of each
/// root node set, in the order given.
ControlRealization realize_control(const SignedGraph& g, const std::vector<std::vector<NodeId>>& roots,
                                   std::uint64_t seed);

/// Trace as CSV: header `k,x_0,...,x_{n-1}`, one row per sample.
std::string trace_csv(const SimTrace& trace);

}  // namespace sigcon
