#include "sigcon/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sigcon/errors.hpp"
#include "sigcon/rng.hpp"
#include "sigcon/steady_state.hpp"

namespace sigcon {

SimTrace run(const WeightMatrix& w, std::span<const double> x0, std::span<const NodeId> leaders,
             const SimOptions& opts) {
    const int n = w.size();
    if (static_cast<int>(x0.size()) != n) {
        throw Error(Errc::InvalidSpec, "initial state length " + std::to_string(x0.size()) + " != " + std::to_string(n));
    }
    const int stride = opts.stride < 0 ? (n <= 100 ? 1 : 10) : opts.stride;

    SimTrace trace;
    trace.bound = containment_bound(leaders, x0);
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), n);
    Eigen::VectorXd next(n);
    const auto record = [&](int k) {
        trace.steps.push_back(k);
        trace.samples.emplace_back(x.data(), x.data() + n);
    };
    record(0);

    int k = 0;
    while (k < opts.max_iters) {
        next.noalias() = w.a * x;
        const double change = n == 0 ? 0.0 : (next - x).lpNorm<Eigen::Infinity>();
        x.swap(next);
        ++k;
        if (change <= opts.conv_tol) {
            trace.converged = true;
            break;
        }
        if (stride > 0 && k % stride == 0) record(k);
    }
    if (trace.steps.back() != k) record(k);
    trace.iterations = k;
    trace.final_state.assign(x.data(), x.data() + n);
    return trace;
}

std::vector<NodeId> empirical_contained(const SimTrace& trace, std::span<const NodeId> leaders, double tol) {
    if (!trace.converged) {
        throw Error(Errc::NotConverged, "trace did not converge after " + std::to_string(trace.iterations) + " iterations");
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < static_cast<NodeId>(trace.final_state.size()); ++v) {
        if (std::find(leaders.begin(), leaders.end(), v) != leaders.end()) continue;
        if (std::abs(trace.final_state[static_cast<std::size_t>(v)]) <= trace.bound + tol) out.push_back(v);
    }
    return out;
}

ControlRealization realize_control(const SignedGraph& g, const std::vector<std::vector<NodeId>>& roots,
                                   std::uint64_t seed) {
    if (g.leaders().empty()) throw Error(Errc::NoLeaders, "graph has no leaders to supply control edges");
    Rng rng(seed);
    ControlRealization out;
    for (const auto& members : roots) {
        if (members.empty()) invariant_failure("empty root node set");
        const NodeId node = members[rng.index(members.size())];
        const NodeId leader = g.leaders()[rng.index(g.leaders().size())];
        if (g.is_leader(node)) invariant_failure("control target " + std::to_string(node) + " is a leader");
        const auto in = g.in_edges(node);
        const bool present = std::any_of(in.begin(), in.end(), [&](const InEdge& e) { return e.src == leader; }) ||
                             std::find_if(out.added.begin(), out.added.end(), [&](const Edge& e) {
                                 return e.src == leader && e.dst == node;
                             }) != out.added.end();
        if (!present) out.added.push_back({leader, node, Sign::Positive});
    }
    out.graph = g.with_edges(out.added);
    return out;
}

std::string trace_csv(const SimTrace& trace) {
    std::string out = "k";
    const std::size_t n = trace.final_state.size();
    for (std::size_t i = 0; i < n; ++i) out += ",x_" + std::to_string(i);
    out += '\n';
    char buf[32];
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
        out += std::to_string(trace.steps[s]);
        for (double v : trace.samples[s]) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace sigcon
