// sigcon: signed-network containment analysis and control placement.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sigcon/errors.hpp"
#include "sigcon/generator.hpp"
#include "sigcon/pipeline.hpp"
#include "sigcon/report.hpp"

namespace {

using namespace sigcon;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

SignedGraph load_graph(const std::string& path) {
    std::vector<std::string> warnings;
    SignedGraph g = parse_graph(read_file(path), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return g;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

std::vector<double> read_vector(const std::string& text) {
    std::string cleaned = text;
    for (char& c : cleaned) {
        if (c == '[' || c == ']' || c == ',') c = ' ';
    }
    std::istringstream in(cleaned);
    std::vector<double> out;
    double v = 0.0;
    while (in >> v) out.push_back(v);
    if (!in.eof()) throw ParseError(0, "initial-state file must contain only numbers");
    return out;
}

struct StateArgs {
    std::string x0;
    std::vector<double> leader_states;
    std::vector<double> follower_range{-10.0, 10.0};
    std::vector<double> leader_range{-1.0, 1.0};

    void attach(CLI::App* cmd) {
        cmd->add_option("--x0", x0, "Initial state: a file of n numbers, or an integer seed")->required();
        cmd->add_option("--leader-states", leader_states, "Leader states in leader-id order (seeded draws only)")
            ->delimiter(',');
        cmd->add_option("--follower-range", follower_range, "Uniform range for follower states")
            ->expected(2)
            ->capture_default_str();
        cmd->add_option("--leader-range", leader_range, "Uniform range for leader states without --leader-states")
            ->expected(2)
            ->capture_default_str();
    }

    InitialStateOptions options() const {
        InitialStateOptions o;
        o.leader_states = leader_states;
        o.follower_min = follower_range[0];
        o.follower_max = follower_range[1];
        o.leader_min = leader_range[0];
        o.leader_max = leader_range[1];
        return o;
    }

    std::vector<double> resolve(const SignedGraph& g) const {
        if (std::filesystem::exists(x0)) {
            auto values = read_vector(read_file(x0));
            if (static_cast<int>(values.size()) != g.size()) {
                throw Error(Errc::InvalidSpec, "initial-state file has " + std::to_string(values.size()) +
                                                   " values for " + std::to_string(g.size()) + " nodes");
            }
            return values;
        }
        std::uint64_t seed = 0;
        const auto* end = x0.data() + x0.size();
        auto [ptr, ec] = std::from_chars(x0.data(), end, seed);
        if (ec != std::errc{} || ptr != end) throw UsageError("--x0 '" + x0 + "' is neither a file nor a seed");
        return draw_initial_state(g, seed, options());
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signed-network containment analysis and control placement"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Condensations, levels and SCC types");
    std::string graph_path, json_path, dot_path;
    analyze_cmd->add_option("graph", graph_path, "Graph file (edge list or JSON)")->required();
    analyze_cmd->add_option("--json", json_path, "Write the analysis JSON here (default stdout)");
    analyze_cmd->add_option("--dot", dot_path, "Write the classic condensation as dot here");

    // steady
    auto* steady_cmd = app.add_subcommand("steady", "Exact asymptotic states and the contained set");
    StateArgs steady_state_args;
    std::string csv_path;
    double steady_tol = 1e-9;
    steady_cmd->add_option("graph", graph_path, "Graph file")->required();
    steady_state_args.attach(steady_cmd);
    steady_cmd->add_option("--csv", csv_path, "Write node,scc,type,x_bar,contained CSV here");
    steady_cmd->add_option("--json", json_path, "Write the solution JSON here (default stdout)");
    steady_cmd->add_option("--tol", steady_tol, "Containment tolerance");

    // place
    auto* place_cmd = app.add_subcommand("place", "Optimal control placement for a budget d");
    int budget = 1;
    std::string lp_path;
    place_cmd->add_option("graph", graph_path, "Graph file")->required();
    place_cmd->add_option("-d,--budget", budget, "Number of control edges")->required();
    place_cmd->add_option("--export-lp", lp_path, "Also write the ILP in LP format");
    place_cmd->add_option("--json", json_path, "Write the placement JSON here (default stdout)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Iterate the dynamics and measure containment");
    StateArgs sim_state_args;
    std::string trace_path;
    SimOptions sim_opts;
    double contain_tol = 1e-6;
    sim_cmd->add_option("graph", graph_path, "Graph file")->required();
    sim_state_args.attach(sim_cmd);
    sim_cmd->add_option("--trace", trace_path, "Write the sampled trajectory CSV here");
    sim_cmd->add_option("--stride", sim_opts.stride, "Sampling stride (-1: 1 for n <= 100 else 10; 0: endpoints)");
    sim_cmd->add_option("--max-iters", sim_opts.max_iters, "Iteration cap");
    sim_cmd->add_option("--conv-tol", sim_opts.conv_tol, "Convergence threshold on the successive difference");
    sim_cmd->add_option("--contain-tol", contain_tol, "Containment tolerance");
    sim_cmd->add_option("--json", json_path, "Write the summary JSON here (default stdout)");

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Random layered signed graph from a JSON spec");
    std::string spec_path, out_path;
    std::optional<std::uint64_t> gen_seed;
    bool gen_json = false;
    gen_cmd->add_option("--spec", spec_path, "Generator spec JSON file")->required();
    gen_cmd->add_option("--seed", gen_seed, "Override the spec seed");
    gen_cmd->add_option("--out", out_path, "Write the graph here (default stdout)");
    gen_cmd->add_flag("--json-format", gen_json, "Emit the JSON graph format instead of the edge list");

    // pipeline
    auto* pipe_cmd = app.add_subcommand("pipeline", "place -> realize control -> simulate trials");
    PipelineOptions pipe_opts;
    StateArgs pipe_state_args;  // only the ranges and leader states are used
    std::string realized_path;
    pipe_cmd->add_option("input", graph_path, "Graph file or generator spec JSON")->required();
    pipe_cmd->add_option("-d,--budget", pipe_opts.budget, "Number of control edges")->required();
    pipe_cmd->add_option("--trials", pipe_opts.trials, "Number of random initial conditions");
    pipe_cmd->add_option("--seed", pipe_opts.seed, "Seed for control realization and initial states");
    pipe_cmd->add_option("--leader-states", pipe_state_args.leader_states, "Leader states in leader-id order")
        ->delimiter(',');
    pipe_cmd->add_option("--follower-range", pipe_state_args.follower_range, "Uniform range for follower states")
        ->expected(2);
    pipe_cmd->add_option("--leader-range", pipe_state_args.leader_range, "Uniform range for leader states")
        ->expected(2);
    pipe_cmd->add_option("--max-iters", pipe_opts.sim.max_iters, "Iteration cap per simulation");
    pipe_cmd->add_option("--conv-tol", pipe_opts.sim.conv_tol, "Convergence threshold");
    pipe_cmd->add_option("--contain-tol", pipe_opts.contain_tol, "Containment tolerance");
    pipe_cmd->add_option("--realized", realized_path, "Write the controlled graph (edge list) here");
    pipe_cmd->add_option("--json", json_path, "Write the report JSON here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (analyze_cmd->parsed()) {
            const Analysis a = analyze(load_graph(graph_path));
            for (const auto& d : a.diagnostics) std::cerr << "diagnostic: " << d << '\n';
            emit(json_path, analysis_json(a).dump(2) + "\n");
            if (!dot_path.empty()) emit(dot_path, to_dot(a.classic, &a.classes));
        } else if (steady_cmd->parsed()) {
            const Analysis a = analyze(load_graph(graph_path));
            const auto x0 = steady_state_args.resolve(a.graph);
            const auto sol = steady_state_all(a, x0);
            const auto k = contained_set(sol, a.graph.leaders(), x0, steady_tol);
            if (!csv_path.empty()) emit(csv_path, steady_csv(a, sol, k));
            emit(json_path, steady_json(a, sol, x0, k).dump(2) + "\n");
        } else if (place_cmd->parsed()) {
            const SignedGraph g = load_graph(graph_path);
            const PlacementInstance inst = follower_reduction(g, budget);
            const PlacementSolution sol = solve_placement(inst);
            if (!lp_path.empty()) emit(lp_path, export_lp(inst));
            emit(json_path, placement_json(inst, sol).dump(2) + "\n");
        } else if (sim_cmd->parsed()) {
            const Analysis a = analyze(load_graph(graph_path));
            const auto x0 = sim_state_args.resolve(a.graph);
            const SimTrace trace = run(a.weights, x0, a.graph.leaders(), sim_opts);
            if (!trace_path.empty()) emit(trace_path, trace_csv(trace));
            const auto k = trace.converged ? empirical_contained(trace, a.graph.leaders(), contain_tol)
                                           : std::vector<NodeId>{};
            emit(json_path, trace_summary_json(trace, k, guaranteed_set(a)).dump(2) + "\n");
            if (!trace.converged) {
                std::cerr << "error: simulation did not converge within " << trace.iterations << " iterations\n";
                return kExitNumerical;
            }
        } else if (gen_cmd->parsed()) {
            GeneratorSpec spec = GeneratorSpec::from_json(read_file(spec_path));
            if (gen_seed) spec.seed = *gen_seed;
            const GeneratedGraph gen = generate(spec);
            emit(out_path, gen_json ? to_graph_json(gen.graph) : to_edge_list(gen.graph));
        } else if (pipe_cmd->parsed()) {
            const std::string text = read_file(graph_path);
            SignedGraph g;
            const auto doc = nlohmann::json::parse(text, nullptr, false);
            if (!doc.is_discarded() && doc.is_object() && doc.contains("levels")) {
                GeneratorSpec spec = GeneratorSpec::from_json(text);
                if (!doc.contains("seed")) spec.seed = pipe_opts.seed;
                g = generate(spec).graph;
            } else {
                g = load_graph(graph_path);
            }
            pipe_opts.initial = pipe_state_args.options();
            const PipelineReport report = run_pipeline(g, pipe_opts);
            if (!realized_path.empty()) emit(realized_path, to_edge_list(report.realized.graph));
            emit(json_path, pipeline_json(report).dump(2) + "\n");
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_numerical() ? kExitNumerical : kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
