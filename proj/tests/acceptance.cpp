// Acceptance suite: one PASS/FAIL line per criterion.
// usage: acceptance <work-dir>

#include <sys/wait.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sigcon/condense.hpp"
#include "sigcon/generator.hpp"
#include "sigcon/pipeline.hpp"
#include "sigcon/placement.hpp"
#include "sigcon/simulate.hpp"
#include "sigcon/steady_state.hpp"

namespace fs = std::filesystem;
using namespace sigcon;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and sizes pinned by the acceptance criteria.
constexpr double kOracleTol = 1e-6;
constexpr double kGaugeTol = 1e-10;
constexpr double kContainTol = 1e-6;
constexpr double kC1Seconds = 30.0;
constexpr double kC7Seconds = 10.0;

fs::path work;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int sh(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

const char* kLayeredSpec = R"({
  "levels": 4,
  "sccs_per_level": [4, 4, 4, 3],
  "scc_size_range": [40, 160],
  "type_mix": [5, 5, 5],
  "n_leaders": 3,
  "total_nodes": 1500,
  "inter_scc_edge_prob": 0.3,
  "seed": 2024
})";

std::vector<double> uniform_state(int n, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = u(rng);
    return x;
}

Outcome oracle_equivalence() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    int largest = 0;
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100; ++i) {
        GeneratorSpec s;
        std::uniform_int_distribution<int> levels(2, 3), per(1, 3);
        s.levels = levels(rng);
        s.sccs_per_level.clear();
        int total = 0;
        for (int l = 0; l < s.levels; ++l) {
            s.sccs_per_level.push_back(per(rng));
            total += s.sccs_per_level.back();
        }
        if (total < 3) {
            s.sccs_per_level.back() += 3 - total;
            total = 3;
        }
        s.size_min = 2;
        s.size_max = 6;
        // at least one SCC of every type
        s.type_mix = {1, 1, 1};
        for (int k = 3; k < total; ++k) ++s.type_mix[static_cast<std::size_t>(rng() % 3)];
        s.n_leaders = 1 + static_cast<int>(rng() % 3);
        s.inter_scc_edge_prob = 0.3;
        s.seed = rng();
        const auto gen = generate(s);

        // put a random subset of the follower roots under control
        const auto inst = follower_reduction(gen.graph, 1);
        std::vector<std::vector<NodeId>> chosen;
        for (const auto& members : inst.root_members)
            if (rng() % 2) chosen.push_back(members);
        const SignedGraph g = realize_control(gen.graph, chosen, rng()).graph;
        largest = std::max(largest, g.size());

        const Analysis a = analyze(g);
        const auto x0 = uniform_state(g.size(), rng, -10, 10);
        const auto sol = steady_state_all(a, x0);
        const auto trace = run(a.weights, x0, g.leaders(), {100'000, 1e-12, 0});
        if (!trace.converged) return {false, "graph " + std::to_string(i) + " did not converge"};
        for (std::size_t v = 0; v < x0.size(); ++v) worst = std::max(worst, std::abs(sol.x_bar[v] - trace.final_state[v]));
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "100 graphs (n <= " << largest << "), max |x_bar - x_sim| = " << worst << ", " << secs << " s";
    return {worst <= kOracleTol && largest <= 60 && secs < kC1Seconds, d.str()};
}

Outcome balance_classification() {
    std::mt19937_64 rng(202);
    int agree_small = 0, agree_large = 0, large_total = 0, balanced_small = 0;
    const auto classify = [](const oracle::SignedEdges& s) {
        const auto g = SignedGraph::create(s.n, oracle::to_edges(s), {});
        std::vector<NodeId> members(static_cast<std::size_t>(s.n));
        for (int i = 0; i < s.n; ++i) members[static_cast<std::size_t>(i)] = i;
        return classify_scc(g, members).type;
    };
    const auto expected = [](const oracle::SignedEdges& s, bool balanced) {
        const bool negative =
            std::any_of(s.edges.begin(), s.edges.end(), [](const auto& e) { return std::get<2>(e) < 0; });
        if (!negative) return SccType::Consensus;
        return balanced ? SccType::Bipartite : SccType::Unbalanced;
    };
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 11;
        const auto s = oracle::random_scc(n, rng, i % 2);
        const bool balanced = oracle::brute_force_balanced(s);
        balanced_small += balanced;
        if (classify(s) == expected(s, balanced)) ++agree_small;
    }
    std::uniform_int_distribution<int> size(13, 500);
    for (int i = 0; i < 60; ++i, ++large_total) {
        auto s = oracle::random_scc(size(rng), rng, 1);
        if (i % 3 == 1 && !s.edges.empty()) std::get<2>(s.edges[rng() % s.edges.size()]) *= -1;
        if (i % 3 == 2) s = oracle::random_scc(s.n, rng, 0);
        if (classify(s) == expected(s, oracle::two_coloring_balanced(s))) ++agree_large;
    }
    std::ostringstream d;
    d << "brute force " << agree_small << "/200 (" << balanced_small << " balanced), two-colouring " << agree_large
      << "/" << large_total << " up to 500 nodes";
    return {agree_small == 200 && agree_large == large_total, d.str()};
}

SignedGraph three_root_graph() {
    std::vector<Edge> e;
    const auto cycle = [&](int first, int size) {
        for (int i = 0; i < size; ++i) e.push_back({first + i, first + (i + 1) % size, Sign::Positive});
    };
    cycle(1, 5);
    cycle(6, 3);
    cycle(9, 10);
    cycle(19, 4);
    cycle(23, 6);
    e.push_back({1, 19, Sign::Positive});
    e.push_back({2, 23, Sign::Negative});
    e.push_back({6, 24, Sign::Positive});
    return SignedGraph::create(29, e, {0});
}

Outcome ilp_exactness() {
    std::mt19937_64 rng(303);
    int checked = 0, agree = 0;
    for (int i = 0; i < 50; ++i) {
        const int roots = 1 + i % 12;
        const auto s = oracle::random_instance(roots, 3 * roots, rng);
        for (int d = 1; d <= roots; ++d) {
            std::vector<Candidate> list;
            for (const auto& [size, r] : s.candidates) list.push_back({size, r, {}});
            const auto inst = PlacementInstance::from_sizes(s.root_size, list, d);
            const auto sol = solve_placement(inst);
            ++checked;
            if (sol.objective == oracle::exhaustive_best(s, d) && satisfies_constraints(inst, sol)) ++agree;
        }
    }

    const fs::path graph = work / "three_root.txt", lp = work / "three_root.lp", out = work / "three_root.json";
    std::ofstream(graph) << to_edge_list(three_root_graph());
    const int rc = sh(std::string(SIGCON_CLI) + " place " + q(graph) + " -d 2 --export-lp " + q(lp) + " --json " + q(out));
    const fs::path script = work / "solve_lp.py", result = work / "lp_objective.txt";
    std::ofstream(script) << "import sys\n"
                             "import highspy\n"
                             "h = highspy.Highs()\n"
                             "h.setOptionValue('output_flag', False)\n"
                             "h.readModel(sys.argv[1])\n"
                             "h.run()\n"
                             "print(round(h.getInfo().objective_function_value))\n";
    const int prc = sh(std::string(SIGCON_PYTHON) + " " + q(script) + " " + q(lp) + " > " + q(result) + " 2>&1");
    std::string external = slurp(result);
    while (!external.empty() && std::isspace(static_cast<unsigned char>(external.back()))) external.pop_back();
    const bool solver_ok = rc == 0 && prc == 0 && external == "19";

    std::ostringstream d;
    d << "exhaustive agreement " << agree << "/" << checked << " (R <= 12, all d); external MILP on exported LP: "
      << (prc == 0 ? external : "solver unavailable: " + external);
    return {agree == checked && solver_ok, d.str()};
}

Outcome containment_guarantee() {
    const SignedGraph g = generate(GeneratorSpec::from_json(kLayeredSpec)).graph;
    const Analysis a = analyze(g);
    const auto inst = follower_reduction(g, 2);
    int follower_sccs = 0;
    for (const auto& members : a.classic.members) follower_sccs += g.is_leader(members.front()) ? 0 : 1;

    PipelineOptions opts;
    opts.budget = 2;
    opts.trials = 20;
    opts.seed = 7;
    opts.initial.leader_states = {-1.0, 0.5, 1.0};
    opts.initial.follower_min = -10;
    opts.initial.follower_max = 10;
    opts.contain_tol = kContainTol;
    const PipelineReport report = run_pipeline(g, opts);

    bool ok = g.size() == 1500 && a.classic.level_count() == 4 && follower_sccs == 15 && inst.root_count() == 4;
    int k_min = g.size(), k_max = 0;
    for (const auto& t : report.trials) {
        ok = ok && t.converged && t.phi_within_contained && t.contained >= static_cast<int>(report.phi.size());
        k_min = std::min(k_min, t.contained);
        k_max = std::max(k_max, t.contained);
    }
    std::ostringstream d;
    d << "N=" << g.size() << ", levels=" << a.classic.level_count() << ", follower SCCs=" << follower_sccs
      << ", roots=" << inst.root_count() << ", retained non-roots=" << inst.candidates.size()
      << ", excluded=" << inst.excluded.size() << ", S={";
    for (std::size_t i = 0; i < report.placement.selected_roots.size(); ++i)
        d << (i ? "," : "") << "r" << report.placement.selected_roots[i] + 1;
    d << "}, |phi|=" << report.phi.size() << ", |K| in [" << k_min << ", " << k_max << "] over "
      << report.trials.size() << " draws";
    return {ok && report.trials.size() == 20, d.str()};
}

Outcome gauge_equivalence() {
    std::mt19937_64 rng(505);
    int tested = 0;
    double worst = 0.0;
    while (tested < 100) {
        const int n = 2 + static_cast<int>(rng() % 29);
        const auto s = oracle::random_scc(n, rng, 1);
        const auto g = SignedGraph::create(n, oracle::to_edges(s), {});
        const Analysis a = analyze(g);
        if (a.classes.size() != 1 || a.classes[0].type != SccType::Bipartite) continue;
        const auto x0 = uniform_state(n, rng, -10, 10);
        const auto lib = steady_state_all(a, x0).x_bar;
        const auto ref = oracle::zblock_limits(g, x0);
        for (int i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(lib[static_cast<std::size_t>(i)] - ref[static_cast<std::size_t>(i)]));
        ++tested;
    }
    std::ostringstream d;
    d << tested << " balanced SCCs, max |gauge - lift| = " << worst;
    return {worst <= kGaugeTol, d.str()};
}

Outcome level_identity() {
    std::mt19937_64 rng(606);
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(rng() % 40);
        std::bernoulli_distribution edge(1.8 / n), neg(0.4);
        std::vector<Edge> e;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && edge(rng)) e.push_back({u, v, neg(rng) ? Sign::Negative : Sign::Positive});
        const auto g = SignedGraph::create(n, e, {});
        const Analysis a = analyze(g);
        const auto lay = oracle::layering(n, oracle::arcs_of(g));
        const auto big = oracle::layering(2 * n, oracle::enlarged_arcs(g));
        bool good = a.classic.level_count() == a.enlarged.level_count() &&
                    a.classic.level_count() == a.signed_cond.level_count() && a.classic.level_count() == lay.levels &&
                    big.levels == lay.levels && a.enlarged.size() == big.components;
        for (int l = 1; good && l <= lay.levels; ++l) {
            good = a.classic.count_at_level(l) == lay.per_level[static_cast<std::size_t>(l - 1)] &&
                   a.classic.count_at_level(l) <= a.signed_cond.count_at_level(l) &&
                   a.signed_cond.count_at_level(l) <= a.enlarged.count_at_level(l) &&
                   a.enlarged.count_at_level(l) == big.per_level[static_cast<std::size_t>(l - 1)];
        }
        ok += good;
    }
    return {ok == 100, std::to_string(ok) + "/100 graphs satisfy the level identity and per-level ordering"};
}

Outcome performance() {
    const fs::path spec = work / "layered_spec.json", out = work / "perf.json";
    std::ofstream(spec) << kLayeredSpec;
    const auto t0 = Clock::now();
    const int rc = sh(std::string(SIGCON_CLI) + " pipeline " + q(spec) +
                      " -d 2 --trials 1 --seed 3 --leader-states=-1,0.5,1 --json " + q(out));
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "pipeline on 1500 nodes (1 trial): " << secs << " s, exit " << rc;
    return {rc == 0 && secs < kC7Seconds, d.str()};
}

Outcome determinism() {
    const fs::path spec = work / "layered_spec.json";
    std::ofstream(spec) << kLayeredSpec;
    const fs::path small_spec = work / "small_spec.json", small = work / "small.txt";
    std::ofstream(small_spec) << R"({"levels":3,"sccs_per_level":[2,2,2],"scc_size_range":[2,8],"type_mix":[2,2,2],"n_leaders":2,"inter_scc_edge_prob":0.3})";
    const std::string cli = SIGCON_CLI;
    if (sh(cli + " generate --spec " + q(small_spec) + " --seed 5 --out " + q(small)) != 0) return {false, "generate failed"};

    struct Case {
        std::string name;
        std::string args;  // {o} is replaced by the per-run output directory
    };
    const std::vector<Case> cases{
        {"analyze", "analyze " + q(small) + " --dot {o}/c.dot"},
        {"steady", "steady " + q(small) + " --x0 11 --csv {o}/s.csv"},
        {"place", "place " + q(small) + " -d 2 --export-lp {o}/p.lp"},
        {"simulate", "simulate " + q(small) + " --x0 11 --trace {o}/t.csv"},
        {"generate", "generate --spec " + q(spec) + " --seed 9"},
        {"pipeline", "pipeline " + q(small) + " -d 2 --trials 3 --seed 4 --realized {o}/r.txt"},
    };
    std::vector<std::string> bad;
    for (const auto& c : cases) {
        std::string outputs[2];
        for (int run = 0; run < 2; ++run) {
            const fs::path dir = work / ("det_" + c.name + "_" + std::to_string(run));
            fs::remove_all(dir);
            fs::create_directories(dir);
            std::string args = c.args;
            for (auto pos = args.find("{o}"); pos != std::string::npos; pos = args.find("{o}"))
                args.replace(pos, 3, dir.string());
            const int rc = sh(cli + " " + args + " > " + q(dir / "stdout") + " 2> " + q(dir / "stderr"));
            outputs[run] = "rc=" + std::to_string(rc);
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(dir)) files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) outputs[run] += "\n==" + f.filename().string() + "\n" + slurp(f);
            if (rc != 0) bad.push_back(c.name + " exit " + std::to_string(rc));
        }
        if (outputs[0] != outputs[1]) bad.push_back(c.name + " differs");
    }
    std::string detail = std::to_string(cases.size() - std::min(cases.size(), bad.size())) + "/" +
                         std::to_string(cases.size()) + " subcommands byte-identical";
    for (const auto& b : bad) detail += "; " + b;
    return {bad.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
    work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "sigcon_acceptance";
    fs::create_directories(work);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"balance classification", balance_classification},
        {"ILP exactness", ilp_exactness},
        {"containment guarantee", containment_guarantee},
        {"gauge/lift equivalence", gauge_equivalence},
        {"level-count identity", level_identity},
        {"performance", performance},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << "  "
                  << o.detail << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
