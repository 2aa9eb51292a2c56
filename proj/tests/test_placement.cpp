#include "test_util.hpp"
#include "oracles.hpp"

#include "sigcon/condense.hpp"
#include "sigcon/placement.hpp"
#include "sigcon/simulate.hpp"

using namespace sigcon;

namespace {

std::vector<Candidate> cands(const std::vector<std::pair<int, std::vector<int>>>& list) {
    std::vector<Candidate> out;
    for (const auto& [size, roots] : list) out.push_back({size, roots, {}});
    return out;
}

void add_cycle(std::vector<Edge>& e, int first, int size) {
    for (int i = 0; i < size && size > 1; ++i) e.push_back({first + i, first + (i + 1) % size, P});
}

// leader 0; r1 = 1..5, r2 = 6..8, r3 = 9..18, g1 = 19..22 (from r1),
// g2 = 23..28 (from r1 and r2)
SignedGraph three_root_graph() {
    std::vector<Edge> e;
    add_cycle(e, 1, 5);
    add_cycle(e, 6, 3);
    add_cycle(e, 9, 10);
    add_cycle(e, 19, 4);
    add_cycle(e, 23, 6);
    e.push_back({1, 19, P});
    e.push_back({2, 23, N});
    e.push_back({6, 24, P});
    return make_graph(29, e, {0});
}

std::vector<NodeId> range(int lo, int hi) {
    std::vector<NodeId> out;
    for (int v = lo; v < hi; ++v) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("three-root example") {
    const auto inst = PlacementInstance::from_sizes({5, 3, 10}, cands({{4, {0}}, {6, {0, 1}}}), 2);
    const auto sol = solve_placement(inst);
    CHECK(sol.selected_roots == std::vector<int>{0, 2});
    CHECK(sol.objective == 19);
    CHECK(placement_value(inst, std::vector<int>{0, 1}) == 18);
    CHECK(placement_value(inst, std::vector<int>{1, 2}) == 13);
    std::string why;
    CHECK(satisfies_constraints(inst, sol, &why));
}

TEST_CASE("three-root example from a graph") {
    const auto g = three_root_graph();
    const auto inst = follower_reduction(g, 2);
    CHECK(inst.root_size == std::vector<int>{5, 3, 10});
    REQUIRE(inst.candidates.size() == 2);
    const auto sol = solve_placement(inst);
    CHECK(sol.objective == 19);
    CHECK(sol.selected_roots == std::vector<int>{0, 2});
    std::vector<NodeId> want = range(1, 6);
    for (NodeId v : range(9, 23)) want.push_back(v);
    CHECK(sol.phi == want);

    std::vector<std::vector<NodeId>> chosen;
    for (int j : sol.selected_roots) chosen.push_back(inst.root_members[static_cast<std::size_t>(j)]);
    const auto realized = realize_control(g, chosen, 4);
    CHECK(guaranteed_set(realized.graph) == want);
    CHECK(guaranteed_set(g, std::vector<NodeId>{1, 9}) == want);
}

TEST_CASE("budget edge cases") {
    const auto single = PlacementInstance::from_sizes({10}, {}, 1);
    CHECK(single.root_count() == 1);
    CHECK(single.candidates.empty());
    CHECK(error_code_of([] { PlacementInstance::from_sizes({1, 2}, {}, 3); }) == Errc::BudgetExceedsRoots);
    CHECK(error_code_of([] { PlacementInstance::from_sizes({1, 2}, {}, 0); }) == Errc::InvalidSpec);

    const auto inst = PlacementInstance::from_sizes({4, 4}, cands({{7, {0, 1}}}), 1);
    CHECK(inst.candidates.empty());
    CHECK(inst.excluded.size() == 1);
}

TEST_CASE("full budget takes every retained follower") {
    const auto g = three_root_graph();
    const auto inst = follower_reduction(g, 3);
    const auto sol = solve_placement(inst);
    CHECK(sol.objective == 28);
    CHECK(sol.phi == range(1, 29));
}

TEST_CASE("guaranteed set extremes") {
    const auto g = three_root_graph();
    CHECK(guaranteed_set(g).empty());
    CHECK(guaranteed_set(g, std::vector<NodeId>{1, 6, 9}) == range(1, 29));
    CHECK(error_code_of([] { guaranteed_set(make_graph(2, {{0, 1, P}}), std::vector<NodeId>{0}); }) ==
          Errc::NoLeaders);
}

TEST_CASE("solver matches exhaustive enumeration") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 25; ++t) {
        const int roots = 1 + t % 9;
        const auto s = oracle::random_instance(roots, 2 * roots, rng);
        for (int d = 1; d <= roots; ++d) {
            std::vector<Candidate> list;
            for (const auto& [size, r] : s.candidates) list.push_back({size, r, {}});
            const auto inst = PlacementInstance::from_sizes(s.root_size, list, d);
            const auto sol = solve_placement(inst);
            CHECK(sol.objective == oracle::exhaustive_best(s, d));
            CHECK(static_cast<int>(sol.selected_roots.size()) == d);
            CHECK(satisfies_constraints(inst, sol));
        }
    }
}

TEST_CASE("ties resolve to the lexicographically smallest selection") {
    const auto inst = PlacementInstance::from_sizes({3, 3, 3}, {}, 2);
    CHECK(solve_placement(inst).selected_roots == std::vector<int>{0, 1});
}

TEST_CASE("LP export layout") {
    const auto one = export_lp(PlacementInstance::from_sizes({7}, {}, 1));
    CHECK(one.find("Maximize") != std::string::npos);
    CHECK(one.find("budget: y_0_pi = 1") != std::string::npos);
    CHECK(one.find("obj: 7 y_0_pi\n") != std::string::npos);
    CHECK(one.find("Binary") != std::string::npos);
    CHECK(one.substr(one.size() - 4) == "End\n");

    const auto lp = export_lp(PlacementInstance::from_sizes({5, 3, 10}, cands({{4, {0}}, {6, {0, 1}}}), 2));
    CHECK(lp.find("y_1_0") != std::string::npos);
    CHECK(lp.find("y_2_pi") != std::string::npos);
}
