#include "sigcon/generator.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "sigcon/condense.hpp"
#include "sigcon/errors.hpp"
#include "sigcon/rng.hpp"

namespace sigcon {

int GeneratorSpec::scc_count() const { return std::accumulate(sccs_per_level.begin(), sccs_per_level.end(), 0); }

GeneratorSpec GeneratorSpec::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("invalid generator spec JSON: ") + e.what());
    }
    GeneratorSpec spec;
    try {
        spec.levels = doc.at("levels").get<int>();
        const auto& per = doc.at("sccs_per_level");
        if (per.is_number_integer()) {
            spec.sccs_per_level.assign(static_cast<std::size_t>(std::max(spec.levels, 0)), per.get<int>());
        } else {
            spec.sccs_per_level = per.get<std::vector<int>>();
        }
        if (doc.contains("scc_size_range")) {
            const auto range = doc.at("scc_size_range").get<std::vector<int>>();
            if (range.size() != 2) throw Error(Errc::InvalidSpec, "scc_size_range must be [min, max]");
            spec.size_min = range[0];
            spec.size_max = range[1];
        }
        if (doc.contains("type_mix")) {
            const auto& mix = doc.at("type_mix");
            if (mix.is_array()) {
                const auto v = mix.get<std::vector<int>>();
                if (v.size() != 3) throw Error(Errc::InvalidSpec, "type_mix must list three counts");
                spec.type_mix = {v[0], v[1], v[2]};
            } else {
                for (int t = 1; t <= 3; ++t) spec.type_mix[static_cast<std::size_t>(t - 1)] = mix.value(std::to_string(t), 0);
            }
        }
        spec.inter_scc_edge_prob = doc.value("inter_scc_edge_prob", spec.inter_scc_edge_prob);
        spec.intra_edge_prob = doc.value("intra_edge_prob", spec.intra_edge_prob);
        spec.n_leaders = doc.value("n_leaders", spec.n_leaders);
        if (doc.contains("total_nodes")) spec.total_nodes = doc.at("total_nodes").get<int>();
        spec.seed = doc.value("seed", spec.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed generator spec: ") + e.what());
    }
    return spec;
}

namespace {

void validate(const GeneratorSpec& spec) {
    const auto bad = [](const std::string& why) { throw Error(Errc::InvalidSpec, why); };
    if (spec.levels < 1) bad("levels must be >= 1");
    if (static_cast<int>(spec.sccs_per_level.size()) != spec.levels) bad("sccs_per_level must list one count per level");
    for (int c : spec.sccs_per_level) {
        if (c < 1) bad("every level needs at least one SCC");
    }
    if (spec.size_min < 1 || spec.size_max < spec.size_min) bad("scc_size_range must satisfy 1 <= min <= max");
    if (spec.n_leaders < 0) bad("n_leaders must be >= 0");
    if (spec.inter_scc_edge_prob < 0 || spec.inter_scc_edge_prob > 1) bad("inter_scc_edge_prob must lie in [0, 1]");
    const int mix = spec.type_mix[0] + spec.type_mix[1] + spec.type_mix[2];
    if (std::any_of(spec.type_mix.begin(), spec.type_mix.end(), [](int t) { return t < 0; })) bad("type_mix counts must be >= 0");
    if (mix != 0 && mix != spec.scc_count()) {
        bad("type_mix counts sum to " + std::to_string(mix) + " but the spec has " + std::to_string(spec.scc_count()) +
            " SCCs");
    }
    if (spec.total_nodes) {
        const long followers = static_cast<long>(*spec.total_nodes) - spec.n_leaders;
        const long sccs = spec.scc_count();
        if (followers < sccs * spec.size_min || followers > sccs * spec.size_max) {
            bad("total_nodes " + std::to_string(*spec.total_nodes) + " is inconsistent with " + std::to_string(sccs) +
                " SCCs of size [" + std::to_string(spec.size_min) + ", " + std::to_string(spec.size_max) + "]");
        }
    }
}

std::vector<int> draw_sizes(const GeneratorSpec& spec, Rng& rng) {
    const int count = spec.scc_count();
    std::vector<int> sizes(static_cast<std::size_t>(count));
    for (int& s : sizes) s = static_cast<int>(rng.uniform_int(spec.size_min, spec.size_max));
    if (!spec.total_nodes) return sizes;
    const int target = *spec.total_nodes - spec.n_leaders;
    int sum = std::accumulate(sizes.begin(), sizes.end(), 0);
    std::vector<std::size_t> open;
    while (sum != target) {
        open.clear();
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if ((sum < target && sizes[i] < spec.size_max) || (sum > target && sizes[i] > spec.size_min)) open.push_back(i);
        }
        const std::size_t pick = open[rng.index(open.size())];
        const int step = sum < target ? 1 : -1;
        sizes[pick] += step;
        sum += step;
    }
    return sizes;
}

std::vector<int> assign_types(const GeneratorSpec& spec, const std::vector<int>& sizes, Rng& rng) {
    std::vector<int> types(sizes.size(), 1);
    if (spec.type_mix[0] + spec.type_mix[1] + spec.type_mix[2] == 0) return types;
    std::vector<std::size_t> order(sizes.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    int need3 = spec.type_mix[2], need2 = spec.type_mix[1];
    for (std::size_t i : order) {
        if (sizes[i] < 2) continue;
        if (need3 > 0) {
            types[i] = 3;
            --need3;
        } else if (need2 > 0) {
            types[i] = 2;
            --need2;
        }
    }
    if (need2 + need3 > 0) {
        throw Error(Errc::InvalidSpec, "not enough SCCs of size >= 2 to host the requested type-2/3 SCCs");
    }
    return types;
}

// Random strongly connected digraph on `members` with signs realising `type`.
std::vector<Edge> build_scc(const std::vector<NodeId>& members, int type, double extra_prob, Rng& rng) {
    const std::size_t m = members.size();
    std::vector<Edge> edges;
    for (NodeId v : members) edges.push_back({v, v, Sign::Positive});
    if (m == 1) return edges;

    std::vector<NodeId> cycle = members;
    rng.shuffle(cycle);
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<std::pair<NodeId, NodeId>> links;
    for (std::size_t k = 0; k < m; ++k) {
        links.emplace_back(cycle[k], cycle[(k + 1) % m]);
        seen.insert(links.back());
    }
    for (NodeId u : members) {
        for (NodeId v : members) {
            if (u != v && rng.bernoulli(extra_prob) && seen.emplace(u, v).second) links.emplace_back(u, v);
        }
    }

    std::vector<int> side(static_cast<std::size_t>(*std::max_element(members.begin(), members.end()) + 1), 1);
    if (type >= 2) {
        int minus = 0;
        for (NodeId v : members) {
            side[static_cast<std::size_t>(v)] = rng.bernoulli(0.5) ? 1 : -1;
            minus += side[static_cast<std::size_t>(v)] < 0;
        }
        if (minus == 0 || minus == static_cast<int>(m)) {
            const NodeId flip = members[rng.index(m)];
            side[static_cast<std::size_t>(flip)] = -side[static_cast<std::size_t>(flip)];
        }
    }
    const std::size_t first_link = edges.size();
    for (auto [u, v] : links) {
        const bool cross = side[static_cast<std::size_t>(u)] != side[static_cast<std::size_t>(v)];
        edges.push_back({u, v, cross ? Sign::Negative : Sign::Positive});
    }
    if (type == 3) {
        // The first m links form a Hamiltonian cycle, so flipping one of them
        // flips the sign of that cycle.
        std::vector<std::size_t> positive;
        const std::size_t cycle_count = m;
        for (std::size_t k = 0; k < cycle_count; ++k) {
            if (edges[first_link + k].sign == Sign::Positive) positive.push_back(first_link + k);
        }
        const std::size_t pick = positive.empty() ? first_link + rng.index(cycle_count) : positive[rng.index(positive.size())];
        auto& e = edges[pick];
        e.sign = e.sign == Sign::Positive ? Sign::Negative : Sign::Positive;
    }
    return edges;
}

}  // namespace

GeneratedGraph generate(const GeneratorSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    const std::vector<int> sizes = draw_sizes(spec, rng);
    const std::vector<int> types = assign_types(spec, sizes, rng);

    GeneratedGraph out;
    std::vector<std::vector<int>> level_sccs(static_cast<std::size_t>(spec.levels));
    NodeId next = spec.n_leaders;
    std::size_t k = 0;
    for (int l = 1; l <= spec.levels; ++l) {
        for (int c = 0; c < spec.sccs_per_level[static_cast<std::size_t>(l - 1)]; ++c, ++k) {
            std::vector<NodeId> members(static_cast<std::size_t>(sizes[k]));
            std::iota(members.begin(), members.end(), next);
            next += sizes[k];
            level_sccs[static_cast<std::size_t>(l - 1)].push_back(static_cast<int>(out.scc_members.size()));
            out.scc_members.push_back(std::move(members));
            out.scc_level.push_back(l);
            out.scc_type.push_back(types[k]);
        }
    }
    const int n = next;

    std::vector<Edge> edges;
    for (NodeId v = 0; v < spec.n_leaders; ++v) edges.push_back({v, v, Sign::Positive});
    for (std::size_t s = 0; s < out.scc_members.size(); ++s) {
        const auto& members = out.scc_members[s];
        const double extra =
            spec.intra_edge_prob >= 0 ? spec.intra_edge_prob
                                      : (members.size() > 1 ? std::min(1.0, 2.0 / static_cast<double>(members.size() - 1)) : 0.0);
        std::vector<Edge> block;
        for (int attempt = 0;; ++attempt) {
            block = build_scc(members, out.scc_type[s], extra, rng);
            const SignedGraph local = SignedGraph::create(n, block, {});
            if (to_int(classify_scc(local, members).type) == out.scc_type[s]) break;
            if (attempt > 100) invariant_failure("could not realise SCC type " + std::to_string(out.scc_type[s]));
        }
        edges.insert(edges.end(), block.begin(), block.end());
    }

    std::set<std::pair<NodeId, NodeId>> cross;
    const auto link = [&](std::size_t from, std::size_t to) {
        const auto& a = out.scc_members[from];
        const auto& b = out.scc_members[to];
        const NodeId u = a[rng.index(a.size())];
        const NodeId v = b[rng.index(b.size())];
        const Sign sign = rng.bernoulli(0.5) ? Sign::Positive : Sign::Negative;
        if (cross.emplace(u, v).second) edges.push_back({u, v, sign});
    };
    for (int l = 2; l <= spec.levels; ++l) {
        const auto& below = level_sccs[static_cast<std::size_t>(l - 2)];
        for (int target : level_sccs[static_cast<std::size_t>(l - 1)]) {
            link(static_cast<std::size_t>(below[rng.index(below.size())]), static_cast<std::size_t>(target));
            for (int lower = 1; lower < l; ++lower) {
                for (int source : level_sccs[static_cast<std::size_t>(lower - 1)]) {
                    if (rng.bernoulli(spec.inter_scc_edge_prob)) {
                        link(static_cast<std::size_t>(source), static_cast<std::size_t>(target));
                    }
                }
            }
        }
    }

    std::vector<NodeId> leaders(static_cast<std::size_t>(spec.n_leaders));
    std::iota(leaders.begin(), leaders.end(), 0);
    out.graph = SignedGraph::create(n, std::move(edges), std::move(leaders));

    // Post-hoc check on the follower condensation.
    const Analysis a = analyze(out.graph);
    for (std::size_t s = 0; s < out.scc_members.size(); ++s) {
        const auto& members = out.scc_members[s];
        const int c = a.classic.node_map[static_cast<std::size_t>(members.front())];
        if (a.classic.members[static_cast<std::size_t>(c)] != members) invariant_failure("generated SCC merged or split");
        if (a.classic.level[static_cast<std::size_t>(c)] != out.scc_level[s]) invariant_failure("generated SCC on wrong level");
        if (to_int(a.classes[static_cast<std::size_t>(c)].type) != out.scc_type[s]) invariant_failure("generated SCC has wrong type");
    }
    if (a.classic.level_count() != spec.levels) {
        invariant_failure("generated graph has " + std::to_string(a.classic.level_count()) + " levels");
    }
    return out;
}

}  // namespace sigcon
