#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "sigcon/errors.hpp"
#include "sigcon/signed_graph.hpp"

inline sigcon::Errc error_code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const sigcon::Error& e) {
        return e.code();
    }
    FAIL("expected sigcon::Error");
    return sigcon::Errc::Invariant;
}

inline sigcon::SignedGraph make_graph(int n, std::vector<sigcon::Edge> edges, std::vector<sigcon::NodeId> leaders = {}) {
    return sigcon::SignedGraph::create(n, std::move(edges), std::move(leaders));
}

constexpr auto P = sigcon::Sign::Positive;
constexpr auto N = sigcon::Sign::Negative;
