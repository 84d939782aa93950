#include <alcplan/edge_counts.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace alcplan;
using namespace alcplan::testing;

namespace {

Route walk(const RoadGraph& g, std::vector<NodeId> nodes) {
    return route_from_nodes(g, std::move(nodes));
}

}  // namespace

TEST_CASE("a simple path counts every edge once") {
    const RoadGraph g({{1, {52.5, 13.4}, {}}, {2, {52.5, 13.401}, {}}, {3, {52.5, 13.402}, {}}},
                      {{0, 1, 2, 1.0}, {1, 2, 3, 1.0}}, 1);
    const EdgeCounts c = update_edge_counts(g, walk(g, {1, 2, 3}));
    REQUIRE(c.at(0) == 1);
    REQUIRE(c.at(1) == 1);
}

TEST_CASE("closing a triangle credits every edge of the loop") {
    const RoadGraph g(
        {{1, {52.5, 13.4}, {}}, {2, {52.5, 13.401}, {}}, {3, {52.501, 13.4}, {}}},
        {{0, 1, 2, 1.0}, {1, 2, 3, 1.0}, {2, 3, 1, 1.0}}, 1);
    const EdgeCounts c = update_edge_counts(g, walk(g, {1, 2, 3, 1}));
    for (const auto& [eid, count] : c) REQUIRE(count == 2);
}

TEST_CASE("demo-route counts match the hand-derived table") {
    const RoadGraph g = demo_graph();
    const Route r1 = walk(g, {1, 2, 3, 4, 5, 2, 3, 4, 6, 7, 8, 11});
    const EdgeCounts c = update_edge_counts(g, r1);

    const std::map<std::pair<NodeId, NodeId>, std::int64_t> expected{
        {np(1, 2), 1},  {np(2, 3), 5}, {np(3, 4), 5}, {np(4, 5), 4}, {np(5, 2), 4},
        {np(4, 6), 1},  {np(6, 7), 1}, {np(7, 8), 1}, {np(8, 11), 1}};

    for (const auto& [pair, want] : expected) {
        REQUIRE(c.at(edge_between(g, pair.first, pair.second)) == want);
    }
    // Every edge off the traveled prefix stays at zero.
    std::int64_t zero_edges = 0;
    for (const auto& [eid, count] : c)
        if (count == 0) ++zero_edges;
    REQUIRE(zero_edges == static_cast<std::int64_t>(g.edge_count() - expected.size()));
}

TEST_CASE("counts domain always equals the edge set") {
    const RoadGraph g = demo_graph();
    const EdgeCounts c = update_edge_counts(g, walk(g, {1, 2}));
    REQUIRE(c.size() == g.edge_count());
}

TEST_CASE("only the nearest enclosing cycle is credited per revisit") {
    // 1-2-3-1 then 1-2 again: the second visit to 2 credits the most recent
    // occurrence of 2, not both laps.
    const RoadGraph g(
        {{1, {52.5, 13.4}, {}}, {2, {52.5, 13.401}, {}}, {3, {52.501, 13.4}, {}}},
        {{0, 1, 2, 1.0}, {1, 2, 3, 1.0}, {2, 3, 1, 1.0}}, 1);
    const EdgeCounts c = update_edge_counts(g, walk(g, {1, 2, 3, 1, 2}));
    // Traversals: (1,2)x2, (2,3), (3,1). Revisit of 1 at index 3 credits the
    // whole triangle; revisit of 2 at index 4 credits edges after index 1.
    REQUIRE(c.at(edge_between(g, 1, 2)) == 4);
    REQUIRE(c.at(edge_between(g, 2, 3)) == 3);
    REQUIRE(c.at(edge_between(g, 3, 1)) == 3);
}

TEST_CASE("invalid routes are rejected before counting") {
    const RoadGraph g = demo_graph();
    REQUIRE_THROWS_AS(update_edge_counts(g, Route{{1, 3}, {0}}), InvalidRouteError);
    REQUIRE_THROWS_AS(update_edge_counts(g, Route{}), InvalidRouteError);
}

TEST_CASE("random walks match a literal transcription of the update rule") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const RoadGraph g = random_connected_graph(seed, 2, 5, 4, true, false);
        std::mt19937_64 rng(seed * 31 + 7);

        std::vector<NodeId> seq{g.nodes()[rng() % g.node_count()].id};
        const int hops = 1 + static_cast<int>(rng() % 12);
        for (int h = 0; h < hops; ++h) {
            const auto& inc = g.incident_edges(seq.back());
            const RoadEdge& e = g.edge(inc[rng() % inc.size()]);
            seq.push_back(e.other(seq.back()));
        }

        const EdgeCounts got = update_edge_counts(g, walk(g, seq));
        const auto want = counts_transcription(seq);
        for (const auto& e : g.edges()) {
            const auto it = want.find(np(e.a, e.b));
            const std::int64_t expected = it == want.end() ? 0 : it->second;
            INFO("seed " << seed << " edge " << e.a << "-" << e.b);
            REQUIRE(got.at(e.id) == expected);
        }
    }
}

TEST_CASE("counting is deterministic") {
    const RoadGraph g = demo_graph();
    const Route r = walk(g, {1, 2, 3, 4, 5, 2, 3, 4, 6, 7, 8, 11});
    REQUIRE(update_edge_counts(g, r) == update_edge_counts(g, r));
}

TEST_CASE("extending a route never decreases any count") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const RoadGraph g = random_connected_graph(seed, 3, 6, 4, true, false);
        std::mt19937_64 rng(seed * 51 + 3);

        std::vector<NodeId> seq{g.nodes()[rng() % g.node_count()].id};
        for (int h = 0; h < 10; ++h) {
            const auto& inc = g.incident_edges(seq.back());
            const RoadEdge& e = g.edge(inc[rng() % inc.size()]);
            seq.push_back(e.other(seq.back()));
        }
        const EdgeCounts full = update_edge_counts(g, walk(g, seq));
        const EdgeCounts prefix = update_edge_counts(
            g, walk(g, std::vector<NodeId>(seq.begin(), seq.begin() + 6)));
        for (const auto& [eid, count] : prefix) REQUIRE(full.at(eid) >= count);
    }
}
