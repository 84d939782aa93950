#include <alcplan/edge_weights.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/fixtures.hpp"

using namespace alcplan;
using namespace alcplan::testing;
using Catch::Matchers::WithinRel;

TEST_CASE("unvisited edge weight follows scale/length times log2(1+C)^(1/alpha)") {
    EdgeWeightParams p;

    SECTION("count 1, unit everything gives exactly 1") {
        REQUIRE_THAT(edge_weight(1, 0, 1.0, false, p), WithinRel(1.0, 1e-12));
    }
    SECTION("count scaling") {
        REQUIRE_THAT(edge_weight(3, 0, 1.0, false, p), WithinRel(2.0, 1e-12));
        REQUIRE_THAT(edge_weight(7, 0, 1.0, false, p), WithinRel(3.0, 1e-12));
    }
    SECTION("length divides the base weight") {
        REQUIRE_THAT(edge_weight(1, 0, 4.0, false, p), WithinRel(0.25, 1e-12));
    }
    SECTION("alpha tempers the count contribution") {
        p.alpha = 2.0;
        REQUIRE_THAT(edge_weight(3, 0, 1.0, false, p), WithinRel(std::sqrt(2.0), 1e-12));
    }
    SECTION("scale multiplies through") {
        p.unvisited_scale = 5.0;
        REQUIRE_THAT(edge_weight(1, 0, 1.0, false, p), WithinRel(5.0, 1e-12));
    }
}

TEST_CASE("visited edge weight is the held information times the count ratio") {
    EdgeWeightParams p;
    p.visited_info = 0.7;

    SECTION("no additional measurements keeps exactly the held information") {
        REQUIRE_THAT(edge_weight(4, 4, 1.0, true, p), WithinRel(0.7, 1e-12));
    }
    SECTION("count 3 over prior 1 doubles it") {
        REQUIRE_THAT(edge_weight(3, 1, 1.0, true, p), WithinRel(1.4, 1e-12));
    }
    SECTION("alpha applies to the ratio") {
        p.alpha = 2.0;
        REQUIRE_THAT(edge_weight(3, 1, 1.0, true, p),
                     WithinRel(0.7 * std::sqrt(2.0), 1e-12));
    }
}

TEST_CASE("default held information is 1 over length squared") {
    EdgeWeightParams p;
    REQUIRE_THAT(edge_weight(2, 2, 2.0, true, p), WithinRel(0.25, 1e-12));
    REQUIRE_THAT(edge_weight(2, 2, 10.0, true, p), WithinRel(0.01, 1e-12));
}

TEST_CASE("weight contract violations are rejected") {
    EdgeWeightParams p;
    REQUIRE_THROWS_AS(edge_weight(0, 0, 1.0, false, p), Error);
    REQUIRE_THROWS_AS(edge_weight(2, 0, 1.0, true, p), Error);
    REQUIRE_THROWS_AS(edge_weight(1, 2, 1.0, true, p), Error);

    EdgeWeightParams bad;
    bad.alpha = 0.0;
    REQUIRE_THROWS_AS(edge_weight(1, 0, 1.0, false, bad), ConfigError);
    bad = EdgeWeightParams{};
    bad.unvisited_scale = -1.0;
    REQUIRE_THROWS_AS(edge_weight(1, 0, 1.0, false, bad), ConfigError);
    bad = EdgeWeightParams{};
    bad.visited_info = 0.0;
    REQUIRE_THROWS_AS(edge_weight(1, 1, 1.0, true, bad), ConfigError);
}

TEST_CASE("weights grow with achievable counts") {
    EdgeWeightParams p;
    for (std::int64_t c = 1; c < 20; ++c) {
        REQUIRE(edge_weight(c + 1, 0, 3.0, false, p) > edge_weight(c, 0, 3.0, false, p));
        REQUIRE(edge_weight(c + 1, 1, 3.0, true, p) > edge_weight(c, 1, 3.0, true, p));
    }
}

TEST_CASE("information graph covers every edge and anchors at the start node") {
    const RoadGraph g = demo_graph();
    const Route r = route_from_nodes(g, {1, 2, 3, 4, 5, 2, 3, 4, 6, 7, 8, 11});
    EdgeCounts counts = update_edge_counts(g, r);
    for (auto& [eid, c] : counts) c = std::max<std::int64_t>(c, 1);

    const InformationGraph ig =
        build_information_graph(g, counts, zero_counts(g), {}, EdgeWeightParams{});
    REQUIRE(ig.anchor == g.start_node());
    REQUIRE(ig.weights.size() == g.edge_count());
    for (const auto& [eid, w] : ig.weights) REQUIRE(w > 0.0);
}

TEST_CASE("missing counts are diagnosed") {
    const RoadGraph g = demo_graph();
    REQUIRE_THROWS_AS(
        build_information_graph(g, EdgeCounts{}, EdgeCounts{}, {}, EdgeWeightParams{}),
        Error);
}

TEST_CASE("information score is positive and grows with extra counts") {
    const RoadGraph g = demo_graph();
    EdgeCounts low;
    for (const auto& e : g.edges()) low[e.id] = 1;
    EdgeCounts high = low;
    high[edge_between(g, 2, 3)] = 5;
    high[edge_between(g, 3, 4)] = 5;

    const EdgeWeightParams p;
    const double s_low = information_score(
        g, build_information_graph(g, low, zero_counts(g), {}, p));
    const double s_high = information_score(
        g, build_information_graph(g, high, zero_counts(g), {}, p));
    REQUIRE(s_low > 0.0);
    REQUIRE(s_high > s_low);
}
