#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "alcplan/road_graph.hpp"

namespace alcplan::testing {

/// Undirected endpoint pair, normalized.
inline std::pair<NodeId, NodeId> np(NodeId a, NodeId b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

/// Edge list of the 12-node demo network: two street blocks joined by a
/// corridor, the fixture used across planner and replanner tests.
inline const std::vector<std::pair<NodeId, NodeId>>& demo_edge_pairs() {
    static const std::vector<std::pair<NodeId, NodeId>> pairs = {
        {1, 2}, {2, 3}, {3, 4},  {4, 5},  {5, 2},   {4, 6},  {6, 7},  {7, 8},
        {8, 11}, {8, 9}, {9, 10}, {10, 11}, {11, 12}, {12, 6}, {12, 1}};
    return pairs;
}

/// Plausible planar layout for the demo network (grid steps of ~111 m).
inline GeoPoint demo_position(NodeId id) {
    static const std::map<NodeId, std::pair<double, double>> grid = {
        {1, {0, 0}}, {2, {1, 0}}, {3, {2, 0}},  {4, {3, 0}},  {5, {2, 1}},  {6, {4, 1}},
        {7, {5, 1}}, {8, {5, 2}}, {9, {5, 3}},  {10, {4, 3}}, {11, {4, 2}}, {12, {3, 1}}};
    const auto [x, y] = grid.at(id);
    return GeoPoint{52.5 + 0.001 * y, 13.4 + 0.001 * x};
}

/// Demo network with explicit lengths; edge ids follow demo_edge_pairs()
/// order (0..14), start node 1.
inline RoadGraph demo_graph_with_lengths(
    const std::map<std::pair<NodeId, NodeId>, double>& lengths) {
    std::vector<RoadNode> nodes;
    for (NodeId id = 1; id <= 12; ++id) nodes.push_back({id, demo_position(id), {}});
    std::vector<RoadEdge> edges;
    EdgeId next = 0;
    for (const auto& [a, b] : demo_edge_pairs()) {
        auto it = lengths.find(np(a, b));
        edges.push_back({next++, a, b, it == lengths.end() ? 1.0 : it->second});
    }
    return RoadGraph(std::move(nodes), std::move(edges), 1);
}

/// Demo network with all unit lengths.
inline RoadGraph demo_graph() { return demo_graph_with_lengths({}); }

/// Edge id lookup by endpoints (demo fixtures have no parallel edges).
inline EdgeId edge_between(const RoadGraph& g, NodeId a, NodeId b) {
    const auto ids = g.edges_between(a, b);
    if (ids.size() != 1)
        throw std::logic_error("expected exactly one edge between the given nodes");
    return ids.front();
}

inline std::set<EdgeId> edge_ids(const RoadGraph& g,
                                 const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::set<EdgeId> out;
    for (const auto& [a, b] : pairs) out.insert(edge_between(g, a, b));
    return out;
}

/// Random connected multigraph: a random spanning tree plus extra edges.
/// Node ids 1..n; deterministic per seed.
inline RoadGraph random_connected_graph(std::uint64_t seed, int min_nodes, int max_nodes,
                                        int max_extra_edges, bool unit_lengths,
                                        bool allow_parallel = true) {
    std::mt19937_64 rng(seed);
    const int n = min_nodes + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                   max_nodes - min_nodes + 1));
    std::vector<RoadNode> nodes;
    for (NodeId id = 1; id <= n; ++id)
        nodes.push_back({id, GeoPoint{50.0 + 0.0001 * double(id), 8.0}, {}});

    const auto length = [&]() {
        return unit_lengths ? 1.0 : 0.5 + static_cast<double>(rng() % 1000) / 250.0;
    };
    std::vector<RoadEdge> edges;
    std::set<std::pair<NodeId, NodeId>> seen;
    EdgeId next = 0;
    for (NodeId id = 2; id <= n; ++id) {
        const NodeId anchor = 1 + static_cast<NodeId>(rng() % static_cast<std::uint64_t>(id - 1));
        edges.push_back({next++, anchor, id, length()});
        seen.insert(np(anchor, id));
    }
    const int extra = max_extra_edges == 0
                          ? 0
                          : static_cast<int>(rng() % static_cast<std::uint64_t>(max_extra_edges + 1));
    for (int i = 0; i < extra; ++i) {
        const NodeId a = 1 + static_cast<NodeId>(rng() % static_cast<std::uint64_t>(n));
        const NodeId b = 1 + static_cast<NodeId>(rng() % static_cast<std::uint64_t>(n));
        if (a == b) continue;
        if (!allow_parallel && seen.count(np(a, b))) continue;
        edges.push_back({next++, a, b, length()});
        seen.insert(np(a, b));
    }
    return RoadGraph(std::move(nodes), std::move(edges), 1);
}

/// Deterministic ~58-node synthetic street network: a jittered grid with
/// some diagonals removed, lengths from the geometry.
inline RoadGraph synthetic_street_network(std::uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    const int cols = 8, rows = 7;  // 56 grid nodes + 2 spurs = 58
    std::vector<RoadNode> nodes;
    std::map<std::pair<int, int>, NodeId> at;
    NodeId next_node = 1;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double jx = static_cast<double>(rng() % 100) / 100.0 * 0.0002;
            const double jy = static_cast<double>(rng() % 100) / 100.0 * 0.0002;
            at[{r, c}] = next_node;
            nodes.push_back(
                {next_node++, GeoPoint{48.1 + 0.0012 * r + jy, 11.5 + 0.0012 * c + jx}, {}});
        }
    }
    nodes.push_back({next_node++, GeoPoint{48.1 - 0.0012, 11.5}, {}});          // south spur
    nodes.push_back({next_node++, GeoPoint{48.1 + 0.0012 * rows, 11.5 + 0.0012 * (cols - 1)}, {}});

    const auto dist = [&](NodeId a, NodeId b) {
        return haversine_distance(nodes[a - 1].position, nodes[b - 1].position);
    };
    // All vertical links survive and row 0 stays complete, so the grid is
    // connected no matter which of the remaining horizontals get dropped.
    std::vector<RoadEdge> edges;
    EdgeId next_edge = 0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols && (r == 0 || rng() % 10 != 0))
                edges.push_back({next_edge++, at[{r, c}], at[{r, c + 1}],
                                 dist(at[{r, c}], at[{r, c + 1}])});
            if (r + 1 < rows)
                edges.push_back({next_edge++, at[{r, c}], at[{r + 1, c}],
                                 dist(at[{r, c}], at[{r + 1, c}])});
        }
    }
    const NodeId spur_a = next_node - 2, spur_b = next_node - 1;
    edges.push_back({next_edge++, spur_a, at[{0, 0}], dist(spur_a, at[{0, 0}])});
    edges.push_back({next_edge++, spur_b, at[{rows - 1, cols - 1}],
                     dist(spur_b, at[{rows - 1, cols - 1}])});
    return RoadGraph(std::move(nodes), std::move(edges), 1);
}

}  // namespace alcplan::testing
