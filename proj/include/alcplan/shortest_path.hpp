#pragma once

#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "alcplan/road_graph.hpp"
#include "alcplan/route.hpp"

namespace alcplan {

using EdgeCostFn = std::function<double(const RoadEdge&)>;

inline EdgeCostFn length_cost() {
    return [](const RoadEdge& e) { return e.length_m; };
}

struct PathResult {
    Route route;
    double cost = 0.0;
};

/// Dijkstra with a per-edge cost function.
///
/// Among equal-cost shortest paths the lexicographically smallest node
/// sequence is returned (parallel edges: cheapest, then smallest id). Costs
/// must be strictly positive. Implemented as a backward sweep from `to`
/// followed by a greedy forward walk that always takes the smallest
/// admissible neighbor, which realizes the lexicographic rule exactly.
inline PathResult shortest_path(const RoadGraph& g, NodeId from, NodeId to,
                                const EdgeCostFn& cost_fn = length_cost()) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t n = g.node_count();
    std::vector<double> dist(n, kInf);
    std::vector<char> done(n, 0);

    using QEntry = std::pair<double, NodeId>;  // ties pop smallest node id
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> queue;
    dist[g.node_index(to)] = 0.0;
    queue.emplace(0.0, to);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        const std::size_t vi = g.node_index(v);
        if (done[vi]) continue;
        done[vi] = 1;
        for (EdgeId eid : g.incident_edges(v)) {
            const RoadEdge& e = g.edge(eid);
            const double c = cost_fn(e);
            if (!(c > 0.0))
                throw Error("edge cost must be positive (edge " + std::to_string(eid) + ")");
            const std::size_t wi = g.node_index(e.other(v));
            if (d + c < dist[wi]) {
                dist[wi] = d + c;
                queue.emplace(dist[wi], e.other(v));
            }
        }
    }

    if (dist[g.node_index(from)] == kInf)
        throw Error("no path from node " + std::to_string(from) + " to " + std::to_string(to));

    PathResult result;
    result.cost = dist[g.node_index(from)];
    result.route.nodes.push_back(from);
    NodeId v = from;
    while (v != to) {
        const double dv = dist[g.node_index(v)];
        NodeId best_next = 0;
        EdgeId best_edge = -1;
        double best_edge_cost = 0.0;
        for (EdgeId eid : g.incident_edges(v)) {  // ascending ids
            const RoadEdge& e = g.edge(eid);
            const NodeId w = e.other(v);
            const double c = cost_fn(e);
            if (c + dist[g.node_index(w)] != dv) continue;  // not on a shortest path
            if (best_edge < 0 || w < best_next || (w == best_next && c < best_edge_cost)) {
                best_next = w;
                best_edge = eid;
                best_edge_cost = c;
            }
        }
        if (best_edge < 0)
            throw Error("shortest-path reconstruction failed at node " + std::to_string(v));
        result.route.nodes.push_back(best_next);
        result.route.edges.push_back(best_edge);
        v = best_next;
    }
    return result;
}

}  // namespace alcplan
