#pragma once

#include <cstdint>
#include <map>

#include "alcplan/road_graph.hpp"
#include "alcplan/route.hpp"

namespace alcplan {

/// Per-edge optimal measurement counts; domain always equals the edge set.
using EdgeCounts = std::map<EdgeId, std::int64_t>;

inline EdgeCounts zero_counts(const RoadGraph& g) {
    EdgeCounts c;
    for (const auto& e : g.edges()) c[e.id] = 0;
    return c;
}

/// Counts how often each edge can be measured along a route.
///
/// Two passes. The first credits every traversal. The second walks the node
/// sequence; whenever a node is revisited, every edge strictly between the
/// most recent earlier occurrence and the current position gets one more
/// credit, because closing that cycle lets each edge inside it be estimated
/// once more. Only the nearest enclosing cycle is credited per revisit.
inline EdgeCounts update_edge_counts(const RoadGraph& g, const Route& route) {
    validate_route(g, route);
    EdgeCounts counts = zero_counts(g);
    for (EdgeId e : route.edges) ++counts[e];

    std::map<NodeId, std::size_t> last_seen;
    for (std::size_t i = 0; i < route.nodes.size(); ++i) {
        const NodeId n = route.nodes[i];
        auto it = last_seen.find(n);
        if (it != last_seen.end()) {
            for (std::size_t k = it->second; k < i; ++k) ++counts[route.edges[k]];
        }
        last_seen[n] = i;  // future revisits credit only the most recent cycle
    }
    return counts;
}

}  // namespace alcplan
