#pragma once

#include <string>
#include <vector>

#include "alcplan/errors.hpp"
#include "alcplan/road_graph.hpp"

namespace alcplan {

/// Walk through the graph: k edge traversals and k+1 node visits.
///
/// nodes[i] and nodes[i+1] are the endpoints of edges[i]. A route with a
/// single node and no edges is a valid degenerate walk (standing still).
/// Keeping the edge sequence alongside the node sequence disambiguates
/// parallel edges.
struct Route {
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;

    std::size_t traversal_count() const { return edges.size(); }
    bool closed() const { return !nodes.empty() && nodes.front() == nodes.back(); }
};

inline void validate_route(const RoadGraph& g, const Route& r) {
    if (r.nodes.empty()) throw InvalidRouteError("route has no nodes");
    if (r.edges.size() + 1 != r.nodes.size())
        throw InvalidRouteError("route has " + std::to_string(r.nodes.size()) + " nodes but " +
                                std::to_string(r.edges.size()) + " edges");
    for (NodeId n : r.nodes)
        if (!g.has_node(n)) throw InvalidRouteError("route visits unknown node " + std::to_string(n));
    for (std::size_t i = 0; i < r.edges.size(); ++i) {
        const RoadEdge& e = g.edge(r.edges[i]);
        const bool forward = e.a == r.nodes[i] && e.b == r.nodes[i + 1];
        const bool backward = e.b == r.nodes[i] && e.a == r.nodes[i + 1];
        if (!forward && !backward)
            throw InvalidRouteError("edge " + std::to_string(r.edges[i]) +
                                    " does not join route nodes at step " + std::to_string(i));
    }
}

/// Builds a route from a node sequence, choosing for every hop the shortest
/// edge between the endpoints (smallest id on length ties).
inline Route route_from_nodes(const RoadGraph& g, std::vector<NodeId> nodes) {
    if (nodes.empty()) throw InvalidRouteError("route has no nodes");
    Route r;
    r.nodes = std::move(nodes);
    for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i) {
        if (!g.has_node(r.nodes[i]))
            throw InvalidRouteError("route visits unknown node " + std::to_string(r.nodes[i]));
        EdgeId best = -1;
        double best_len = 0.0;
        for (EdgeId eid : g.edges_between(r.nodes[i], r.nodes[i + 1])) {
            const double len = g.edge(eid).length_m;
            if (best < 0 || len < best_len) {
                best = eid;
                best_len = len;
            }
        }
        if (best < 0)
            throw InvalidRouteError("no edge joins nodes " + std::to_string(r.nodes[i]) + " and " +
                                    std::to_string(r.nodes[i + 1]));
        r.edges.push_back(best);
    }
    if (!g.has_node(r.nodes.back()))
        throw InvalidRouteError("route visits unknown node " + std::to_string(r.nodes.back()));
    return r;
}

inline double route_distance(const RoadGraph& g, const Route& r) {
    double s = 0.0;
    for (EdgeId e : r.edges) s += g.edge(e).length_m;
    return s;
}

/// Appends `next` to `r`; next must begin where r ends.
inline Route concat_routes(Route r, const Route& next) {
    if (next.nodes.empty()) return r;
    if (r.nodes.empty()) return next;
    if (r.nodes.back() != next.nodes.front())
        throw InvalidRouteError("cannot join routes: segment starts at node " +
                                std::to_string(next.nodes.front()) + " but previous ends at " +
                                std::to_string(r.nodes.back()));
    r.nodes.insert(r.nodes.end(), next.nodes.begin() + 1, next.nodes.end());
    r.edges.insert(r.edges.end(), next.edges.begin(), next.edges.end());
    return r;
}

/// Reverses direction of travel.
inline Route reverse_route(Route r) {
    std::reverse(r.nodes.begin(), r.nodes.end());
    std::reverse(r.edges.begin(), r.edges.end());
    return r;
}

}  // namespace alcplan
