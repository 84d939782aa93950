#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "alcplan/errors.hpp"
#include "alcplan/geo.hpp"

namespace alcplan {

using NodeId = std::int64_t;
using EdgeId = std::int32_t;

struct RoadNode {
    NodeId id = 0;
    GeoPoint position;
    LocalXY local;
};

/// Undirected road segment between two intersections.
struct RoadEdge {
    EdgeId id = 0;
    NodeId a = 0;
    NodeId b = 0;
    double length_m = 0.0;

    NodeId other(NodeId n) const { return n == a ? b : a; }
    bool touches(NodeId n) const { return n == a || n == b; }
};

/// Connected undirected multigraph of road segments.
///
/// Invariants established at construction and relied on everywhere else:
/// unique node and edge ids, edge endpoints present and distinct (no self
/// loops), strictly positive lengths, a single connected component, and a
/// start node that exists. Nodes and edges are stored sorted by id.
class RoadGraph {
public:
    RoadGraph(std::vector<RoadNode> nodes, std::vector<RoadEdge> edges, NodeId start_node)
        : nodes_(std::move(nodes)), edges_(std::move(edges)), start_(start_node) {
        std::sort(nodes_.begin(), nodes_.end(),
                  [](const RoadNode& x, const RoadNode& y) { return x.id < y.id; });
        std::sort(edges_.begin(), edges_.end(),
                  [](const RoadEdge& x, const RoadEdge& y) { return x.id < y.id; });
        validate();
        build_adjacency();
    }

    const std::vector<RoadNode>& nodes() const { return nodes_; }
    const std::vector<RoadEdge>& edges() const { return edges_; }
    NodeId start_node() const { return start_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_node(NodeId id) const { return node_index_.count(id) > 0; }

    /// Dense index of a node in nodes() order (ascending id).
    std::size_t node_index(NodeId id) const {
        auto it = node_index_.find(id);
        if (it == node_index_.end())
            throw InvalidRouteError("unknown node id " + std::to_string(id));
        return it->second;
    }

    const RoadNode& node(NodeId id) const { return nodes_[node_index(id)]; }

    const RoadEdge& edge(EdgeId id) const {
        auto it = edge_index_.find(id);
        if (it == edge_index_.end())
            throw InvalidRouteError("unknown edge id " + std::to_string(id));
        return edges_[it->second];
    }

    /// Edge ids incident to a node, ascending.
    const std::vector<EdgeId>& incident_edges(NodeId id) const {
        return adjacency_[node_index(id)];
    }

    /// Multigraph degree (parallel edges counted separately).
    int degree(NodeId id) const { return static_cast<int>(incident_edges(id).size()); }

    /// All edges joining u and v, ascending by id.
    std::vector<EdgeId> edges_between(NodeId u, NodeId v) const {
        std::vector<EdgeId> out;
        for (EdgeId e : incident_edges(u))
            if (edge(e).other(u) == v) out.push_back(e);
        return out;
    }

    double total_length() const {
        double s = 0.0;
        for (const auto& e : edges_) s += e.length_m;
        return s;
    }

private:
    void validate() const {
        if (nodes_.empty()) throw ConnectivityError("graph has no nodes");
        for (std::size_t i = 1; i < nodes_.size(); ++i)
            if (nodes_[i].id == nodes_[i - 1].id)
                throw ParseError("duplicate node id " + std::to_string(nodes_[i].id));
        std::set<NodeId> ids;
        for (const auto& n : nodes_) ids.insert(n.id);
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].id == edges_[i - 1].id)
                throw ParseError("duplicate edge id " + std::to_string(edges_[i].id));
        for (const auto& e : edges_) {
            if (!ids.count(e.a) || !ids.count(e.b))
                throw DanglingReferenceError("edge " + std::to_string(e.id) +
                                             " references a missing node");
            if (e.a == e.b)
                throw ParseError("edge " + std::to_string(e.id) + " is a self loop");
            if (!(e.length_m > 0.0))
                throw ParseError("edge " + std::to_string(e.id) + " has non-positive length");
        }
        if (!ids.count(start_))
            throw ParseError("start node " + std::to_string(start_) + " not in graph");
        check_connected(ids);
    }

    void check_connected(const std::set<NodeId>& ids) const {
        std::map<NodeId, std::vector<NodeId>> adj;
        for (const auto& e : edges_) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        std::set<NodeId> seen;
        std::vector<std::size_t> component_sizes;
        for (NodeId root : ids) {
            if (seen.count(root)) continue;
            std::size_t size = 0;
            std::queue<NodeId> q;
            q.push(root);
            seen.insert(root);
            while (!q.empty()) {
                NodeId v = q.front();
                q.pop();
                ++size;
                for (NodeId w : adj[v]) {
                    if (seen.insert(w).second) q.push(w);
                }
            }
            component_sizes.push_back(size);
        }
        if (component_sizes.size() > 1) {
            std::string msg = "graph is disconnected; component sizes:";
            for (std::size_t s : component_sizes) msg += " " + std::to_string(s);
            throw ConnectivityError(msg);
        }
    }

    void build_adjacency() {
        node_index_.clear();
        for (std::size_t i = 0; i < nodes_.size(); ++i) node_index_[nodes_[i].id] = i;
        edge_index_.clear();
        for (std::size_t i = 0; i < edges_.size(); ++i) edge_index_[edges_[i].id] = i;
        adjacency_.assign(nodes_.size(), {});
        for (const auto& e : edges_) {
            adjacency_[node_index_[e.a]].push_back(e.id);
            adjacency_[node_index_[e.b]].push_back(e.id);
        }
        for (auto& inc : adjacency_) std::sort(inc.begin(), inc.end());
    }

    std::vector<RoadNode> nodes_;
    std::vector<RoadEdge> edges_;
    NodeId start_;
    std::map<NodeId, std::size_t> node_index_;
    std::map<EdgeId, std::size_t> edge_index_;
    std::vector<std::vector<EdgeId>> adjacency_;
};

}  // namespace alcplan
