#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "alcplan/edge_counts.hpp"
#include "alcplan/edge_weights.hpp"
#include "alcplan/postman.hpp"
#include "alcplan/road_graph.hpp"
#include "alcplan/route.hpp"
#include "alcplan/shortest_path.hpp"

namespace alcplan {

/// Snapshot of a mission in progress: the prefix already driven (R1) and
/// what it implies. visited_nodes excludes the final position unless it was
/// also reached earlier, because a loop closure requires a true revisit.
struct ReplanState {
    const RoadGraph* graph = nullptr;
    Route traveled;  // R1
    std::set<NodeId> visited_nodes;
    std::set<EdgeId> visited_edges;
    NodeId current_node = 0;
};

inline ReplanState make_replan_state(const RoadGraph& g, Route traveled) {
    validate_route(g, traveled);
    ReplanState s;
    s.graph = &g;
    s.current_node = traveled.nodes.back();
    for (std::size_t i = 0; i + 1 < traveled.nodes.size(); ++i)
        s.visited_nodes.insert(traveled.nodes[i]);
    for (EdgeId e : traveled.edges) s.visited_edges.insert(e);
    s.traveled = std::move(traveled);
    return s;
}

/// Shortest path where unexplored edges cost beta times their length,
/// trading extra distance for coverage of new ground. The target must be a
/// previously visited node: the point of R2 is to close a loop.
inline Route dijkstra_best_path(const ReplanState& s, NodeId target, double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta must be in (0, 1]");
    if (!s.visited_nodes.count(target))
        throw InvalidRouteError("loop-closure target " + std::to_string(target) +
                                " was never visited");
    if (target == s.current_node) return Route{{target}, {}};
    const auto cost = [&](const RoadEdge& e) {
        return s.visited_edges.count(e.id) ? e.length_m : e.length_m * beta;
    };
    return shortest_path(*s.graph, s.current_node, target, cost).route;
}

/// The edges still never traversed: what remains to be covered.
inline std::set<EdgeId> create_required_graph(const RoadGraph& g,
                                              const std::set<EdgeId>& explored) {
    std::set<EdgeId> required;
    for (const auto& e : g.edges())
        if (!explored.count(e.id)) required.insert(e.id);
    return required;
}

/// Required edges plus shortest-path connectors joining their components.
/// Connectors are optional: they are driven but carry no coverage duty.
struct RequiredStructure {
    std::set<EdgeId> required;
    std::vector<Route> connectors;
};

namespace detail {

class UnionFind {
public:
    void add(NodeId v) { parent_.emplace(v, v); }
    NodeId find(NodeId v) {
        NodeId r = v;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[v] != r) v = std::exchange(parent_[v], r);
        return r;
    }
    void unite(NodeId a, NodeId b) { parent_[find(a)] = find(b); }

private:
    std::map<NodeId, NodeId> parent_;
};

}  // namespace detail

/// Joins the components of the required subgraph with shortest paths,
/// minimum-spanning-tree style: repeatedly connect the globally nearest
/// pair of components. Deterministic (ties by smaller node ids).
inline RequiredStructure connect_required_graph(const RoadGraph& g,
                                                const std::set<EdgeId>& required) {
    if (required.empty()) throw Error("required edge set is empty");
    RequiredStructure rs;
    rs.required = required;

    detail::UnionFind uf;
    std::set<NodeId> nodes;
    for (EdgeId eid : required) {
        const RoadEdge& e = g.edge(eid);
        nodes.insert(e.a);
        nodes.insert(e.b);
        uf.add(e.a);
        uf.add(e.b);
    }
    for (EdgeId eid : required) uf.unite(g.edge(eid).a, g.edge(eid).b);

    auto component_count = [&]() {
        std::set<NodeId> roots;
        for (NodeId v : nodes) roots.insert(uf.find(v));
        return roots.size();
    };

    while (component_count() > 1) {
        double best_cost = std::numeric_limits<double>::infinity();
        PathResult best_path;
        NodeId best_u = 0, best_v = 0;
        for (NodeId u : nodes) {
            for (NodeId v : nodes) {
                if (v <= u || uf.find(u) == uf.find(v)) continue;
                const PathResult p = shortest_path(g, u, v);
                if (p.cost < best_cost ||
                    (p.cost == best_cost && std::make_pair(u, v) < std::make_pair(best_u, best_v))) {
                    best_cost = p.cost;
                    best_path = p;
                    best_u = u;
                    best_v = v;
                }
            }
        }
        rs.connectors.push_back(best_path.route);
        uf.unite(best_u, best_v);
    }
    return rs;
}

namespace detail {

struct RppArc {
    NodeId a = 0;
    NodeId b = 0;
    double length = 0.0;
    Route path;        // expansion back to graph nodes/edges; empty for the virtual arc
    int rank = 0;      // adjacency order: required 0, connector 1, matched 2, virtual 3
    bool is_virtual = false;
};

/// Hierholzer circuit over atomic arcs, canonical (sorted) exploration.
/// Returns the arc sequence with per-step orientation.
struct RppStep {
    std::size_t arc = 0;
    NodeId from = 0;
    NodeId to = 0;
};

inline std::vector<RppStep> rpp_circuit(const std::vector<RppArc>& arcs, NodeId start) {
    std::map<NodeId, std::vector<std::size_t>> adj;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        adj[arcs[i].a].push_back(i);
        adj[arcs[i].b].push_back(i);
    }
    for (auto& [node, list] : adj)
        std::sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) {
            return std::make_pair(arcs[x].rank, x) < std::make_pair(arcs[y].rank, y);
        });
    for (const auto& [node, list] : adj)
        if (list.size() % 2 != 0)
            throw Error("rpp structure node " + std::to_string(node) + " has odd degree");
    if (!adj.count(start)) throw Error("rpp start node touches no arc");

    std::vector<char> used(arcs.size(), 0);
    std::map<NodeId, std::size_t> cursor;
    std::vector<std::pair<NodeId, std::ptrdiff_t>> stack{{start, -1}};
    std::vector<std::pair<NodeId, std::ptrdiff_t>> out;
    while (!stack.empty()) {
        const NodeId v = stack.back().first;
        auto& list = adj[v];
        std::size_t& c = cursor[v];
        while (c < list.size() && used[list[c]]) ++c;
        if (c == list.size()) {
            out.push_back(stack.back());
            stack.pop_back();
        } else {
            const std::size_t a = list[c];
            used[a] = 1;
            const NodeId w = arcs[a].a == v ? arcs[a].b : arcs[a].a;
            stack.emplace_back(w, static_cast<std::ptrdiff_t>(a));
        }
    }
    if (out.size() != arcs.size() + 1)
        throw Error("rpp structure is not connected");
    std::reverse(out.begin(), out.end());

    std::vector<RppStep> steps;
    for (std::size_t i = 1; i < out.size(); ++i) {
        RppStep s;
        s.arc = static_cast<std::size_t>(out[i].second);
        s.from = out[i - 1].first;
        s.to = out[i].first;
        steps.push_back(s);
    }
    return steps;
}

inline Route expand_steps(const RoadGraph& g, const std::vector<RppStep>& steps,
                          const std::vector<RppArc>& arcs, NodeId start) {
    Route r;
    r.nodes.push_back(start);
    for (const auto& s : steps) {
        Route piece = arcs[s.arc].path;
        if (piece.nodes.front() != s.from) piece = reverse_route(std::move(piece));
        r = concat_routes(std::move(r), piece);
    }
    validate_route(g, r);
    return r;
}

}  // namespace detail

/// Route-inspection solver for a required edge subset: open route from
/// `start` to `end` covering every required edge at least once.
///
/// Reduction: a virtual start-end arc of negligible weight turns the open
/// problem into a closed one; odd-degree nodes of the structure (virtual
/// arc included, that is its purpose) are matched with shortest paths on
/// the real graph; an Eulerian circuit is extracted, rotated so the virtual
/// arc comes last, and the virtual arc is dropped. Matching paths live on
/// the real graph, so the virtual arc can never be duplicated (asserted).
inline Route rpp_solve(const RoadGraph& g, NodeId start, NodeId end,
                       const RequiredStructure& rs) {
    if (rs.required.empty()) throw Error("rpp_solve needs a non-empty required set");

    std::vector<detail::RppArc> arcs;
    for (EdgeId eid : rs.required) {
        const RoadEdge& e = g.edge(eid);
        detail::RppArc a;
        a.a = e.a;
        a.b = e.b;
        a.length = e.length_m;
        a.path = Route{{e.a, e.b}, {eid}};
        a.rank = 0;
        arcs.push_back(a);
    }
    for (const Route& c : rs.connectors) {
        detail::RppArc a;
        a.a = c.nodes.front();
        a.b = c.nodes.back();
        a.length = route_distance(g, c);
        a.path = c;
        a.rank = 1;
        arcs.push_back(a);
    }

    // Attach start and end to the structure via shortest connectors.
    auto structure_nodes = [&]() {
        std::set<NodeId> s;
        for (const auto& a : arcs) {
            s.insert(a.a);
            s.insert(a.b);
        }
        return s;
    };
    for (NodeId attach : {start, end}) {
        const std::set<NodeId> nodes = structure_nodes();
        if (nodes.count(attach)) continue;
        double best_cost = std::numeric_limits<double>::infinity();
        PathResult best;
        NodeId best_node = 0;
        for (NodeId v : nodes) {
            const PathResult p = shortest_path(g, attach, v);
            if (p.cost < best_cost || (p.cost == best_cost && v < best_node)) {
                best_cost = p.cost;
                best = p;
                best_node = v;
            }
        }
        detail::RppArc a;
        a.a = attach;
        a.b = best_node;
        a.length = best.cost;
        a.path = best.route;
        a.rank = 1;
        arcs.push_back(a);
    }

    double min_len = std::numeric_limits<double>::infinity();
    for (const auto& e : g.edges()) min_len = std::min(min_len, e.length_m);
    if (start != end) {
        detail::RppArc a;
        a.a = start;
        a.b = end;
        a.length = 1e-6 * min_len;  // cheap enough never to attract a matching
        a.rank = 3;
        a.is_virtual = true;
        arcs.push_back(a);
    }

    // Restore even parity. Matching paths are real-graph shortest paths, so
    // they cannot contain the virtual arc.
    std::map<NodeId, int> degree;
    for (const auto& a : arcs) {
        ++degree[a.a];
        ++degree[a.b];
    }
    std::vector<NodeId> odd;
    for (const auto& [v, d] : degree)
        if (d % 2 != 0) odd.push_back(v);
    const Matching matching = min_weight_odd_matching(g, odd);
    for (const auto& p : matching.pairs) {
        detail::RppArc a;
        a.a = p.a;
        a.b = p.b;
        a.length = p.length;
        a.path = p.path;
        a.rank = 2;
        arcs.push_back(a);
    }

    std::size_t virtual_count = 0;
    for (const auto& a : arcs) virtual_count += a.is_virtual ? 1 : 0;
    if (virtual_count != (start != end ? 1u : 0u))
        throw Error("internal: virtual arc duplicated in rpp structure");

    std::vector<detail::RppStep> steps = detail::rpp_circuit(arcs, start);
    if (start != end) {
        const auto is_virtual_step = [&](const detail::RppStep& s) {
            return arcs[s.arc].is_virtual;
        };
        const auto it = std::find_if(steps.begin(), steps.end(), is_virtual_step);
        if (it == steps.end()) throw Error("internal: virtual arc missing from circuit");
        // Rotate the circular step sequence so the virtual arc is last,
        // then drop it; the remainder is an open walk between its ends.
        std::rotate(steps.begin(), it + 1, steps.end());
        if (std::find_if(steps.begin(), steps.end() - 1, is_virtual_step) != steps.end() - 1)
            throw Error("internal: virtual arc traversed twice");
        steps.pop_back();
        // The walk now runs from one end of the virtual arc to the other.
        Route r = detail::expand_steps(g, steps, arcs, steps.front().from);
        if (r.nodes.front() != start) r = reverse_route(std::move(r));
        if (r.nodes.front() != start || r.nodes.back() != end)
            throw Error("internal: rpp walk does not join start and end");
        return r;
    }
    return detail::expand_steps(g, steps, arcs, start);
}

/// Information-per-meter value of completing the mission via one candidate
/// loop-closure point: numerator scores the full route's achievable counts
/// (edges of R1 keep their accumulated information), denominator is the
/// already-driven distance plus everything R2 and R3 still have to drive.
inline double evaluate_candidate(const RoadGraph& g, const Route& r1, const Route& r2,
                                 const Route& r3, const EdgeWeightParams& params) {
    Route full = concat_routes(concat_routes(r1, r2), r3);
    const EdgeCounts counts = update_edge_counts(g, full);
    std::vector<EdgeId> missing;
    for (const auto& [eid, c] : counts)
        if (c < 1) missing.push_back(eid);
    if (!missing.empty()) {
        std::string msg = "candidate route misses edges:";
        for (EdgeId e : missing) msg += " " + std::to_string(e);
        throw CoverageError(msg);
    }
    const EdgeCounts prior = update_edge_counts(g, r1);
    std::set<EdgeId> visited(r1.edges.begin(), r1.edges.end());
    const InformationGraph ig = build_information_graph(g, counts, prior, visited, params);
    const double denom =
        route_distance(g, r1) + route_distance(g, r2) + route_distance(g, r3);
    return information_score(g, ig) / denom;
}

struct CandidateDiagnostics {
    NodeId node = 0;
    double objective = 0.0;
    double r2_length = 0.0;
    double r3_length = 0.0;
};

struct ReplanResult {
    NodeId loop_node = 0;
    Route to_loop;     // R2
    Route completion;  // R3
    double objective = 0.0;
    std::vector<CandidateDiagnostics> diagnostics;  // every candidate, ascending node id
};

/// Chooses the loop-closure node and completion route.
///
/// Every previously visited node is evaluated independently: R2 is the
/// discounted shortest path to it, R3 the route-inspection solution over
/// the edges still unexplored after R2 (or the discounted path home when
/// nothing remains), and the objective is evaluate_candidate on the full
/// route. Candidate state never leaks between iterations. Near-ties
/// (1e-9 relative) go to the shorter R2, then the smaller node id.
inline ReplanResult replan(const ReplanState& s, const EdgeWeightParams& params, double beta) {
    if (s.graph == nullptr || s.traveled.nodes.empty())
        throw InvalidRouteError("replan needs a non-trivial traveled prefix");
    if (s.visited_nodes.empty())
        throw InvalidRouteError("replan needs at least one visited node");
    const RoadGraph& g = *s.graph;

    ReplanResult result;
    bool have_best = false;
    double best_r2 = 0.0;
    for (NodeId candidate : s.visited_nodes) {  // std::set: ascending
        Route r2 = dijkstra_best_path(s, candidate, beta);
        std::set<EdgeId> explored = s.visited_edges;  // per-candidate scratch
        for (EdgeId e : r2.edges) explored.insert(e);
        const std::set<EdgeId> required = create_required_graph(g, explored);

        Route r3;
        if (required.empty()) {
            if (candidate == g.start_node()) {
                r3 = Route{{candidate}, {}};
            } else {
                ReplanState post = s;  // only the exploration state matters here
                post.current_node = candidate;
                post.visited_edges = explored;
                post.visited_nodes.insert(g.start_node());
                r3 = dijkstra_best_path(post, g.start_node(), beta);
            }
        } else {
            r3 = rpp_solve(g, candidate, g.start_node(), connect_required_graph(g, required));
        }

        const double objective = evaluate_candidate(g, s.traveled, r2, r3, params);
        const double r2_len = route_distance(g, r2);
        result.diagnostics.push_back(
            {candidate, objective, r2_len, route_distance(g, r3)});

        bool take = !have_best;
        if (have_best) {
            const double scale = std::max(std::abs(objective), std::abs(result.objective));
            const bool tie = std::abs(objective - result.objective) <= 1e-9 * scale;
            if (tie) {
                take = r2_len < best_r2;  // then smaller node id = keep incumbent
            } else {
                take = objective > result.objective;
            }
        }
        if (take) {
            result.loop_node = candidate;
            result.to_loop = std::move(r2);
            result.completion = std::move(r3);
            result.objective = objective;
            best_r2 = r2_len;
            have_best = true;
        }
    }
    return result;
}

}  // namespace alcplan
