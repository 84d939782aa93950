#pragma once

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "alcplan/edge_counts.hpp"
#include "alcplan/edge_weights.hpp"
#include "alcplan/rng.hpp"
#include "alcplan/road_graph.hpp"
#include "alcplan/route.hpp"
#include "alcplan/shortest_path.hpp"

namespace alcplan {

/// Nodes of odd multigraph degree, ascending. Always an even-sized set.
inline std::vector<NodeId> odd_degree_nodes(const RoadGraph& g) {
    std::vector<NodeId> odd;
    for (const auto& n : g.nodes())
        if (g.degree(n.id) % 2 == 1) odd.push_back(n.id);
    return odd;
}

struct MatchedPair {
    NodeId a = 0;
    NodeId b = 0;
    Route path;  // shortest path from a to b in the base graph
    double length = 0.0;
};

struct Matching {
    std::vector<MatchedPair> pairs;
    double total_length = 0.0;
    bool exact = true;
};

/// Minimum-weight perfect matching of the odd-degree nodes under the
/// shortest-path metric. Exact (bitmask dynamic program over pair choices)
/// up to `exact_limit` nodes; beyond that a greedy nearest-pair fallback is
/// used and a warning is emitted, since 2^k states become unreasonable.
inline Matching min_weight_odd_matching(const RoadGraph& g, const std::vector<NodeId>& odd,
                                        int exact_limit = 14) {
    if (odd.size() % 2 != 0)
        throw Error("odd-degree node set must have even size (handshake lemma)");
    Matching m;
    if (odd.empty()) return m;

    const std::size_t k = odd.size();
    std::vector<std::vector<PathResult>> paths(k, std::vector<PathResult>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) paths[i][j] = shortest_path(g, odd[i], odd[j]);

    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    if (k <= static_cast<std::size_t>(exact_limit)) {
        const std::size_t full = (std::size_t{1} << k) - 1;
        constexpr double kInf = std::numeric_limits<double>::infinity();
        std::vector<double> best(full + 1, kInf);
        std::vector<int> pick(full + 1, -1);  // packed (i, j) decision per mask
        best[0] = 0.0;
        for (std::size_t mask = 1; mask <= full; ++mask) {
            std::size_t i = 0;
            while (!(mask & (std::size_t{1} << i))) ++i;
            for (std::size_t j = i + 1; j < k; ++j) {
                if (!(mask & (std::size_t{1} << j))) continue;
                const std::size_t rest = mask ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
                if (best[rest] == kInf) continue;
                const double c = best[rest] + paths[i][j].cost;
                if (c < best[mask]) {
                    best[mask] = c;
                    pick[mask] = static_cast<int>(i * k + j);
                }
            }
        }
        std::size_t mask = full;
        while (mask) {
            const std::size_t i = static_cast<std::size_t>(pick[mask]) / k;
            const std::size_t j = static_cast<std::size_t>(pick[mask]) % k;
            chosen.emplace_back(i, j);
            mask ^= (std::size_t{1} << i) | (std::size_t{1} << j);
        }
    } else {
        m.exact = false;
        std::vector<char> used(k, 0);
        for (std::size_t round = 0; round < k / 2; ++round) {
            double best_cost = std::numeric_limits<double>::infinity();
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (used[i]) continue;
                for (std::size_t j = i + 1; j < k; ++j) {
                    if (used[j]) continue;
                    if (paths[i][j].cost < best_cost) {
                        best_cost = paths[i][j].cost;
                        bi = i;
                        bj = j;
                    }
                }
            }
            used[bi] = used[bj] = 1;
            chosen.emplace_back(bi, bj);
        }
    }

    for (auto [i, j] : chosen) {
        MatchedPair p;
        p.a = odd[i];
        p.b = odd[j];
        p.path = paths[i][j].route;
        p.length = paths[i][j].cost;
        m.total_length += p.length;
        m.pairs.push_back(p);
    }
    std::sort(m.pairs.begin(), m.pairs.end(),
              [](const MatchedPair& x, const MatchedPair& y) { return x.a < y.a; });
    return m;
}

/// Eulerian multigraph: every base edge once plus the matching paths again.
/// Arcs remember the base edge they traverse, so routes extracted from the
/// augmentation always speak in original edge ids.
struct AugmentedGraph {
    const RoadGraph* base = nullptr;
    std::vector<EdgeId> arcs;  // arc index -> base edge id

    double total_length() const {
        double s = 0.0;
        for (EdgeId e : arcs) s += base->edge(e).length_m;
        return s;
    }
};

inline AugmentedGraph augment_graph(const RoadGraph& g, const Matching& matching) {
    AugmentedGraph ag;
    ag.base = &g;
    for (const auto& e : g.edges()) ag.arcs.push_back(e.id);
    for (const auto& p : matching.pairs)
        for (EdgeId e : p.path.edges) ag.arcs.push_back(e);
    return ag;
}

namespace detail {

/// Hierholzer circuit over arc indices. Adjacency of every node is sorted
/// by (arc's base edge id, arc index) and then shuffled when a seed is
/// given; without a seed the sorted order makes the circuit canonical.
inline Route euler_circuit(const AugmentedGraph& ag, NodeId start,
                           std::optional<std::uint64_t> seed) {
    const RoadGraph& g = *ag.base;
    std::map<NodeId, std::vector<std::size_t>> adj;
    for (std::size_t a = 0; a < ag.arcs.size(); ++a) {
        const RoadEdge& e = g.edge(ag.arcs[a]);
        adj[e.a].push_back(a);
        adj[e.b].push_back(a);
    }
    for (auto& [node, arcs] : adj) {
        std::sort(arcs.begin(), arcs.end(), [&](std::size_t x, std::size_t y) {
            return std::make_pair(ag.arcs[x], x) < std::make_pair(ag.arcs[y], y);
        });
    }
    if (seed) {
        std::mt19937_64 rng(*seed);
        for (auto& [node, arcs] : adj) deterministic_shuffle(arcs, rng);
    }
    for (const auto& [node, arcs] : adj)
        if (arcs.size() % 2 != 0)
            throw Error("node " + std::to_string(node) + " has odd degree; no closed circuit");
    if (!adj.count(start)) throw Error("start node touches no arc");

    std::vector<char> used(ag.arcs.size(), 0);
    std::map<NodeId, std::size_t> cursor;
    // Stack holds (node, arc taken to reach it); -1 marks the origin.
    std::vector<std::pair<NodeId, std::ptrdiff_t>> stack{{start, -1}};
    std::vector<std::pair<NodeId, std::ptrdiff_t>> out;
    while (!stack.empty()) {
        const NodeId v = stack.back().first;
        auto& arcs = adj[v];
        std::size_t& c = cursor[v];
        while (c < arcs.size() && used[arcs[c]]) ++c;
        if (c == arcs.size()) {
            out.push_back(stack.back());
            stack.pop_back();
        } else {
            const std::size_t a = arcs[c];
            used[a] = 1;
            stack.emplace_back(g.edge(ag.arcs[a]).other(v), static_cast<std::ptrdiff_t>(a));
        }
    }
    if (out.size() != ag.arcs.size() + 1)
        throw Error("arc set is not connected; circuit covered " + std::to_string(out.size() - 1) +
                    " of " + std::to_string(ag.arcs.size()) + " arcs");

    std::reverse(out.begin(), out.end());
    Route r;
    r.nodes.push_back(out.front().first);
    for (std::size_t i = 1; i < out.size(); ++i) {
        r.nodes.push_back(out[i].first);
        r.edges.push_back(ag.arcs[static_cast<std::size_t>(out[i].second)]);
    }
    return r;
}

}  // namespace detail

/// Random Eulerian circuit through every arc, starting and ending at
/// `start`. The same seed always yields the same circuit.
inline Route euler_circuit_seeded(const AugmentedGraph& ag, NodeId start, std::uint64_t seed) {
    return detail::euler_circuit(ag, start, seed);
}

/// Canonical (unshuffled) Eulerian circuit.
inline Route euler_circuit_canonical(const AugmentedGraph& ag, NodeId start) {
    return detail::euler_circuit(ag, start, std::nullopt);
}

/// Distance-normalized information score of a closed covering route:
/// d_opt of the reduced weighted Laplacian over the route length.
inline double score_covering_route(const RoadGraph& g, const Route& route,
                                   const EdgeWeightParams& params) {
    if (!route.closed() || route.nodes.front() != g.start_node())
        throw InvalidRouteError("covering route must start and end at the start node");
    const EdgeCounts counts = update_edge_counts(g, route);
    for (const auto& [eid, c] : counts)
        if (c < 1) throw CoverageError("route does not cover edge " + std::to_string(eid));
    const InformationGraph ig =
        build_information_graph(g, counts, zero_counts(g), {}, params);
    return information_score(g, ig) / route_distance(g, route);
}

struct CandidateSet {
    std::vector<Route> routes;          // distinct circuits, in discovery order
    std::vector<double> scores;         // parallel to routes
    std::int64_t attempts_requested = 0;
    std::int64_t attempts_made = 0;
    bool converged_early = false;
    double matching_length = 0.0;
};

struct EnumerationOptions {
    /// Stop after this many consecutive attempts without a new distinct
    /// route. 0 picks max(50, attempts/10); negative disables the stop.
    std::int64_t convergence_window = 0;
    /// Largest odd-node set still matched exactly (see min_weight_odd_matching).
    int matching_exact_limit = 14;
};

/// Seeded search over Eulerian circuits of the matched augmentation.
/// Attempt i uses a seed derived from (seed, i), so results for a given
/// seed are reproducible and the set of distinct routes is non-decreasing
/// in the attempt budget.
inline CandidateSet enumerate_candidates(const RoadGraph& g, std::int64_t attempts,
                                         std::uint64_t seed, const EdgeWeightParams& params,
                                         const EnumerationOptions& opts = {}) {
    if (attempts < 1) throw ConfigError("attempts must be >= 1");
    const std::vector<NodeId> odd = odd_degree_nodes(g);
    const Matching matching = min_weight_odd_matching(g, odd, opts.matching_exact_limit);
    if (!matching.exact)
        std::clog << "warning: " << odd.size() << " odd-degree nodes exceeds exact matching limit "
                  << opts.matching_exact_limit << "; using greedy pairing\n";
    const AugmentedGraph ag = augment_graph(g, matching);

    std::int64_t window = opts.convergence_window;
    if (window == 0) window = std::max<std::int64_t>(50, attempts / 10);

    CandidateSet set;
    set.attempts_requested = attempts;
    set.matching_length = matching.total_length;
    std::set<std::vector<EdgeId>> seen;
    std::int64_t misses = 0;
    for (std::int64_t i = 0; i < attempts; ++i) {
        Route r = euler_circuit_seeded(ag, g.start_node(), derive_seed(seed, static_cast<std::uint64_t>(i)));
        ++set.attempts_made;
        if (seen.insert(r.edges).second) {
            set.scores.push_back(score_covering_route(g, r, params));
            set.routes.push_back(std::move(r));
            misses = 0;
        } else if (++misses >= window && window > 0) {
            set.converged_early = true;
            break;
        }
    }
    return set;
}

struct GlobalPlan {
    Route route;
    double score = 0.0;
    double max_score = 0.0;
    double min_score = 0.0;
    std::int64_t attempts_made = 0;
    std::size_t solutions = 0;
    double matching_length = 0.0;
};

/// Picks the best-scoring candidate. Ties go to the shorter route, then to
/// the lexicographically smallest node sequence, so selection does not
/// depend on discovery order.
inline GlobalPlan select_global_route(const RoadGraph& g, const CandidateSet& set) {
    if (set.routes.empty()) throw Error("candidate set is empty");
    std::size_t best = 0;
    double best_dist = route_distance(g, set.routes[0]);
    for (std::size_t i = 1; i < set.scores.size(); ++i) {
        const double dist = route_distance(g, set.routes[i]);
        bool better = set.scores[i] > set.scores[best];
        if (set.scores[i] == set.scores[best]) {
            if (dist < best_dist) better = true;
            else if (dist == best_dist && set.routes[i].nodes < set.routes[best].nodes)
                better = true;
        }
        if (better) {
            best = i;
            best_dist = dist;
        }
    }
    GlobalPlan plan;
    plan.route = set.routes[best];
    plan.score = set.scores[best];
    plan.max_score = *std::max_element(set.scores.begin(), set.scores.end());
    plan.min_score = *std::min_element(set.scores.begin(), set.scores.end());
    plan.attempts_made = set.attempts_made;
    plan.solutions = set.routes.size();
    return plan;
}

/// End-to-end planning: enumerate, score, select.
inline GlobalPlan plan_global_route(const RoadGraph& g, std::int64_t attempts, std::uint64_t seed,
                                    const EdgeWeightParams& params,
                                    const EnumerationOptions& opts = {}) {
    const CandidateSet set = enumerate_candidates(g, attempts, seed, params, opts);
    GlobalPlan plan = select_global_route(g, set);
    plan.matching_length = set.matching_length;
    return plan;
}

}  // namespace alcplan
