#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "alcplan/edge_counts.hpp"
#include "alcplan/errors.hpp"
#include "alcplan/laplacian.hpp"
#include "alcplan/road_graph.hpp"

namespace alcplan {

struct EdgeWeightParams {
    /// Sensitivity exponent; counts enter through (.)^(1/alpha).
    double alpha = 1.0;
    /// Numerator of the per-meter base weight of an unvisited edge.
    double unvisited_scale = 1.0;
    /// Information already held about a visited edge. Defaults to
    /// 1/length^2 (variance of an odometry estimate growing with length).
    std::optional<double> visited_info;

    double visited_info_for(double length_m) const {
        if (visited_info) return *visited_info;
        return 1.0 / (length_m * length_m);
    }

    void validate() const {
        if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
        if (!(unvisited_scale > 0.0)) throw ConfigError("unvisited_scale must be positive");
        if (visited_info && !(*visited_info > 0.0))
            throw ConfigError("visited_info must be positive");
    }
};

/// Information weight of a single edge.
///
/// Unvisited edges start from a base weight inversely proportional to
/// length and grow with the achievable measurement count:
///     w = (scale/length) * log2(1 + C)^(1/alpha).
/// Edges already traversed on the past route keep their accumulated
/// information and gain only the ratio of future to past measurements:
///     w = visited_info * (log2(1 + C) / log2(1 + n))^(1/alpha),
/// where n is the count already realized. Requires C >= 1, and for visited
/// edges C >= n >= 1, so every weight is positive and finite.
inline double edge_weight(std::int64_t count, std::int64_t prior_count, double length_m,
                          bool visited, const EdgeWeightParams& params) {
    params.validate();
    if (count < 1) throw Error("edge weight needs count >= 1 (covering route)");
    const double inv_alpha = 1.0 / params.alpha;
    if (!visited) {
        const double base = params.unvisited_scale / length_m;
        return base * std::pow(std::log2(1.0 + static_cast<double>(count)), inv_alpha);
    }
    if (prior_count < 1 || count < prior_count)
        throw Error("visited edge needs count >= prior >= 1");
    const double ratio = std::log2(1.0 + static_cast<double>(count)) /
                         std::log2(1.0 + static_cast<double>(prior_count));
    return params.visited_info_for(length_m) * std::pow(ratio, inv_alpha);
}

/// Edge-weighted view of the graph used for information scoring; the anchor
/// node is the one whose row/column is removed before taking d_opt.
struct InformationGraph {
    std::map<EdgeId, double> weights;
    NodeId anchor = 0;
};

/// Builds the weighted graph for a candidate plan. `counts` are the
/// achievable measurement counts of the full route, `prior_counts` those of
/// the already-traveled prefix, and `visited` the edges of that prefix.
/// For a fresh plan pass zero priors and an empty visited set.
inline InformationGraph build_information_graph(const RoadGraph& g, const EdgeCounts& counts,
                                                const EdgeCounts& prior_counts,
                                                const std::set<EdgeId>& visited,
                                                const EdgeWeightParams& params) {
    InformationGraph ig;
    ig.anchor = g.start_node();
    for (const auto& e : g.edges()) {
        auto c = counts.find(e.id);
        if (c == counts.end()) throw Error("counts missing edge " + std::to_string(e.id));
        auto p = prior_counts.find(e.id);
        const std::int64_t prior = p == prior_counts.end() ? 0 : p->second;
        ig.weights[e.id] =
            edge_weight(c->second, prior, e.length_m, visited.count(e.id) > 0, params);
    }
    return ig;
}

/// d_opt of the reduced weighted Laplacian: the scalar information score of
/// a route whose achievable counts produced `ig`.
inline double information_score(const RoadGraph& g, const InformationGraph& ig) {
    const SquareMatrix L = weighted_laplacian(g, ig.weights);
    const auto anchor = static_cast<Eigen::Index>(g.node_index(ig.anchor));
    return d_opt(reduced_laplacian(L, anchor));
}

}  // namespace alcplan
