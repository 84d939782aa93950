#pragma once

#include <cstdint>
#include <deque>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "alcplan/edge_weights.hpp"
#include "alcplan/replan.hpp"
#include "alcplan/road_graph.hpp"
#include "alcplan/route.hpp"

namespace alcplan {

/// Scalar stand-in for pose uncertainty: grows linearly with distance
/// driven, collapses to the remembered value plus a residual whenever a
/// previously seen node is revisited. Coarse, but it preserves exactly what
/// the planner consumes: monotone growth and sharp loop-closure resets.
struct SimConfig {
    double drift_rate = 0.001;            // uncertainty per meter
    double loop_closure_residual = 0.02;  // floor added to the remembered value
    double trigger_threshold = 0.3;       // replan when u exceeds this
    bool alc_enabled = true;
    double min_replan_spacing_m = 10.0;   // refuse triggers closer than this
    double beta = 0.5;
    EdgeWeightParams weights;

    void validate() const {
        if (!(drift_rate > 0.0)) throw ConfigError("drift_rate must be positive");
        if (loop_closure_residual < 0.0) throw ConfigError("loop_closure_residual must be >= 0");
        if (!(trigger_threshold > loop_closure_residual))
            throw ConfigError("trigger_threshold must exceed loop_closure_residual");
        if (!(min_replan_spacing_m >= 0.0)) throw ConfigError("min_replan_spacing_m must be >= 0");
        if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta must be in (0, 1]");
        weights.validate();
    }
};

struct RobotState {
    NodeId current_node = 0;
    double odometer = 0.0;
    double u = 0.0;
    std::map<NodeId, double> node_memory;  // uncertainty at first arrival
};

enum class SimEvent { move, loop_closure, alc_trigger, replan };

inline const char* to_string(SimEvent e) {
    switch (e) {
        case SimEvent::move: return "move";
        case SimEvent::loop_closure: return "loop_closure";
        case SimEvent::alc_trigger: return "alc_trigger";
        case SimEvent::replan: return "replan";
    }
    return "?";
}

struct TraceRecord {
    double odometer_m = 0.0;
    double uncertainty = 0.0;
    SimEvent event = SimEvent::move;
    NodeId node = 0;  // where the event happened
};

struct MissionSummary {
    double avg_uncertainty = 0.0;  // distance-weighted mean
    double max_uncertainty = 0.0;
    double traj_len_m = 0.0;
    std::int64_t loop_closures = 0;
    std::int64_t replans = 0;
};

struct MissionTrace {
    std::vector<TraceRecord> records;
    MissionSummary summary;
    Route driven;
};

/// Drives one edge: uncertainty grows with drift, odometer advances, and a
/// first arrival is memorized for future loop closures.
inline void traverse_edge(const RoadGraph& g, RobotState& st, EdgeId eid,
                          const SimConfig& cfg) {
    const RoadEdge& e = g.edge(eid);
    if (!e.touches(st.current_node))
        throw InvalidRouteError("edge " + std::to_string(eid) + " is not incident to node " +
                                std::to_string(st.current_node));
    st.u += cfg.drift_rate * e.length_m;
    st.odometer += e.length_m;
    st.current_node = e.other(st.current_node);
    st.node_memory.try_emplace(st.current_node, st.u);  // first arrival only
}

/// Loop closure at the current node: uncertainty falls to the remembered
/// arrival value plus the residual (never rises).
inline void loop_closure(RobotState& st, NodeId node, const SimConfig& cfg) {
    if (node != st.current_node)
        throw Error("loop closure node " + std::to_string(node) + " is not the current node");
    auto it = st.node_memory.find(node);
    if (it == st.node_memory.end())
        throw Error("loop closure at node " + std::to_string(node) + " which was never visited");
    st.u = std::min(st.u, it->second + cfg.loop_closure_residual);
}

namespace detail {

inline MissionSummary summarize(const std::vector<TraceRecord>& records) {
    MissionSummary s;
    double area = 0.0;
    double prev_odo = 0.0, prev_u = 0.0;
    for (const auto& r : records) {
        area += (r.odometer_m - prev_odo) * 0.5 * (prev_u + r.uncertainty);
        prev_odo = r.odometer_m;
        prev_u = r.uncertainty;
        s.max_uncertainty = std::max(s.max_uncertainty, r.uncertainty);
        if (r.event == SimEvent::loop_closure) ++s.loop_closures;
        if (r.event == SimEvent::replan) ++s.replans;
        s.traj_len_m = r.odometer_m;
    }
    s.avg_uncertainty = s.traj_len_m > 0.0 ? area / s.traj_len_m : 0.0;
    return s;
}

}  // namespace detail

/// Follows the route edge by edge, firing loop closures on node revisits.
/// When enabled, exceeding the uncertainty threshold triggers replanning:
/// the traversed prefix becomes R1, the remaining plan is discarded, and
/// the mission continues on the replanned R2+R3. Deterministic throughout.
inline MissionTrace run_mission(const RoadGraph& g, const Route& global_route,
                                const SimConfig& cfg) {
    cfg.validate();
    validate_route(g, global_route);
    if (global_route.nodes.front() != g.start_node())
        throw InvalidRouteError("mission route must begin at the start node");
    {
        EdgeCounts cover = update_edge_counts(g, global_route);
        for (const auto& [eid, c] : cover)
            if (c < 1)
                throw CoverageError("mission route does not cover edge " + std::to_string(eid));
    }

    MissionTrace trace;
    RobotState st;
    st.current_node = g.start_node();
    st.node_memory[st.current_node] = 0.0;
    trace.driven.nodes.push_back(st.current_node);

    std::deque<std::pair<EdgeId, NodeId>> plan;  // (edge, node reached)
    for (std::size_t i = 0; i < global_route.edges.size(); ++i)
        plan.emplace_back(global_route.edges[i], global_route.nodes[i + 1]);

    double last_replan_odo = -std::numeric_limits<double>::infinity();
    while (!plan.empty()) {
        const auto [eid, arrive] = plan.front();
        plan.pop_front();
        const bool revisit = st.node_memory.count(arrive) > 0;
        traverse_edge(g, st, eid, cfg);
        if (st.current_node != arrive)
            throw InvalidRouteError("plan edge does not reach its announced node");
        trace.driven.nodes.push_back(st.current_node);
        trace.driven.edges.push_back(eid);
        trace.records.push_back({st.odometer, st.u, SimEvent::move, st.current_node});

        if (revisit) {
            loop_closure(st, st.current_node, cfg);
            trace.records.push_back({st.odometer, st.u, SimEvent::loop_closure, st.current_node});
        }

        if (cfg.alc_enabled && !plan.empty() && st.u > cfg.trigger_threshold) {
            if (st.odometer - last_replan_odo < cfg.min_replan_spacing_m) {
                std::clog << "warning: replan suppressed at odometer " << st.odometer
                          << " m, too close to the previous replan\n";
                continue;
            }
            trace.records.push_back({st.odometer, st.u, SimEvent::alc_trigger, st.current_node});
            const ReplanState rs = make_replan_state(g, trace.driven);
            ReplanResult rr;
            try {
                rr = replan(rs, cfg.weights, cfg.beta);
            } catch (const Error& e) {
                throw Error("replan failed at node " + std::to_string(st.current_node) +
                            ", odometer " + std::to_string(st.odometer) + " m: " + e.what());
            }
            trace.records.push_back({st.odometer, st.u, SimEvent::replan, st.current_node});
            const Route fresh = concat_routes(rr.to_loop, rr.completion);
            plan.clear();
            for (std::size_t i = 0; i < fresh.edges.size(); ++i)
                plan.emplace_back(fresh.edges[i], fresh.nodes[i + 1]);
            last_replan_odo = st.odometer;
        }
    }

    if (st.current_node != g.start_node())
        throw Error("mission ended at node " + std::to_string(st.current_node) +
                    " instead of the start node");
    const EdgeCounts final_cover = update_edge_counts(g, trace.driven);
    for (const auto& [eid, c] : final_cover)
        if (c < 1) throw Error("mission ended without covering edge " + std::to_string(eid));

    trace.summary = detail::summarize(trace.records);
    return trace;
}

struct MissionComparison {
    MissionTrace with_alc;
    MissionTrace without_alc;
    double traj_len_ratio = 0.0;  // with / without
};

/// Runs the same mission with and without active loop closure.
inline MissionComparison compare_missions(const RoadGraph& g, const Route& route,
                                          const SimConfig& cfg) {
    SimConfig on = cfg;
    on.alc_enabled = true;
    SimConfig off = cfg;
    off.alc_enabled = false;
    MissionComparison cmp;
    cmp.with_alc = run_mission(g, route, on);
    cmp.without_alc = run_mission(g, route, off);
    cmp.traj_len_ratio = cmp.with_alc.summary.traj_len_m / cmp.without_alc.summary.traj_len_m;
    return cmp;
}

}  // namespace alcplan
