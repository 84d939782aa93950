#pragma once

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "alcplan/errors.hpp"
#include "alcplan/replan.hpp"
#include "alcplan/road_graph.hpp"
#include "alcplan/route.hpp"
#include "alcplan/sim.hpp"

namespace alcplan {

using nlohmann::json;

/// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

// ---- road graph ----------------------------------------------------------

inline json graph_to_json(const RoadGraph& g) {
    json nodes = json::array();
    for (const auto& n : g.nodes())
        nodes.push_back({{"id", n.id}, {"lat", n.position.lat}, {"lon", n.position.lon}});
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"id", e.id}, {"a", e.a}, {"b", e.b}, {"length_m", e.length_m}});
    return {{"start_node", g.start_node()}, {"nodes", nodes}, {"edges", edges}};
}

inline RoadGraph graph_from_json(const json& j) {
    try {
        std::vector<RoadNode> nodes;
        std::vector<GeoPoint> positions;
        for (const auto& n : j.at("nodes")) {
            RoadNode rn;
            rn.id = n.at("id").get<NodeId>();
            rn.position.lat = n.at("lat").get<double>();
            rn.position.lon = n.at("lon").get<double>();
            validate_geo(rn.position);
            positions.push_back(rn.position);
            nodes.push_back(rn);
        }
        const LocalFrame frame = LocalFrame::centered_on(positions);
        for (auto& n : nodes) n.local = frame.to_local(n.position);
        std::vector<RoadEdge> edges;
        for (const auto& e : j.at("edges")) {
            RoadEdge re;
            re.id = e.at("id").get<EdgeId>();
            re.a = e.at("a").get<NodeId>();
            re.b = e.at("b").get<NodeId>();
            re.length_m = e.at("length_m").get<double>();
            edges.push_back(re);
        }
        return RoadGraph(std::move(nodes), std::move(edges),
                         j.at("start_node").get<NodeId>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad graph JSON: ") + e.what());
    }
}

inline RoadGraph load_graph_json(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError("graph JSON parse failed: " + std::string(e.what()));
    }
    return graph_from_json(j);
}

// ---- routes --------------------------------------------------------------

inline json route_to_json(const RoadGraph& g, const Route& r) {
    return {{"nodes", r.nodes}, {"edges", r.edges}, {"distance_m", route_distance(g, r)}};
}

/// Reads a route from {"nodes": [...]} (edges optional; recomputed when
/// absent using the shortest edge per hop).
inline Route route_from_json(const RoadGraph& g, const json& j) {
    try {
        std::vector<NodeId> nodes = j.at("nodes").get<std::vector<NodeId>>();
        if (j.contains("edges")) {
            Route r;
            r.nodes = std::move(nodes);
            r.edges = j.at("edges").get<std::vector<EdgeId>>();
            validate_route(g, r);
            return r;
        }
        return route_from_nodes(g, std::move(nodes));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad route JSON: ") + e.what());
    }
}

inline json route_geojson(const RoadGraph& g, const Route& r, double score) {
    json coords = json::array();
    for (NodeId n : r.nodes) {
        const GeoPoint& p = g.node(n).position;
        coords.push_back({p.lon, p.lat});
    }
    return {{"type", "FeatureCollection"},
            {"features",
             {{{"type", "Feature"},
               {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
               {"properties",
                {{"distance_m", route_distance(g, r)}, {"score", score}}}}}}};
}

// ---- replanning ----------------------------------------------------------

inline json replan_to_json(const RoadGraph& g, const ReplanResult& r) {
    json diag = json::array();
    for (const auto& d : r.diagnostics)
        diag.push_back({{"node", d.node},
                        {"objective", d.objective},
                        {"r2_length_m", d.r2_length},
                        {"r3_length_m", d.r3_length}});
    return {{"loop_node", r.loop_node},
            {"objective", r.objective},
            {"r2", route_to_json(g, r.to_loop)},
            {"r3", route_to_json(g, r.completion)},
            {"candidates", diag}};
}

// ---- simulation traces ----------------------------------------------------

inline std::string trace_to_csv(const MissionTrace& t) {
    std::string out = "odometer_m,uncertainty,event\n";
    for (const auto& r : t.records) {
        out += format_double(r.odometer_m);
        out += ',';
        out += format_double(r.uncertainty);
        out += ',';
        out += to_string(r.event);
        out += '\n';
    }
    return out;
}

inline json summary_to_json(const MissionSummary& s) {
    return {{"avg", s.avg_uncertainty},
            {"max", s.max_uncertainty},
            {"traj_len_m", s.traj_len_m},
            {"loop_closures", s.loop_closures},
            {"replans", s.replans}};
}

inline json trace_to_json(const MissionTrace& t) {
    json records = json::array();
    for (const auto& r : t.records)
        records.push_back({{"odometer_m", r.odometer_m},
                           {"uncertainty", r.uncertainty},
                           {"event", to_string(r.event)},
                           {"node", r.node}});
    return {{"records", records}, {"summary", summary_to_json(t.summary)}};
}

}  // namespace alcplan
