#pragma once

#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alcplan/errors.hpp"
#include "alcplan/geo.hpp"
#include "alcplan/road_graph.hpp"

namespace alcplan {

struct OsmNode {
    NodeId id = 0;
    GeoPoint position;
    bool junction_tag = false;  // explicitly mapped intersection
};

struct OsmWay {
    std::int64_t id = 0;
    std::vector<NodeId> nodes;  // ordered refs
    std::string highway;
};

struct OsmData {
    std::map<NodeId, OsmNode> nodes;  // only nodes referenced by kept ways
    std::vector<OsmWay> ways;
};

struct OsmParseOptions {
    /// Accepted highway classes; empty accepts every highway value.
    std::set<std::string> highway_filter;
};

/// Total consecutive-pair count over all kept ways.
inline std::size_t way_segment_count(const OsmData& d) {
    std::size_t n = 0;
    for (const auto& w : d.ways) n += w.nodes.empty() ? 0 : w.nodes.size() - 1;
    return n;
}

/// Reads the OSM XML subset: `node` elements with id/lat/lon and `way`
/// elements with ordered `nd ref` children and a `highway` tag. Ways
/// without a highway tag (or outside the filter) are ignored, and only
/// nodes referenced by a kept way are returned.
inline OsmData parse_osm(const std::string& xml_text, const OsmParseOptions& opts = {}) {
    namespace pt = boost::property_tree;
    pt::ptree doc;
    try {
        std::istringstream in(xml_text);
        pt::read_xml(in, doc);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError("OSM XML parse failed at line " + std::to_string(e.line()) + ": " +
                         e.message());
    }

    const auto osm = doc.get_child_optional("osm");
    if (!osm) throw ParseError("document has no <osm> root element");

    std::map<NodeId, OsmNode> all_nodes;
    std::vector<OsmWay> ways;
    for (const auto& [name, child] : *osm) {
        if (name == "node") {
            OsmNode n;
            try {
                n.id = child.get<NodeId>("<xmlattr>.id");
                n.position.lat = child.get<double>("<xmlattr>.lat");
                n.position.lon = child.get<double>("<xmlattr>.lon");
            } catch (const pt::ptree_error& e) {
                throw ParseError(std::string("bad <node> element: ") + e.what());
            }
            validate_geo(n.position);
            for (const auto& [cname, cchild] : child) {
                if (cname == "tag" &&
                    cchild.get<std::string>("<xmlattr>.k", "") == "junction")
                    n.junction_tag = true;
            }
            all_nodes[n.id] = n;
        } else if (name == "way") {
            OsmWay w;
            w.id = child.get<std::int64_t>("<xmlattr>.id", 0);
            for (const auto& [cname, cchild] : child) {
                if (cname == "nd") {
                    try {
                        w.nodes.push_back(cchild.get<NodeId>("<xmlattr>.ref"));
                    } catch (const pt::ptree_error& e) {
                        throw ParseError(std::string("bad <nd> element: ") + e.what());
                    }
                } else if (cname == "tag") {
                    if (cchild.get<std::string>("<xmlattr>.k", "") == "highway")
                        w.highway = cchild.get<std::string>("<xmlattr>.v", "");
                }
            }
            if (w.highway.empty()) continue;
            if (!opts.highway_filter.empty() && !opts.highway_filter.count(w.highway)) continue;
            ways.push_back(std::move(w));
        }
    }

    OsmData data;
    for (const auto& w : ways) {
        for (NodeId ref : w.nodes) {
            auto it = all_nodes.find(ref);
            if (it == all_nodes.end())
                throw DanglingReferenceError("way " + std::to_string(w.id) +
                                             " references missing node " + std::to_string(ref));
            data.nodes[ref] = it->second;
        }
    }
    data.ways = std::move(ways);
    return data;
}

/// Collapses the way geometry into the topological road graph.
///
/// A node survives contraction when it is a way endpoint, has segment
/// degree other than 2, carries a junction tag, or is the requested start
/// node; interior shape nodes are merged into single edges whose length is
/// the summed haversine length of the chain. A chain that closes on its own
/// origin is split at its smallest interior node into two parallel edges
/// (plain self-loop segments are dropped with a warning). Edge ids are
/// assigned after sorting by endpoints, so they are stable for a given
/// input.
inline RoadGraph build_road_graph(const OsmData& data, NodeId start) {
    struct Segment {
        NodeId a, b;
        double length;
    };
    std::vector<Segment> segments;
    std::map<NodeId, std::vector<std::size_t>> seg_adj;
    std::set<NodeId> way_endpoints;
    for (const auto& w : data.ways) {
        if (w.nodes.empty()) continue;
        way_endpoints.insert(w.nodes.front());
        way_endpoints.insert(w.nodes.back());
        for (std::size_t i = 0; i + 1 < w.nodes.size(); ++i) {
            const NodeId u = w.nodes[i], v = w.nodes[i + 1];
            if (u == v) {
                std::clog << "warning: dropping zero-length self segment at node " << u
                          << " (way " << w.id << ")\n";
                continue;
            }
            const double len =
                haversine_distance(data.nodes.at(u).position, data.nodes.at(v).position);
            if (!(len > 0.0))
                throw ParseError("segment " + std::to_string(u) + "-" + std::to_string(v) +
                                 " has zero length (coincident coordinates)");
            seg_adj[u].push_back(segments.size());
            seg_adj[v].push_back(segments.size());
            segments.push_back({u, v, len});
        }
    }
    if (segments.empty()) throw ConnectivityError("no road segments in input");

    std::set<NodeId> kept;
    for (const auto& [id, adj] : seg_adj) {
        if (adj.size() != 2 || way_endpoints.count(id) || data.nodes.at(id).junction_tag ||
            id == start)
            kept.insert(id);
    }
    if (kept.empty()) kept.insert(seg_adj.begin()->first);  // unanchored ring, pick one

    struct Chain {
        NodeId a, b;
        double length;
        std::size_t order;
    };
    std::vector<Chain> chains;
    std::vector<char> used(segments.size(), 0);
    const auto other = [&](std::size_t s, NodeId v) {
        return segments[s].a == v ? segments[s].b : segments[s].a;
    };
    for (NodeId origin : kept) {
        for (std::size_t first : seg_adj.at(origin)) {
            if (used[first]) continue;
            used[first] = 1;
            std::vector<NodeId> interior;
            std::vector<double> seg_lens{segments[first].length};
            NodeId cur = other(first, origin);
            while (!kept.count(cur)) {
                interior.push_back(cur);
                std::size_t next = segments.size();
                for (std::size_t s : seg_adj[cur])
                    if (!used[s]) {
                        next = s;
                        break;
                    }
                if (next == segments.size())
                    throw ParseError("broken chain at node " + std::to_string(cur));
                used[next] = 1;
                seg_lens.push_back(segments[next].length);
                cur = other(next, cur);
            }
            double total = 0.0;
            for (double l : seg_lens) total += l;
            if (cur != origin) {
                chains.push_back({origin, cur, total, chains.size()});
            } else if (interior.empty()) {
                std::clog << "warning: dropping self-loop edge at node " << origin << "\n";
            } else {
                // ring back to the origin: split at the smallest interior
                // node so the loop survives as two parallel edges
                const auto mit = std::min_element(interior.begin(), interior.end());
                const std::size_t split =
                    static_cast<std::size_t>(mit - interior.begin());
                double first_part = 0.0;
                for (std::size_t i = 0; i <= split; ++i) first_part += seg_lens[i];
                chains.push_back({origin, *mit, first_part, chains.size()});
                chains.push_back({*mit, origin, total - first_part, chains.size()});
                kept.insert(*mit);
            }
        }
    }

    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s])
            throw ParseError("internal: segment " + std::to_string(segments[s].a) + "-" +
                             std::to_string(segments[s].b) + " unreachable from any kept node");

    std::sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
        const auto kx = std::make_tuple(std::min(x.a, x.b), std::max(x.a, x.b), x.length, x.order);
        const auto ky = std::make_tuple(std::min(y.a, y.b), std::max(y.a, y.b), y.length, y.order);
        return kx < ky;
    });

    std::set<NodeId> touched;
    std::vector<RoadEdge> edges;
    for (std::size_t i = 0; i < chains.size(); ++i) {
        edges.push_back({static_cast<EdgeId>(i), chains[i].a, chains[i].b, chains[i].length});
        touched.insert(chains[i].a);
        touched.insert(chains[i].b);
    }

    std::vector<GeoPoint> positions;
    for (NodeId id : touched) positions.push_back(data.nodes.at(id).position);
    const LocalFrame frame = LocalFrame::centered_on(positions);
    std::vector<RoadNode> nodes;
    for (NodeId id : touched) {
        const GeoPoint& p = data.nodes.at(id).position;
        nodes.push_back({id, p, frame.to_local(p)});
    }
    return RoadGraph(std::move(nodes), std::move(edges), start);
}

/// Convenience: parse then build.
inline RoadGraph load_osm_graph(const std::string& xml_text, NodeId start,
                                const OsmParseOptions& opts = {}) {
    return build_road_graph(parse_osm(xml_text, opts), start);
}

}  // namespace alcplan
