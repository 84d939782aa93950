// Command-line front end: plan / replan / simulate / graph-info.
//
// Exit codes: 0 success, 2 input parse error, 3 disconnected graph,
// 4 configuration error, 5 invalid traveled route.

#include <alcplan/alcplan.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace alcplan;
namespace fs = std::filesystem;

constexpr int kExitParse = 2;
constexpr int kExitDisconnected = 3;
constexpr int kExitConfig = 4;
constexpr int kExitRoute = 5;

struct CommonArgs {
    std::string map_path;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> attempts;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::int64_t> start;
};

RunConfig load_config(const CommonArgs& args) {
    RunConfig cfg;
    if (!args.config_path.empty()) cfg = parse_config(read_text_file(args.config_path));
    if (args.seed) cfg.seed = *args.seed;
    if (args.attempts) cfg.attempts = *args.attempts;
    if (args.alpha) cfg.alpha = *args.alpha;
    if (args.beta) cfg.beta = *args.beta;
    cfg.validate();
    return cfg;
}

bool looks_like_osm(const std::string& path) {
    const auto ext = fs::path(path).extension().string();
    return ext == ".osm" || ext == ".xml";
}

RoadGraph load_map(const std::string& path, const RunConfig& cfg,
                   std::optional<std::int64_t> start) {
    if (looks_like_osm(path)) {
        OsmParseOptions opts;
        opts.highway_filter = cfg.highway_classes();
        OsmData data = parse_osm(read_text_file(path), opts);
        NodeId start_node = 0;
        if (start) {
            start_node = *start;
        } else {
            if (data.nodes.empty()) throw ParseError("OSM data has no referenced nodes");
            start_node = data.nodes.begin()->first;
        }
        return build_road_graph(data, start_node);
    }
    RoadGraph g = load_graph_json(path);
    if (start && *start != g.start_node()) {
        throw ConfigError("--start disagrees with start_node stored in " + path +
                          "; edit the graph file instead");
    }
    return g;
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
    write_text_file(path.string(), j.dump(2) + "\n");
}

std::string format_seconds(double s) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", s);
    return buf;
}

EnumerationOptions enum_options(const RunConfig& cfg) {
    EnumerationOptions opts;
    opts.convergence_window = cfg.convergence_window;
    opts.matching_exact_limit = cfg.matching_exact_limit;
    return opts;
}

nlohmann::json parse_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("JSON parse failed for " + path + ": " + e.what());
    }
}

int cmd_plan(const CommonArgs& args, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig cfg = load_config(args);
    const RoadGraph g = load_map(args.map_path, cfg, args.start);

    const GlobalPlan plan =
        plan_global_route(g, cfg.attempts, cfg.seed, cfg.weight_params(), enum_options(cfg));
    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    write_json_file(out / "graph.json", graph_to_json(g));
    write_json_file(out / "route.json", route_to_json(g, plan.route));
    write_text_file((out / "route.geojson").string(),
                    route_geojson(g, plan.route, plan.score).dump(2) + "\n");

    nlohmann::json report;
    report["nodes"] = g.nodes().size();
    report["edges"] = g.edges().size();
    report["attempts"] = plan.attempts_made;
    report["solutions"] = plan.solutions;
    report["max_score"] = plan.max_score;
    report["min_score"] = plan.min_score;
    report["selected_score"] = plan.score;
    report["distance_m"] = route_distance(g, plan.route);
    report["matching_length_m"] = plan.matching_length;
    write_json_file(out / "report.json", report);

    std::printf("%-8s %-9s %-11s %-12s %-12s %s\n", "#Nodes", "Attempts", "#Solutions",
                "MaxScore", "MinScore", "Time[s]");
    std::printf("%-8zu %-9lld %-11zu %-12.6f %-12.6f %s\n", g.nodes().size(),
                static_cast<long long>(plan.attempts_made), plan.solutions, plan.max_score,
                plan.min_score, format_seconds(wall_s).c_str());
    return 0;
}

int cmd_replan(const CommonArgs& args, const std::string& route_path,
               const std::string& out_path) {
    const RunConfig cfg = load_config(args);
    const RoadGraph g = load_map(args.map_path, cfg, args.start);
    const Route r1 = route_from_json(g, parse_json_file(route_path));
    if (r1.nodes.front() != g.start_node()) {
        throw InvalidRouteError("traveled route must begin at the start node");
    }
    const ReplanState state = make_replan_state(g, r1);
    const ReplanResult result = replan(state, cfg.weight_params(), cfg.beta);
    const nlohmann::json j = replan_to_json(g, result);
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json_file(out_path, j);
    }
    return 0;
}

int cmd_simulate(const CommonArgs& args, const std::string& route_path,
                 const std::string& out_dir) {
    const RunConfig cfg = load_config(args);
    const RoadGraph g = load_map(args.map_path, cfg, args.start);

    Route route;
    if (route_path.empty()) {
        route = plan_global_route(g, cfg.attempts, cfg.seed, cfg.weight_params(),
                                  enum_options(cfg))
                    .route;
    } else {
        route = route_from_json(g, parse_json_file(route_path));
    }

    const MissionComparison cmp = compare_missions(g, route, cfg.sim_config());

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    write_text_file((out / "trace_alc.csv").string(), trace_to_csv(cmp.with_alc));
    write_json_file(out / "trace_alc.json", trace_to_json(cmp.with_alc));
    write_text_file((out / "trace_noalc.csv").string(), trace_to_csv(cmp.without_alc));
    write_json_file(out / "trace_noalc.json", trace_to_json(cmp.without_alc));

    nlohmann::json summary;
    summary["alc"] = summary_to_json(cmp.with_alc.summary);
    summary["no_alc"] = summary_to_json(cmp.without_alc.summary);
    summary["traj_len_ratio"] = cmp.traj_len_ratio;
    write_json_file(out / "summary.json", summary);

    std::printf("avg_u %s vs %s   max_u %s vs %s   length ratio %s\n",
                format_double(cmp.with_alc.summary.avg_uncertainty).c_str(),
                format_double(cmp.without_alc.summary.avg_uncertainty).c_str(),
                format_double(cmp.with_alc.summary.max_uncertainty).c_str(),
                format_double(cmp.without_alc.summary.max_uncertainty).c_str(),
                format_double(cmp.traj_len_ratio).c_str());
    return 0;
}

int cmd_graph_info(const CommonArgs& args, const std::string& out_path) {
    const RunConfig cfg = load_config(args);
    const RoadGraph g = load_map(args.map_path, cfg, args.start);

    nlohmann::json info;
    info["nodes"] = g.nodes().size();
    info["edges"] = g.edges().size();
    info["start_node"] = g.start_node();
    info["total_length_m"] = g.total_length();
    info["odd_degree_nodes"] = odd_degree_nodes(g);
    std::cout << info.dump(2) << '\n';

    if (!out_path.empty()) write_json_file(out_path, graph_to_json(g));
    return 0;
}

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--map", args.map_path, "road map: OSM XML (.osm/.xml) or graph JSON")
        ->required();
    sub->add_option("--config", args.config_path, "key = value config file");
    sub->add_option("--seed", args.seed, "RNG seed (overrides config; default 0)");
    sub->add_option("--attempts", args.attempts, "enumeration attempts (overrides config)");
    sub->add_option("--alpha", args.alpha, "noise level exponent (overrides config)");
    sub->add_option("--beta", args.beta, "unexplored-edge length discount (overrides config)");
    sub->add_option("--start", args.start,
                    "start node id (OSM input only; default: smallest node id)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"road-network inspection planner"};
    app.require_subcommand(1);

    CommonArgs plan_args;
    std::string plan_out = "out";
    auto* plan_cmd = app.add_subcommand("plan", "plan a covering route and write route files");
    add_common(plan_cmd, plan_args);
    plan_cmd->add_option("--out", plan_out, "output directory")->capture_default_str();

    CommonArgs replan_args;
    std::string replan_route;
    std::string replan_out;
    auto* replan_cmd =
        app.add_subcommand("replan", "choose a loop-closure detour for a traveled prefix");
    add_common(replan_cmd, replan_args);
    replan_cmd->add_option("--route", replan_route, "traveled prefix route JSON")->required();
    replan_cmd->add_option("--out", replan_out, "write result JSON here instead of stdout");

    CommonArgs sim_args;
    std::string sim_route;
    std::string sim_out = "out";
    auto* sim_cmd =
        app.add_subcommand("simulate", "run paired missions (with/without replanning)");
    add_common(sim_cmd, sim_args);
    sim_cmd->add_option("--route", sim_route, "route JSON (omitted: plan internally)");
    sim_cmd->add_option("--out", sim_out, "output directory")->capture_default_str();

    CommonArgs info_args;
    std::string info_out;
    auto* info_cmd = app.add_subcommand("graph-info", "print a summary of the extracted graph");
    add_common(info_cmd, info_args);
    info_cmd->add_option("--out", info_out, "also write canonical graph JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*plan_cmd) return cmd_plan(plan_args, plan_out);
        if (*replan_cmd) return cmd_replan(replan_args, replan_route, replan_out);
        if (*sim_cmd) return cmd_simulate(sim_args, sim_route, sim_out);
        if (*info_cmd) return cmd_graph_info(info_args, info_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConnectivityError& e) {
        std::cerr << "graph error: " << e.what() << '\n';
        return kExitDisconnected;
    } catch (const InvalidRouteError& e) {
        std::cerr << "route error: " << e.what() << '\n';
        return kExitRoute;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
