#pragma once

#include <cstdint>
#include <set>
#include <sstream>
#include <string>

#include "alcplan/edge_weights.hpp"
#include "alcplan/errors.hpp"
#include "alcplan/sim.hpp"

namespace alcplan {

/// Every tunable of the pipeline in one flat bag. Defaults match the
/// documented module defaults; a config file or CLI flags override them.
struct RunConfig {
    double alpha = 1.0;
    double base_unvisited_scale = 1.0;
    std::string visited_info = "auto";  // "auto" = 1/length^2, else a number
    double beta = 0.5;
    double k_d = 1.0;
    double k_alpha = 1.0;
    double drift_rate = 0.001;
    double loop_closure_residual = 0.02;
    double trigger_threshold = 0.3;
    double min_replan_spacing_m = 10.0;
    std::int64_t attempts = 500;
    std::uint64_t seed = 0;
    int matching_exact_limit = 14;
    std::int64_t convergence_window = 0;  // 0 auto, negative disables
    std::string highway_filter;           // comma-separated classes, empty = all

    EdgeWeightParams weight_params() const {
        EdgeWeightParams p;
        p.alpha = alpha;
        p.unvisited_scale = base_unvisited_scale;
        if (visited_info != "auto") {
            try {
                std::size_t pos = 0;
                const double v = std::stod(visited_info, &pos);
                if (pos != visited_info.size()) throw std::invalid_argument(visited_info);
                p.visited_info = v;
            } catch (const std::exception&) {
                throw ConfigError("visited_info must be 'auto' or a number, got '" +
                                  visited_info + "'");
            }
        }
        p.validate();
        return p;
    }

    SimConfig sim_config() const {
        SimConfig c;
        c.drift_rate = drift_rate;
        c.loop_closure_residual = loop_closure_residual;
        c.trigger_threshold = trigger_threshold;
        c.min_replan_spacing_m = min_replan_spacing_m;
        c.beta = beta;
        c.weights = weight_params();
        c.validate();
        return c;
    }

    std::set<std::string> highway_classes() const {
        std::set<std::string> out;
        std::istringstream ss(highway_filter);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            if (b == std::string::npos) continue;
            const auto e = item.find_last_not_of(" \t");
            out.insert(item.substr(b, e - b + 1));
        }
        return out;
    }

    void validate() const {
        weight_params();
        if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("beta must be in (0, 1]");
        if (k_d < 0.0 || k_alpha < 0.0 || k_d + k_alpha <= 0.0)
            throw ConfigError("k_d and k_alpha must be non-negative, not both zero");
        if (attempts < 1) throw ConfigError("attempts must be >= 1");
        if (matching_exact_limit < 0) throw ConfigError("matching_exact_limit must be >= 0");
        sim_config();
    }
};

/// Parses `key = value` lines; `#` starts a comment; unknown keys are
/// rejected so typos fail loudly instead of silently using defaults.
inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");

        const auto as_double = [&](const std::string& v) {
            try {
                std::size_t pos = 0;
                const double d = std::stod(v, &pos);
                if (pos != v.size()) throw std::invalid_argument(v);
                return d;
            } catch (const std::exception&) {
                throw ConfigError("config line " + std::to_string(lineno) + ": bad number '" + v +
                                  "'");
            }
        };
        const auto as_int = [&](const std::string& v) {
            try {
                std::size_t pos = 0;
                const std::int64_t i = std::stoll(v, &pos);
                if (pos != v.size()) throw std::invalid_argument(v);
                return i;
            } catch (const std::exception&) {
                throw ConfigError("config line " + std::to_string(lineno) + ": bad integer '" +
                                  v + "'");
            }
        };

        if (key == "alpha") cfg.alpha = as_double(value);
        else if (key == "base_unvisited_scale") cfg.base_unvisited_scale = as_double(value);
        else if (key == "visited_info") cfg.visited_info = value;
        else if (key == "beta") cfg.beta = as_double(value);
        else if (key == "k_d") cfg.k_d = as_double(value);
        else if (key == "k_alpha") cfg.k_alpha = as_double(value);
        else if (key == "drift_rate") cfg.drift_rate = as_double(value);
        else if (key == "loop_closure_residual") cfg.loop_closure_residual = as_double(value);
        else if (key == "trigger_threshold") cfg.trigger_threshold = as_double(value);
        else if (key == "min_replan_spacing_m") cfg.min_replan_spacing_m = as_double(value);
        else if (key == "attempts") cfg.attempts = as_int(value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_int(value));
        else if (key == "matching_exact_limit")
            cfg.matching_exact_limit = static_cast<int>(as_int(value));
        else if (key == "convergence_window") cfg.convergence_window = as_int(value);
        else if (key == "highway_filter") cfg.highway_filter = value;
        else
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
    }
    cfg.validate();
    return cfg;
}

}  // namespace alcplan
