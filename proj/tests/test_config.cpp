#include <alcplan/config.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <string>

using namespace alcplan;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;
using Catch::Matchers::WithinAbs;

TEST_CASE("default configuration is self-consistent") {
    const RunConfig cfg;
    REQUIRE_NOTHROW(cfg.validate());

    CHECK(cfg.alpha == 1.0);
    CHECK(cfg.base_unvisited_scale == 1.0);
    CHECK(cfg.visited_info == "auto");
    CHECK(cfg.beta == 0.5);
    CHECK(cfg.k_d == 1.0);
    CHECK(cfg.k_alpha == 1.0);
    CHECK(cfg.drift_rate == 0.001);
    CHECK(cfg.loop_closure_residual == 0.02);
    CHECK(cfg.trigger_threshold == 0.3);
    CHECK(cfg.min_replan_spacing_m == 10.0);
    CHECK(cfg.attempts == 500);
    CHECK(cfg.seed == 0);
    CHECK(cfg.matching_exact_limit == 14);
    CHECK(cfg.convergence_window == 0);
    CHECK(cfg.highway_filter.empty());

    const EdgeWeightParams p = cfg.weight_params();
    CHECK(p.alpha == 1.0);
    CHECK(p.unvisited_scale == 1.0);
    CHECK_FALSE(p.visited_info.has_value());

    CHECK(cfg.highway_classes().empty());
}

TEST_CASE("a full config file lands in every field") {
    const std::string text =
        "# planner\n"
        "alpha = 2.0\n"
        "base_unvisited_scale = 0.5   # inline comment\n"
        "visited_info = 0.25\n"
        "beta = 0.8\n"
        "\n"
        "k_d = 2.0\r\n"
        "k_alpha = 0.5\n"
        "drift_rate = 0.002\n"
        "loop_closure_residual = 0.01\n"
        "trigger_threshold = 0.2\n"
        "min_replan_spacing_m = 25\n"
        "attempts = 42\n"
        "seed = 1234\n"
        "matching_exact_limit = 10\n"
        "convergence_window = -1\n"
        "highway_filter = primary, residential\n";
    const RunConfig cfg = parse_config(text);

    CHECK(cfg.alpha == 2.0);
    CHECK(cfg.base_unvisited_scale == 0.5);
    CHECK(cfg.visited_info == "0.25");
    CHECK(cfg.beta == 0.8);
    CHECK(cfg.k_d == 2.0);
    CHECK(cfg.k_alpha == 0.5);
    CHECK(cfg.drift_rate == 0.002);
    CHECK(cfg.loop_closure_residual == 0.01);
    CHECK(cfg.trigger_threshold == 0.2);
    CHECK(cfg.min_replan_spacing_m == 25.0);
    CHECK(cfg.attempts == 42);
    CHECK(cfg.seed == 1234);
    CHECK(cfg.matching_exact_limit == 10);
    CHECK(cfg.convergence_window == -1);
    CHECK(cfg.highway_classes() == std::set<std::string>{"primary", "residential"});

    const EdgeWeightParams p = cfg.weight_params();
    REQUIRE(p.visited_info.has_value());
    CHECK_THAT(*p.visited_info, WithinAbs(0.25, 1e-15));

    const SimConfig sc = cfg.sim_config();
    CHECK(sc.drift_rate == 0.002);
    CHECK(sc.loop_closure_residual == 0.01);
    CHECK(sc.trigger_threshold == 0.2);
    CHECK(sc.min_replan_spacing_m == 25.0);
    CHECK(sc.beta == 0.8);
    CHECK(sc.weights.alpha == 2.0);
}

TEST_CASE("comments, blank lines, and whitespace are tolerated") {
    const RunConfig cfg = parse_config(
        "   \n"
        "# full-line comment\n"
        "\t alpha \t=\t 3.0  # trailing\n"
        "   \t\n");
    CHECK(cfg.alpha == 3.0);
}

TEST_CASE("an empty config file means pure defaults") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.attempts == 500);
    CHECK(cfg.beta == 0.5);
}

TEST_CASE("parse failures carry the offending line number") {
    SECTION("unknown key") {
        REQUIRE_THROWS_MATCHES(
            parse_config("alpha = 1.0\nbeta = 0.5\nspead = 7\n"), ConfigError,
            MessageMatches(ContainsSubstring("line 3") &&
                           ContainsSubstring("unknown key 'spead'")));
    }
    SECTION("missing equals sign") {
        REQUIRE_THROWS_MATCHES(parse_config("alpha 1.0\n"), ConfigError,
                               MessageMatches(ContainsSubstring("line 1") &&
                                              ContainsSubstring("expected key = value")));
    }
    SECTION("empty value") {
        REQUIRE_THROWS_MATCHES(parse_config("alpha =\n"), ConfigError,
                               MessageMatches(ContainsSubstring("empty key or value")));
    }
    SECTION("bad number") {
        REQUIRE_THROWS_MATCHES(parse_config("beta = fast\n"), ConfigError,
                               MessageMatches(ContainsSubstring("bad number 'fast'")));
    }
    SECTION("trailing junk after a number") {
        REQUIRE_THROWS_AS(parse_config("alpha = 1.5x\n"), ConfigError);
    }
    SECTION("bad integer") {
        REQUIRE_THROWS_MATCHES(parse_config("attempts = 1.5\n"), ConfigError,
                               MessageMatches(ContainsSubstring("bad integer '1.5'")));
    }
}

TEST_CASE("visited_info accepts 'auto' or a positive number") {
    CHECK_FALSE(parse_config("visited_info = auto\n").weight_params().visited_info.has_value());
    CHECK(*parse_config("visited_info = 2\n").weight_params().visited_info == 2.0);
    REQUIRE_THROWS_MATCHES(parse_config("visited_info = maybe\n"), ConfigError,
                           MessageMatches(ContainsSubstring("'auto' or a number")));
    REQUIRE_THROWS_MATCHES(parse_config("visited_info = -1\n"), ConfigError,
                           MessageMatches(ContainsSubstring("positive")));
}

TEST_CASE("validation rejects out-of-range settings") {
    SECTION("beta bounds") {
        REQUIRE_THROWS_MATCHES(parse_config("beta = 0\n"), ConfigError,
                               MessageMatches(ContainsSubstring("beta must be in (0, 1]")));
        REQUIRE_THROWS_AS(parse_config("beta = 1.5\n"), ConfigError);
        CHECK(parse_config("beta = 1\n").beta == 1.0);
    }
    SECTION("trigger must clear the residual") {
        REQUIRE_THROWS_MATCHES(
            parse_config("trigger_threshold = 0.02\n"), ConfigError,
            MessageMatches(ContainsSubstring("trigger_threshold must exceed")));
    }
    SECTION("an infinite trigger threshold is a legal way to disable replanning") {
        const RunConfig cfg = parse_config("trigger_threshold = inf\n");
        CHECK(std::isinf(cfg.trigger_threshold));
        REQUIRE_NOTHROW(cfg.sim_config());
    }
    SECTION("guidance gains") {
        REQUIRE_THROWS_MATCHES(
            parse_config("k_d = 0\nk_alpha = 0\n"), ConfigError,
            MessageMatches(ContainsSubstring("not both zero")));
        REQUIRE_THROWS_AS(parse_config("k_d = -1\n"), ConfigError);
        CHECK_NOTHROW(parse_config("k_d = 0\nk_alpha = 2\n"));
    }
    SECTION("attempts and matching limit") {
        REQUIRE_THROWS_MATCHES(parse_config("attempts = 0\n"), ConfigError,
                               MessageMatches(ContainsSubstring("attempts must be >= 1")));
        REQUIRE_THROWS_AS(parse_config("matching_exact_limit = -1\n"), ConfigError);
        CHECK(parse_config("matching_exact_limit = 0\n").matching_exact_limit == 0);
    }
    SECTION("negative drift") {
        REQUIRE_THROWS_AS(parse_config("drift_rate = -0.001\n"), ConfigError);
    }
    SECTION("negative replan spacing") {
        REQUIRE_THROWS_MATCHES(parse_config("min_replan_spacing_m = -1\n"), ConfigError,
                               MessageMatches(ContainsSubstring("min_replan_spacing_m")));
        CHECK(parse_config("min_replan_spacing_m = 0\n").min_replan_spacing_m == 0.0);
    }
}

TEST_CASE("highway filter splits on commas and drops blanks") {
    CHECK(parse_config("highway_filter = residential\n").highway_classes() ==
          std::set<std::string>{"residential"});
    CHECK(parse_config("highway_filter = a,b,,c\n").highway_classes() ==
          std::set<std::string>{"a", "b", "c"});
    CHECK(parse_config("highway_filter = a , b\n").highway_classes() ==
          std::set<std::string>{"a", "b"});
}
