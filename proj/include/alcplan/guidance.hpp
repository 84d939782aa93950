#pragma once

#include <cmath>
#include <vector>

#include "alcplan/errors.hpp"
#include "alcplan/geo.hpp"

namespace alcplan {

/// Thrown when no exit can be selected; callers fall back to the raw
/// reference point.
class NoWaypointError : public Error {
public:
    using Error::Error;
};

/// Candidate exit of an intersection, pre-scored geometry.
struct IntersectionExit {
    LocalXY position;
    double d = 0.0;      // meters to the last reference point
    double alpha = 0.0;  // radians in [0, pi] between robot->exit and robot->ref
};

struct GuidanceWeights {
    double k_d = 1.0;
    double k_alpha = 1.0;

    void validate() const {
        if (k_d < 0.0 || k_alpha < 0.0 || k_d + k_alpha <= 0.0)
            throw ConfigError("guidance weights must be non-negative and not both zero");
    }
};

/// Exit preference: near the reference point and aligned with it.
/// Strictly decreasing in both d and alpha.
inline double waypoint_score(const IntersectionExit& e, const GuidanceWeights& w) {
    return w.k_d / (1.0 + e.d) + w.k_alpha / (1.0 + e.alpha);
}

/// (d, alpha) of an exit as seen from the robot: d is the exit's distance
/// to the reference point, alpha the angle at the robot between exit and
/// reference directions.
inline std::pair<double, double> exit_geometry(const LocalXY& robot, const LocalXY& exit,
                                               const LocalXY& osm_ref) {
    const double ex = exit.x - robot.x, ey = exit.y - robot.y;
    const double rx = osm_ref.x - robot.x, ry = osm_ref.y - robot.y;
    const double en = std::hypot(ex, ey);
    const double rn = std::hypot(rx, ry);
    if (en == 0.0 || rn == 0.0)
        throw Error("degenerate geometry: robot coincides with exit or reference point");
    const double d = std::hypot(exit.x - osm_ref.x, exit.y - osm_ref.y);
    double c = (ex * rx + ey * ry) / (en * rn);
    c = std::clamp(c, -1.0, 1.0);
    return {d, std::acos(c)};
}

/// Highest-scoring exit; ties go to smaller d, then smaller alpha.
inline IntersectionExit select_waypoint(const std::vector<IntersectionExit>& exits,
                                        const GuidanceWeights& w) {
    w.validate();
    if (exits.empty()) throw NoWaypointError("no intersection exits to choose from");
    std::size_t best = 0;
    double best_score = waypoint_score(exits[0], w);
    for (std::size_t i = 1; i < exits.size(); ++i) {
        const double s = waypoint_score(exits[i], w);
        bool better = s > best_score;
        if (s == best_score) {
            if (exits[i].d < exits[best].d) better = true;
            else if (exits[i].d == exits[best].d && exits[i].alpha < exits[best].alpha)
                better = true;
        }
        if (better) {
            best = i;
            best_score = s;
        }
    }
    return exits[best];
}

}  // namespace alcplan
