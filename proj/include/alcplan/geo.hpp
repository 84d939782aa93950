#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "alcplan/errors.hpp"

namespace alcplan {

/// Mean Earth radius in meters (IUGG R1).
inline constexpr double kEarthRadiusM = 6371008.8;

/// WGS84 position in decimal degrees.
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

/// Planar offset from a projection origin, meters (x east, y north).
struct LocalXY {
    double x = 0.0;
    double y = 0.0;
};

inline void validate_geo(const GeoPoint& p) {
    if (!(p.lat >= -90.0 && p.lat <= 90.0) || !(p.lon >= -180.0 && p.lon <= 180.0)) {
        throw ParseError("coordinate out of range: lat=" + std::to_string(p.lat) +
                         " lon=" + std::to_string(p.lon));
    }
}

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Great-circle distance in meters on the mean-radius sphere.
inline double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = deg2rad(a.lat);
    const double phi2 = deg2rad(b.lat);
    const double dphi = deg2rad(b.lat - a.lat);
    const double dlam = deg2rad(b.lon - a.lon);
    const double s = std::sin(dphi / 2.0);
    const double t = std::sin(dlam / 2.0);
    const double h = s * s + std::cos(phi1) * std::cos(phi2) * t * t;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

/// Equirectangular projection about a fixed origin.
///
/// Adequate for the sub-kilometer extents of a street network; distances
/// used for planning always come from haversine_distance, the projection
/// only supplies local coordinates for geometry (exit headings, plots).
class LocalFrame {
public:
    explicit LocalFrame(const GeoPoint& origin)
        : origin_(origin), cos_lat0_(std::cos(deg2rad(origin.lat))) {}

    const GeoPoint& origin() const { return origin_; }

    LocalXY to_local(const GeoPoint& p) const {
        return {kEarthRadiusM * deg2rad(p.lon - origin_.lon) * cos_lat0_,
                kEarthRadiusM * deg2rad(p.lat - origin_.lat)};
    }

    /// Frame centered on the mean of the given points.
    static LocalFrame centered_on(const std::vector<GeoPoint>& pts) {
        if (pts.empty()) return LocalFrame(GeoPoint{0.0, 0.0});
        double lat = 0.0, lon = 0.0;
        for (const auto& p : pts) {
            lat += p.lat;
            lon += p.lon;
        }
        const double n = static_cast<double>(pts.size());
        return LocalFrame(GeoPoint{lat / n, lon / n});
    }

private:
    GeoPoint origin_;
    double cos_lat0_;
};

}  // namespace alcplan
