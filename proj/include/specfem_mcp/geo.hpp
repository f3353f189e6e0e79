#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace smcp {

inline constexpr double kEarthRadiusM = 6371000.0;

inline double deg_to_rad(double deg) {
    return deg * std::numbers::pi / 180.0;
}

/// Epicentral distance along the surface, spherical law of cosines.
inline double great_circle_distance_m(double lat1_deg, double lon1_deg, double lat2_deg,
                                      double lon2_deg) {
    const double p1 = deg_to_rad(lat1_deg);
    const double p2 = deg_to_rad(lat2_deg);
    const double dl = deg_to_rad(lon2_deg - lon1_deg);
    const double c = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
    return kEarthRadiusM * std::acos(std::clamp(c, -1.0, 1.0));
}

/// Initial bearing from point 1 towards point 2, radians clockwise from
/// north.
inline double initial_bearing_rad(double lat1_deg, double lon1_deg, double lat2_deg,
                                  double lon2_deg) {
    const double p1 = deg_to_rad(lat1_deg);
    const double p2 = deg_to_rad(lat2_deg);
    const double dl = deg_to_rad(lon2_deg - lon1_deg);
    const double y = std::sin(dl) * std::cos(p2);
    const double x = std::cos(p1) * std::sin(p2) - std::sin(p1) * std::cos(p2) * std::cos(dl);
    return std::atan2(y, x);
}

} // namespace smcp
