#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smcp {

/// One receiver: h1/h2 are x/z in meters (2D) or latitude/longitude in
/// degrees (3D and globe).
struct Station {
    std::string name;
    std::string network;
    double h1 = 0;
    double h2 = 0;
    double elevation = 0;
    double burial = 0;

    friend bool operator==(const Station&, const Station&) = default;
};

using StationList = std::vector<Station>;

/// Six whitespace-separated columns per line: name network h1 h2
/// elevation burial. Throws on an empty list, blank or whitespace-bearing
/// names, and duplicate (network, name) pairs.
std::string render_stations(const StationList& stations);

/// Inverts render_stations. Duplicate (network, name) pairs are an error
/// listing the duplicates.
StationList parse_stations(std::string_view text);

/// n stations named prefix + zero-padded 1-based index, positions
/// linearly interpolated from start to end inclusive; n == 1 yields the
/// start point.
StationList linspace_stations(int n, std::pair<double, double> start,
                              std::pair<double, double> end, const std::string& network,
                              const std::string& prefix = "S", double elevation = 0,
                              double burial = 0);

} // namespace smcp
