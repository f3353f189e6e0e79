#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smcp {

/// Layer-interface geometry for the 2D internal mesher: polylines listed
/// bottom to top, plus the number of vertical elements per layer.
struct InterfaceModel {
    using Polyline = std::vector<std::pair<double, double>>; // (x, z) m

    std::vector<Polyline> interfaces; // bottom to top, at least 2
    std::vector<int> layer_elements;  // one per layer (interfaces - 1)

    friend bool operator==(const InterfaceModel&, const InterfaceModel&) = default;
};

/// Throws naming the offending interface index when x is not strictly
/// increasing or the polylines do not share first/last x.
void validate(const InterfaceModel& model);

std::string render_interfaces(const InterfaceModel& model);
InterfaceModel parse_interfaces(std::string_view text);

} // namespace smcp
