#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace smcp {

/// 2D seismic source: position, mechanism and source time function.
struct SourceSpec2D {
    enum class Mechanism { elastic_force, moment_tensor };
    enum class TimeFunction { ricker, gaussian };

    double xs = 0; // m
    double zs = 0; // m
    Mechanism source_type = Mechanism::elastic_force;
    TimeFunction time_function = TimeFunction::ricker;
    double f0 = 0;        // Hz, dominant frequency, > 0
    double angle_deg = 0; // in [0, 360)
    double factor = 1.0;  // amplitude scale
    double mxx = 0, mzz = 0, mxz = 0; // moment tensor mechanism only

    friend bool operator==(const SourceSpec2D&, const SourceSpec2D&) = default;
};

void validate(const SourceSpec2D& source);

/// One key = value block per source; moment-tensor components are
/// emitted only for that mechanism.
std::string render_source_2d(const std::vector<SourceSpec2D>& sources);
std::vector<SourceSpec2D> parse_source_2d(std::string_view text);

/// CMT-style point source; moment tensor components in dyne*cm.
struct CmtSolution {
    std::string header_line; // verbatim first line (PDE line)
    std::string event_name;
    double time_shift = 0;    // s
    double half_duration = 0; // s, >= 0
    double latitude = 0;      // deg in [-90, 90]
    double longitude = 0;     // deg in [-180, 360)
    double depth_km = 0;      // km, >= 0
    double mrr = 0, mtt = 0, mpp = 0, mrt = 0, mrp = 0, mtp = 0;

    friend bool operator==(const CmtSolution&, const CmtSolution&) = default;
};

void validate(const CmtSolution& cmt);

/// Exactly 13 lines: one header, then 12 labeled `key: value` lines in
/// fixed order.
std::string render_cmtsolution(const CmtSolution& cmt);
CmtSolution parse_cmtsolution(std::string_view text);

/// Point-force source. Field three is f0 in Hz for the Cartesian layout
/// and the half duration in seconds for the globe layout.
struct ForceSolution {
    std::string header_line = "FORCE 001";
    double time_shift = 0;
    double half_duration_or_f0 = 0;
    double latitude_or_x = 0;
    double longitude_or_y = 0;
    double depth_km_or_z = 0;
    double factor = 1.0; // N
    std::array<double, 3> component_dir{0, 0, 1}; // E, N, Z_up; not all zero

    friend bool operator==(const ForceSolution&, const ForceSolution&) = default;
};

enum class ForceLayout { cartesian, globe };

void validate(const ForceSolution& force);
std::string render_forcesolution(const ForceSolution& force,
                                 ForceLayout layout = ForceLayout::cartesian);

} // namespace smcp
