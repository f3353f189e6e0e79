#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace smcp {

/// Uniformly sampled per-station per-component trace.
struct Seismogram {
    std::string network;
    std::string station;
    std::string component; // channel code, e.g. BXZ, MXE
    double t0 = 0;
    double dt = 0; // > 0
    std::vector<double> samples;

    friend bool operator==(const Seismogram&, const Seismogram&) = default;
};

/// Parses two-column ASCII (time, value). t0 comes from the first row,
/// dt from the first two; uniformity is validated to 1e-6 relative with
/// the first offending row named. Fewer than 2 rows is an error.
Seismogram parse_trace(std::string_view text);

/// parse_trace plus network/station/component from a NET.STA.CMP.sem?
/// file name.
Seismogram parse_trace_file(const std::filesystem::path& path);

struct TraceScan {
    std::vector<Seismogram> traces;     // ordered by (network, station, component)
    std::vector<std::string> warnings;  // unparseable files, not fatal
};

/// Collects every *.sem? file directly under output_dir.
TraceScan discover_traces(const std::filesystem::path& output_dir);

} // namespace smcp
