#pragma once

#include "specfem_mcp/deck.hpp"
#include "specfem_mcp/process.hpp"
#include "specfem_mcp/sources.hpp"
#include "specfem_mcp/stations.hpp"
#include "specfem_mcp/suites.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace smcp::detail {

std::optional<std::string> read_file(const std::filesystem::path& path);

/// "<rel> not found — run <producer> first" failure, or nullopt when the
/// workspace-relative file exists.
std::optional<ToolResult> require_workspace_file(const Workspace& ws, const std::string& rel,
                                                 const std::string& producer_tool);

ParameterDeck parse_deck_file(const Workspace& ws, const std::string& rel);
StationList parse_stations_file(const Workspace& ws);

ToolResult report_to_result(const std::string& title, const RunReport& report,
                            const std::string& note = "");

int resolve_nproc(const Json& args, int fallback);
double resolve_timeout(const Json& args, const RunnerConfig& runner);

Json run_args_schema(const char* description_extra);
Json visualize_schema();

ToolHandler make_visualize_handler(SuiteContext ctx, std::string tool_name);

/// Count of OUTPUT_FILES/MESH/proc*_partition.txt stubs.
int count_partition_stubs(const Workspace& ws);
int count_database_stubs(const Workspace& ws);

// Shared by the Cartesian and globe suites: CMT / force sources and
// geographic station tables.
Json cmtsolution_schema();
Json forcesolution_schema();
Json stations_geo_schema();

ToolResult write_cmtsolution(const SuiteContext& ctx, const Json& args,
                             const std::string& tool_name);
ToolResult write_forcesolution(const SuiteContext& ctx, const Json& args,
                               const std::string& tool_name, ForceLayout layout);
ToolResult write_stations_geo(const SuiteContext& ctx, const Json& args,
                              const std::string& tool_name);

/// Source position for the mock solvers: CMTSOLUTION preferred, then
/// FORCESOLUTION. hd_or_f0 carries the half duration (CMT, globe force)
/// or f0 (Cartesian force).
struct PointSource {
    double latitude = 0;
    double longitude = 0;
    double depth_km = 0;
    double hd_or_f0 = 0;
    bool from_force_file = false;
};

std::optional<PointSource> read_point_source(const Workspace& ws, std::string& error);

} // namespace smcp::detail
