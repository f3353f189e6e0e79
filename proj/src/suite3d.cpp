#include "specfem_mcp/suites.hpp"

#include "specfem_mcp/geo.hpp"
#include "specfem_mcp/mock_solver.hpp"
#include "specfem_mcp/par_file.hpp"

#include "suite_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fs = std::filesystem;

namespace smcp {

using detail::read_file;
using detail::report_to_result;
using detail::require_workspace_file;

namespace {

constexpr const char* kMeshSummary = "OUTPUT_FILES/MESH/mesh_summary.txt";
constexpr double kSliceSpeed = 3500.0; // m/s, documented mock reference speed

ToolDescriptor par_file_descriptor() {
    return {"specfem3d_generate_par_file",
            "Generates the main configuration file for SPECFEM3D simulations.",
            Json::parse(R"json({
      "type": "object",
      "properties": {
        "nproc":  {"type": "integer", "minimum": 1},
        "nstep":  {"type": "integer", "minimum": 1},
        "dt":     {"type": "number", "exclusiveMinimum": 0},
        "utm_zone":     {"type": "integer"},
        "suppress_utm": {"type": "boolean"},
        "attenuation":           {"type": "boolean"},
        "use_olsen_attenuation": {"type": "boolean"},
        "pml_conditions":        {"type": "boolean"},
        "stacey_conditions":     {"type": "boolean"},
        "gpu_mode":              {"type": "boolean"},
        "movie_surface":         {"type": "boolean"},
        "model_name":            {"type": "string"}
      },
      "required": ["nstep", "dt"]
    })json")};
}

ToolResult tool_generate_par_file(const SuiteContext& ctx, const Json& args) {
    ParFile3D p;
    p.nproc = args.value("nproc", 1);
    p.nstep = args["nstep"].get<long long>();
    p.dt = args["dt"].get<double>();
    p.utm_zone = args.value("utm_zone", 0);
    p.suppress_utm = args.value("suppress_utm", true);
    p.attenuation = args.value("attenuation", false);
    p.use_olsen_attenuation = args.value("use_olsen_attenuation", false);
    p.pml_conditions = args.value("pml_conditions", false);
    p.stacey_conditions = args.value("stacey_conditions", false);
    p.gpu_mode = args.value("gpu_mode", false);
    p.movie_surface = args.value("movie_surface", false);
    p.model_name = args.value("model_name", "default");

    const ParameterDeck deck = build_par_file_3d(p);
    const std::string rel = ctx.workspace->write_data_file("Par_file", render_deck(deck),
                                                           "specfem3d_generate_par_file");
    std::ostringstream text;
    text << "wrote " << rel << ": NPROC=" << p.nproc << ", NSTEP=" << p.nstep
         << ", DT=" << render_number(p.dt) << ", model " << p.model_name;
    return ToolResult::ok(text.str(), {rel});
}

ToolResult tool_run_mesh_generator(const SuiteContext& ctx, const Json& args) {
    if (auto missing = require_workspace_file(*ctx.workspace, "DATA/Par_file",
                                              "specfem3d_generate_par_file")) {
        return *missing;
    }
    const ParameterDeck deck = detail::parse_deck_file(*ctx.workspace, "DATA/Par_file");
    if (ctx.runner.mode == RunMode::real_binaries) {
        RunRequest req;
        req.executable = "xmeshfem3D";
        req.nproc = detail::resolve_nproc(args, static_cast<int>(deck.get_int("NPROC", 1)));
        req.mode = RunMode::real_binaries;
        req.timeout_sec = detail::resolve_timeout(args, ctx.runner);
        req.bin_dir = ctx.runner.bin_dir;
        req.mpi_launcher = ctx.runner.mpi_launcher;
        return report_to_result("xmeshfem3D", run_executable(req, *ctx.workspace));
    }
    ParameterDeck summary;
    summary.add_header_comment("mock mesh generator summary (xmeshfem3D stand-in)json");
    summary.set("nproc_deck", deck.get_int("NPROC", 1));
    summary.set("dt", deck.get_number("DT", 0.0));
    ctx.workspace->write_output_file("MESH/mesh_summary.txt", render_deck(summary),
                                     "specfem3d_run_mesh_generator");
    RunReport report;
    report.status = RunReport::Status::ok;
    report.produced_files = {"MESH/mesh_summary.txt"};
    return report_to_result("mock mesh generator", report,
                            "mock mode: recorded mesh stage only");
}

ToolResult tool_decompose_mesh(const SuiteContext& ctx, const Json& args) {
    if (auto missing = require_workspace_file(*ctx.workspace, kMeshSummary,
                                              "specfem3d_run_mesh_generator")) {
        return *missing;
    }
    const int nproc = args["nproc"].get<int>();
    if (ctx.runner.mode == RunMode::real_binaries) {
        RunRequest req;
        req.executable = "xdecompose_mesh";
        req.nproc = 1; // serial tool with positional arguments
        req.mode = RunMode::real_binaries;
        req.timeout_sec = detail::resolve_timeout(args, ctx.runner);
        req.bin_dir = ctx.runner.bin_dir;
        req.extra_args = {std::to_string(nproc),
                          args.value("mesh_dir", std::string("OUTPUT_FILES/MESH")),
                          "OUTPUT_FILES/DATABASES_MPI"};
        return report_to_result("xdecompose_mesh", run_executable(req, *ctx.workspace));
    }
    RunReport report;
    report.status = RunReport::Status::ok;
    for (int rank = 0; rank < nproc; ++rank) {
        char name[64];
        std::snprintf(name, sizeof name, "MESH/proc%06d_partition.txt", rank);
        std::ostringstream body;
        body << "# mock mesh partition\n"
             << "rank = " << rank << "\n"
             << "nparts = " << nproc << "\n";
        ctx.workspace->write_output_file(name, body.str(), "specfem3d_decompose_mesh");
        report.produced_files.push_back(name);
    }
    std::ostringstream note;
    note << "mock mode: wrote " << nproc << " partition stub(s)";
    return report_to_result("mock decompose_mesh", report, note.str());
}

ToolResult tool_generate_databases(const SuiteContext& ctx, const Json& args) {
    const int partitions = detail::count_partition_stubs(*ctx.workspace);
    if (partitions == 0) {
        return ToolResult::failure("no mesh partitions under OUTPUT_FILES/MESH/ — run "
                                   "specfem3d_decompose_mesh first");
    }
    if (ctx.runner.mode == RunMode::real_binaries) {
        RunRequest req;
        req.executable = "xgenerate_databases";
        req.nproc = detail::resolve_nproc(args, partitions);
        req.mode = RunMode::real_binaries;
        req.timeout_sec = detail::resolve_timeout(args, ctx.runner);
        req.bin_dir = ctx.runner.bin_dir;
        req.mpi_launcher = ctx.runner.mpi_launcher;
        return report_to_result("xgenerate_databases", run_executable(req, *ctx.workspace));
    }
    RunReport report;
    report.status = RunReport::Status::ok;
    for (int rank = 0; rank < partitions; ++rank) {
        char name[64];
        std::snprintf(name, sizeof name, "DATABASES_MPI/proc%06d_database.txt", rank);
        std::ostringstream body;
        body << "# mock model database\n"
             << "rank = " << rank << "\n"
             << "nparts = " << partitions << "\n";
        ctx.workspace->write_output_file(name, body.str(), "specfem3d_generate_databases");
        report.produced_files.push_back(name);
    }
    std::ostringstream note;
    note << "mock mode: one database stub per partition (" << partitions << ")";
    return report_to_result("mock generate_databases", report, note.str());
}

// Mock 3D forward run: one 2D acoustic slice through source and station
// per receiver, all slices sharing grid, dt and step count so the traces
// stack into one record section.
ToolResult mock_solver_3d(const SuiteContext& ctx) {
    std::string error;
    const auto source = detail::read_point_source(*ctx.workspace, error);
    if (!source) {
        return ToolResult::failure(error);
    }
    const StationList stations = detail::parse_stations_file(*ctx.workspace);

    const double m_per_deg_lat = 111320.0;
    const double m_per_deg_lon = 111320.0 * std::cos(deg_to_rad(source->latitude));

    struct Offset {
        double east, north, horizontal;
    };
    std::vector<Offset> offsets;
    double max_horizontal = 0;
    for (const auto& s : stations) {
        const double east = (s.h2 - source->longitude) * m_per_deg_lon;
        const double north = (s.h1 - source->latitude) * m_per_deg_lat;
        const double horizontal = std::hypot(east, north);
        offsets.push_back({east, north, horizontal});
        max_horizontal = std::max(max_horizontal, horizontal);
    }

    const double depth_m = source->depth_km * 1000.0;
    double f0;
    if (source->from_force_file) {
        f0 = source->hd_or_f0 > 0 ? source->hd_or_f0 : 10.0; // field is f0 for Cartesian
    } else {
        f0 = source->hd_or_f0 > 0 ? 1.0 / (2.0 * source->hd_or_f0) : 10.0;
    }
    f0 = std::clamp(f0, 0.25, 25.0);

    const double x_margin = std::max(0.15 * max_horizontal, 500.0 + 0.1 * depth_m);
    const double z_margin = std::max(0.5 * depth_m, 1000.0);

    MockSolverConfig cfg;
    cfg.xmin = 0;
    cfg.xmax = max_horizontal + 2.0 * x_margin;
    cfg.zmin = -(depth_m + z_margin);
    cfg.zmax = 0;
    fill_constant_velocity(cfg, kSliceSpeed);
    cfg.dt = 0.9 * max_stable_dt(cfg);
    const double travel = std::hypot(max_horizontal, depth_m) / kSliceSpeed;
    cfg.nstep = static_cast<long long>(std::ceil((1.3 * travel + 2.4 / f0 + 0.5) / cfg.dt));

    SourceSpec2D slice_source;
    slice_source.xs = x_margin;
    slice_source.zs = -depth_m;
    slice_source.f0 = f0;
    slice_source.factor = 1.0;
    cfg.source = slice_source;

    RunReport report;
    report.status = RunReport::Status::ok;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < stations.size(); ++i) {
        const Station& s = stations[i];
        Station slice_station = s;
        slice_station.h1 = x_margin + offsets[i].horizontal;
        slice_station.h2 = -std::max(s.burial, 0.0);
        cfg.stations = {slice_station};

        const auto traces = mock_solve_traces(cfg);
        const auto& samples = traces.front().samples;

        // Far-field P-style polarization: scale the scalar trace by the
        // source-to-station direction cosines.
        const double up = depth_m - std::max(s.burial, 0.0);
        const double len = std::max(
            std::sqrt(offsets[i].east * offsets[i].east + offsets[i].north * offsets[i].north +
                      up * up),
            1e-9);
        const double dir[3] = {offsets[i].east / len, offsets[i].north / len, up / len};
        const char* channels[3] = {"BXE", "BXN", "BXZ"};
        for (int c = 0; c < 3; ++c) {
            std::vector<double> scaled(samples.size());
            for (std::size_t k = 0; k < samples.size(); ++k) {
                scaled[k] = samples[k] * dir[c];
            }
            const std::string file = s.network + "." + s.name + "." + channels[c] + ".semd";
            ctx.workspace->write_output_file(file, render_trace_samples(0.0, cfg.dt, scaled),
                                             "specfem3d_run_solver");
            report.produced_files.push_back(file);
        }
    }
    std::sort(report.produced_files.begin(), report.produced_files.end());
    report.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream note;
    note << "mock 3D solver: acoustic 2D vertical slice per station (reference speed "
         << render_number(kSliceSpeed) << " m/s, f0 " << render_number(f0)
         << " Hz), scalar field projected on the source-station direction for E/N/Z";
    return report_to_result("mock solver", report, note.str());
}

ToolResult tool_run_solver(const SuiteContext& ctx, const Json& args) {
    const int databases = detail::count_database_stubs(*ctx.workspace);
    if (databases == 0) {
        return ToolResult::failure("no model databases under OUTPUT_FILES/DATABASES_MPI/ — run "
                                   "specfem3d_generate_databases first");
    }
    for (const auto& [rel, producer] : {std::pair<std::string, std::string>{
             "DATA/STATIONS", "specfem3d_generate_stations_file"}}) {
        if (auto missing = require_workspace_file(*ctx.workspace, rel, producer)) {
            return *missing;
        }
    }
    if (ctx.runner.mode == RunMode::real_binaries) {
        RunRequest req;
        req.executable = "xspecfem3D";
        req.nproc = detail::resolve_nproc(args, databases);
        req.mode = RunMode::real_binaries;
        req.timeout_sec = detail::resolve_timeout(args, ctx.runner);
        req.bin_dir = ctx.runner.bin_dir;
        req.mpi_launcher = ctx.runner.mpi_launcher;
        return report_to_result("xspecfem3D", run_executable(req, *ctx.workspace));
    }
    return mock_solver_3d(ctx);
}

} // namespace

std::vector<ToolDescriptor> descriptors_3d() {
    Json decompose_schema = Json::parse(R"json({
      "type": "object",
      "properties": {
        "nproc":    {"type": "integer", "minimum": 1,
                     "description": "number of mesh partitions"},
        "mesh_dir": {"type": "string"},
        "timeout":  {"type": "number", "exclusiveMinimum": 0}
      },
      "required": ["nproc"]
    })json");
    return {
        par_file_descriptor(),
        {"specfem3d_generate_cmtsolution_file",
         "Creates a CMTSOLUTION file for moment tensor sources.", detail::cmtsolution_schema()},
        {"specfem3d_generate_forcesolution_file",
         "Creates a FORCESOLUTION file for point force sources.",
         detail::forcesolution_schema()},
        {"specfem3d_generate_stations_file",
         "Creates the receiver station configuration file.", detail::stations_geo_schema()},
        {"specfem3d_run_mesh_generator", "Executes the internal mesh generator.",
         detail::run_args_schema("requires DATA/Par_file")},
        {"specfem3d_decompose_mesh", "Decomposes mesh for MPI parallel processing.",
         decompose_schema},
        {"specfem3d_generate_databases",
         "Generates model databases based on the decomposed mesh.",
         detail::run_args_schema("requires the decompose stage")},
        {"specfem3d_run_solver", "Executes the 3D seismic wave propagation solver.",
         detail::run_args_schema("requires the database stage plus DATA/STATIONS")},
        {"specfem3d_visualize", "Visualizes simulation results.", detail::visualize_schema()},
    };
}

ToolRegistry make_registry_3d(SuiteContext ctx) {
    ToolRegistry registry(Profile::specfem3d);
    auto descriptors = descriptors_3d();
    registry.add(descriptors[0],
                 [ctx](const Json& args) { return tool_generate_par_file(ctx, args); });
    registry.add(descriptors[1], [ctx](const Json& args) {
        return detail::write_cmtsolution(ctx, args, "specfem3d_generate_cmtsolution_file");
    });
    registry.add(descriptors[2], [ctx](const Json& args) {
        return detail::write_forcesolution(ctx, args, "specfem3d_generate_forcesolution_file",
                                           ForceLayout::cartesian);
    });
    registry.add(descriptors[3], [ctx](const Json& args) {
        return detail::write_stations_geo(ctx, args, "specfem3d_generate_stations_file");
    });
    registry.add(descriptors[4],
                 [ctx](const Json& args) { return tool_run_mesh_generator(ctx, args); });
    registry.add(descriptors[5],
                 [ctx](const Json& args) { return tool_decompose_mesh(ctx, args); });
    registry.add(descriptors[6],
                 [ctx](const Json& args) { return tool_generate_databases(ctx, args); });
    registry.add(descriptors[7], [ctx](const Json& args) { return tool_run_solver(ctx, args); });
    registry.add(descriptors[8], detail::make_visualize_handler(ctx, "specfem3d_visualize"));
    return registry;
}

} // namespace smcp
