#include "specfem_mcp/suites.hpp"

#include "specfem_mcp/geo.hpp"
#include "specfem_mcp/mock_solver.hpp"
#include "specfem_mcp/par_file.hpp"

#include "suite_util.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace fs = std::filesystem;

namespace smcp {

using detail::report_to_result;
using detail::require_workspace_file;

namespace {

constexpr const char* kMesherSummary = "OUTPUT_FILES/mesher_summary.txt";
constexpr double kReferenceSpeed = 10000.0; // m/s, mock 1D stand-in
constexpr double kMockDt = 0.5;             // s, fixed globe mock sampling

ToolDescriptor par_file_descriptor() {
    return {"specfem3d_globe_generate_par_file",
            "Generates the main configuration file for global simulations.",
            Json::parse(R"json({
      "type": "object",
      "properties": {
        "nchunks":   {"type": "integer", "enum": [1, 2, 3, 6]},
        "nex_xi":    {"type": "integer", "minimum": 1,
                      "description": "elements per chunk edge; multiple of 8*NPROC_XI"},
        "nex_eta":   {"type": "integer", "minimum": 1},
        "nproc_xi":  {"type": "integer", "minimum": 1},
        "nproc_eta": {"type": "integer", "minimum": 1},
        "model_name": {"type": "string"},
        "oceans":      {"type": "boolean"},
        "ellipticity": {"type": "boolean"},
        "topography":  {"type": "boolean"},
        "gravity":     {"type": "boolean"},
        "rotation":    {"type": "boolean"},
        "attenuation": {"type": "boolean"},
        "record_length_minutes": {"type": "number", "exclusiveMinimum": 0},
        "gpu_mode": {"type": "boolean"}
      },
      "required": ["nchunks", "nex_xi", "nex_eta", "record_length_minutes"]
    })json")};
}

ParFileGlobe globe_from_args(const Json& args) {
    ParFileGlobe p;
    p.nchunks = args["nchunks"].get<int>();
    p.nex_xi = args["nex_xi"].get<int>();
    p.nex_eta = args["nex_eta"].get<int>();
    p.nproc_xi = args.value("nproc_xi", 1);
    p.nproc_eta = args.value("nproc_eta", 1);
    p.model_name = args.value("model_name", "s362ani");
    p.oceans = args.value("oceans", false);
    p.ellipticity = args.value("ellipticity", false);
    p.topography = args.value("topography", false);
    p.gravity = args.value("gravity", false);
    p.rotation = args.value("rotation", false);
    p.attenuation = args.value("attenuation", false);
    p.record_length_minutes = args["record_length_minutes"].get<double>();
    p.gpu_mode = args.value("gpu_mode", false);
    return p;
}

ToolResult tool_generate_par_file(const SuiteContext& ctx, const Json& args) {
    const ParFileGlobe p = globe_from_args(args);
    const ParameterDeck deck = build_par_file_globe(p);
    const std::string rel = ctx.workspace->write_data_file(
        "Par_file", render_deck(deck), "specfem3d_globe_generate_par_file");
    std::ostringstream text;
    text << "wrote " << rel << ": NCHUNKS=" << p.nchunks << ", NEX=" << p.nex_xi << "x"
         << p.nex_eta << ", model " << p.model_name << ", record length "
         << render_number(p.record_length_minutes) << " min";
    return ToolResult::ok(text.str(), {rel});
}

long long derive_nproc(const ParameterDeck& deck) {
    return deck.get_int("NCHUNKS", 1) * deck.get_int("NPROC_XI", 1) *
           deck.get_int("NPROC_ETA", 1);
}

ToolResult tool_run_mesher(const SuiteContext& ctx, const Json& args) {
    // The globe mesher reads all three inputs.
    for (const auto& [rel, producer] :
         {std::pair<std::string, std::string>{"DATA/Par_file",
                                              "specfem3d_globe_generate_par_file"},
          {"DATA/CMTSOLUTION", "specfem3d_globe_generate_cmtsolution_file"},
          {"DATA/STATIONS", "specfem3d_globe_generate_stations_file"}}) {
        if (auto missing = require_workspace_file(*ctx.workspace, rel, producer)) {
            return *missing;
        }
    }
    const ParameterDeck deck = detail::parse_deck_file(*ctx.workspace, "DATA/Par_file");
    const long long nproc = derive_nproc(deck);

    if (ctx.runner.mode == RunMode::real_binaries) {
        RunRequest req;
        req.executable = "xmeshfem3D";
        req.nproc = static_cast<int>(nproc);
        req.mode = RunMode::real_binaries;
        req.timeout_sec = detail::resolve_timeout(args, ctx.runner);
        req.bin_dir = ctx.runner.bin_dir;
        req.mpi_launcher = ctx.runner.mpi_launcher;
        return report_to_result("xmeshfem3D (globe)", run_executable(req, *ctx.workspace));
    }

    ParameterDeck summary;
    summary.add_header_comment("mock global mesher summary (xmeshfem3D stand-in)json");
    summary.set("nproc", nproc);
    summary.set("nchunks", deck.get_int("NCHUNKS", 1));
    summary.set("nex_xi", deck.get_int("NEX_XI", 0));
    summary.set("nex_eta", deck.get_int("NEX_ETA", 0));
    ctx.workspace->write_output_file("mesher_summary.txt", render_deck(summary),
                                     "specfem3d_globe_run_mesher");
    RunReport report;
    report.status = RunReport::Status::ok;
    report.produced_files = {"mesher_summary.txt"};
    std::ostringstream note;
    note << "mock mode: nproc = NCHUNKS*NPROC_XI*NPROC_ETA = " << nproc;
    return report_to_result("mock global mesher", report, note.str());
}

ToolResult tool_run_solver(const SuiteContext& ctx, const Json& args) {
    (void)args;
    if (auto missing = require_workspace_file(*ctx.workspace, kMesherSummary,
                                              "specfem3d_globe_run_mesher")) {
        return *missing;
    }
    const ParameterDeck deck = detail::parse_deck_file(*ctx.workspace, "DATA/Par_file");
    const ParameterDeck summary = detail::parse_deck_file(*ctx.workspace, kMesherSummary);
    const long long nproc = derive_nproc(deck);
    const long long meshed = summary.get_int("nproc", -1);
    if (meshed != nproc) {
        return ToolResult::failure(
            "mesher ran with nproc = " + std::to_string(meshed) +
            " but the current Par_file implies nproc = " + std::to_string(nproc) +
            " — re-run specfem3d_globe_run_mesher");
    }

    if (ctx.runner.mode == RunMode::real_binaries) {
        RunRequest req;
        req.executable = "xspecfem3D";
        req.nproc = static_cast<int>(nproc);
        req.mode = RunMode::real_binaries;
        req.timeout_sec = detail::resolve_timeout(args, ctx.runner);
        req.bin_dir = ctx.runner.bin_dir;
        req.mpi_launcher = ctx.runner.mpi_launcher;
        return report_to_result("xspecfem3D (globe)", run_executable(req, *ctx.workspace));
    }

    std::string error;
    const auto source = detail::read_point_source(*ctx.workspace, error);
    if (!source) {
        return ToolResult::failure(error);
    }
    const StationList stations = detail::parse_stations_file(*ctx.workspace);

    const double minutes = deck.get_number("RECORD_LENGTH_IN_MINUTES", 10.0);
    const long long nstep = std::llround(minutes * 60.0 / kMockDt);
    // hd_or_f0 is a half duration here for both source kinds.
    const double hd = source->hd_or_f0;
    const double f0 = hd > 0 ? 1.0 / (2.0 * hd) : 0.05;

    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.status = RunReport::Status::ok;
    for (const auto& s : stations) {
        const double delta =
            great_circle_distance_m(source->latitude, source->longitude, s.h1, s.h2);
        const double arrival = delta / kReferenceSpeed;
        const double amplitude = 1.0 / std::sqrt(std::max(delta / 1.0e6, 1.0));
        const double azimuth =
            initial_bearing_rad(source->latitude, source->longitude, s.h1, s.h2);
        const double east_scale = 0.7 * std::sin(azimuth);
        const double north_scale = 0.7 * std::cos(azimuth);

        std::vector<double> vertical(static_cast<std::size_t>(nstep));
        for (long long k = 0; k < nstep; ++k) {
            vertical[static_cast<std::size_t>(k)] =
                amplitude * ricker(k * kMockDt - arrival, f0);
        }
        const struct {
            const char* channel;
            double scale;
        } components[3] = {{"MXE", east_scale}, {"MXN", north_scale}, {"MXZ", 1.0}};
        for (const auto& component : components) {
            std::vector<double> samples(vertical.size());
            for (std::size_t k = 0; k < vertical.size(); ++k) {
                samples[k] = vertical[k] * component.scale;
            }
            const std::string file =
                s.network + "." + s.name + "." + component.channel + ".semd";
            ctx.workspace->write_output_file(file, render_trace_samples(0.0, kMockDt, samples),
                                             "specfem3d_globe_run_solver");
            report.produced_files.push_back(file);
        }
    }
    std::sort(report.produced_files.begin(), report.produced_files.end());
    report.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream note;
    note << "mock global solver: great-circle arrivals at a single reference speed "
         << render_number(kReferenceSpeed) << " m/s (not a physical Earth model), Ricker f0 "
         << render_number(f0) << " Hz from the half duration, dt " << render_number(kMockDt)
         << " s";
    return report_to_result("mock solver", report, note.str());
}

} // namespace

std::vector<ToolDescriptor> descriptors_globe() {
    return {
        par_file_descriptor(),
        {"specfem3d_globe_generate_cmtsolution_file",
         "Creates a CMTSOLUTION file for moment tensor sources.", detail::cmtsolution_schema()},
        {"specfem3d_globe_generate_forcesolution_file",
         "Creates a FORCESOLUTION file for point force sources.",
         detail::forcesolution_schema()},
        {"specfem3d_globe_generate_stations_file",
         "Creates the receiver station configuration file.", detail::stations_geo_schema()},
        {"specfem3d_globe_run_mesher", "Executes the global mesh generator.",
         detail::run_args_schema("requires DATA/Par_file, DATA/CMTSOLUTION and DATA/STATIONS")},
        {"specfem3d_globe_run_solver", "Executes the global solver.",
         detail::run_args_schema("requires the mesher stage")},
        {"specfem3d_globe_visualize", "Visualizes simulation results.",
         detail::visualize_schema()},
    };
}

ToolRegistry make_registry_globe(SuiteContext ctx) {
    ToolRegistry registry(Profile::specfem3d_globe);
    auto descriptors = descriptors_globe();
    registry.add(descriptors[0],
                 [ctx](const Json& args) { return tool_generate_par_file(ctx, args); });
    registry.add(descriptors[1], [ctx](const Json& args) {
        return detail::write_cmtsolution(ctx, args,
                                         "specfem3d_globe_generate_cmtsolution_file");
    });
    registry.add(descriptors[2], [ctx](const Json& args) {
        return detail::write_forcesolution(
            ctx, args, "specfem3d_globe_generate_forcesolution_file", ForceLayout::globe);
    });
    registry.add(descriptors[3], [ctx](const Json& args) {
        return detail::write_stations_geo(ctx, args, "specfem3d_globe_generate_stations_file");
    });
    registry.add(descriptors[4], [ctx](const Json& args) { return tool_run_mesher(ctx, args); });
    registry.add(descriptors[5], [ctx](const Json& args) { return tool_run_solver(ctx, args); });
    registry.add(descriptors[6],
                 detail::make_visualize_handler(ctx, "specfem3d_globe_visualize"));
    return registry;
}

std::vector<ToolDescriptor> descriptors_for(Profile profile) {
    switch (profile) {
    case Profile::specfem2d: return descriptors_2d();
    case Profile::specfem3d: return descriptors_3d();
    case Profile::specfem3d_globe: return descriptors_globe();
    }
    return {};
}

ToolRegistry make_registry(Profile profile, SuiteContext ctx) {
    switch (profile) {
    case Profile::specfem2d: return make_registry_2d(std::move(ctx));
    case Profile::specfem3d: return make_registry_3d(std::move(ctx));
    case Profile::specfem3d_globe: return make_registry_globe(std::move(ctx));
    }
    return make_registry_2d(std::move(ctx));
}

} // namespace smcp
