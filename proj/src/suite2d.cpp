#include "specfem_mcp/suites.hpp"

#include "specfem_mcp/interfaces.hpp"
#include "specfem_mcp/mock_solver.hpp"
#include "specfem_mcp/par_file.hpp"
#include "specfem_mcp/sources.hpp"

#include "suite_util.hpp"

#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace smcp {

using detail::read_file;
using detail::report_to_result;
using detail::require_workspace_file;

namespace {

constexpr const char* kMesherSummary = "OUTPUT_FILES/mesher_summary.txt";

ToolDescriptor par_file_descriptor() {
    return {"specfem2d_generate_par_file",
            "Generates the main configuration file for SPECFEM2D simulations.",
            Json::parse(R"json({
      "type": "object",
      "properties": {
        "title":  {"type": "string"},
        "nproc":  {"type": "integer", "minimum": 1},
        "nstep":  {"type": "integer", "minimum": 1},
        "dt":     {"type": "number", "exclusiveMinimum": 0,
                   "description": "time step in seconds"},
        "attenuation_viscoelastic": {"type": "boolean"},
        "stacey_absorbing":         {"type": "boolean"},
        "pml_boundary":             {"type": "boolean"},
        "gpu_mode":                 {"type": "boolean"},
        "output_snapshots":         {"type": "boolean"},
        "materials": {
          "type": "array", "minItems": 1,
          "description": "velocity model, material 1 first; vs = 0 marks a fluid",
          "items": {
            "type": "object",
            "properties": {
              "rho":     {"type": "number", "exclusiveMinimum": 0},
              "vp":      {"type": "number", "exclusiveMinimum": 0},
              "vs":      {"type": "number", "minimum": 0},
              "q_kappa": {"type": "number", "exclusiveMinimum": 0},
              "q_mu":    {"type": "number", "exclusiveMinimum": 0}
            },
            "required": ["rho", "vp", "vs"]
          }
        },
        "internal_mesh": {
          "type": "object",
          "properties": {
            "xmin": {"type": "number"},
            "xmax": {"type": "number"},
            "nx":   {"type": "integer", "minimum": 1},
            "interfaces_file": {"type": "string"}
          },
          "required": ["xmax", "nx"]
        },
        "external_mesh": {
          "type": "object",
          "description": "pre-built mesh files, passed through verbatim",
          "properties": {
            "mesh_file":              {"type": "string"},
            "nodes_coords_file":      {"type": "string"},
            "materials_file":         {"type": "string"},
            "free_surface_file":      {"type": "string"},
            "absorbing_surface_file": {"type": "string"}
          },
          "required": ["mesh_file", "nodes_coords_file", "materials_file"]
        },
        "regions": {
          "type": "array", "minItems": 1,
          "items": {
            "type": "object",
            "properties": {
              "nxmin":    {"type": "integer", "minimum": 1},
              "nxmax":    {"type": "integer", "minimum": 1},
              "nzmin":    {"type": "integer", "minimum": 1},
              "nzmax":    {"type": "integer", "minimum": 1},
              "material": {"type": "integer", "minimum": 1}
            },
            "required": ["nxmin", "nxmax", "nzmin", "nzmax", "material"]
          }
        }
      },
      "required": ["nstep", "dt", "materials"]
    })json")};
}

ToolDescriptor source_file_descriptor() {
    return {"specfem2d_generate_source_file",
            "Creates the seismic source configuration file.",
            Json::parse(R"json({
      "type": "object",
      "properties": {
        "sources": {
          "type": "array", "minItems": 1,
          "items": {
            "type": "object",
            "properties": {
              "xs": {"type": "number"},
              "zs": {"type": "number"},
              "source_type":   {"type": "string",
                                "enum": ["elastic_force", "moment_tensor"]},
              "time_function": {"type": "string", "enum": ["ricker", "gaussian"]},
              "f0":        {"type": "number", "exclusiveMinimum": 0,
                            "description": "dominant frequency in Hz"},
              "angle_deg": {"type": "number", "minimum": 0, "exclusiveMaximum": 360},
              "factor":    {"type": "number"},
              "Mxx": {"type": "number"},
              "Mzz": {"type": "number"},
              "Mxz": {"type": "number"}
            },
            "required": ["xs", "zs", "f0"]
          }
        }
      },
      "required": ["sources"]
    })json")};
}

ToolDescriptor stations_file_descriptor() {
    return {"specfem2d_generate_stations_file",
            "Creates the receiver station configuration file.",
            Json::parse(R"json({
      "type": "object",
      "properties": {
        "arrays": {
          "type": "array", "minItems": 1,
          "description": "receiver arrays appended in order (surface lines, VSP wells, ...)",
          "items": {
            "type": "object",
            "properties": {
              "network":   {"type": "string"},
              "prefix":    {"type": "string"},
              "elevation": {"type": "number"},
              "burial":    {"type": "number"},
              "stations": {
                "type": "array", "minItems": 1,
                "items": {
                  "type": "object",
                  "properties": {
                    "name": {"type": "string"},
                    "h1":   {"type": "number"},
                    "h2":   {"type": "number"},
                    "elevation": {"type": "number"},
                    "burial":    {"type": "number"}
                  },
                  "required": ["name", "h1", "h2"]
                }
              },
              "linspace": {
                "type": "object",
                "properties": {
                  "n":     {"type": "integer", "minimum": 1},
                  "start": {"type": "array", "minItems": 2, "maxItems": 2,
                            "items": {"type": "number"}},
                  "end":   {"type": "array", "minItems": 2, "maxItems": 2,
                            "items": {"type": "number"}}
                },
                "required": ["n", "start", "end"]
              }
            },
            "required": ["network"]
          }
        }
      },
      "required": ["arrays"]
    })json")};
}

ToolDescriptor interfaces_file_descriptor() {
    return {"specfem2d_generate_interfaces_file",
            "Creates the geological layer interface definition file for the internal mesher.",
            Json::parse(R"json({
      "type": "object",
      "properties": {
        "interfaces": {
          "type": "array", "minItems": 2,
          "description": "polylines bottom to top; points are [x, z] in meters",
          "items": {
            "type": "object",
            "properties": {
              "points": {
                "type": "array", "minItems": 2,
                "items": {"type": "array", "minItems": 2, "maxItems": 2,
                          "items": {"type": "number"}}
              }
            },
            "required": ["points"]
          }
        },
        "layer_elements": {
          "type": "array", "minItems": 1,
          "items": {"type": "integer", "minimum": 1}
        }
      },
      "required": ["interfaces", "layer_elements"]
    })json")};
}

ParFile2D par_file_from_args(const Json& args, std::string& problems) {
    ParFile2D p;
    p.title = args.value("title", "SPECFEM2D simulation");
    p.nproc = args.value("nproc", 1);
    p.nstep = args["nstep"].get<long long>();
    p.dt = args["dt"].get<double>();
    p.attenuation_viscoelastic = args.value("attenuation_viscoelastic", false);
    p.stacey_absorbing = args.value("stacey_absorbing", false);
    p.pml_boundary = args.value("pml_boundary", false);
    p.gpu_mode = args.value("gpu_mode", false);
    p.output_snapshots = args.value("output_snapshots", false);

    int id = 0;
    for (const auto& m : args["materials"]) {
        Material2D material;
        material.id = ++id;
        material.rho = m["rho"].get<double>();
        material.vp = m["vp"].get<double>();
        material.vs = m["vs"].get<double>();
        material.q_kappa = m.value("q_kappa", 9999.0);
        material.q_mu = m.value("q_mu", 9999.0);
        p.materials.push_back(material);
    }

    const bool has_internal = args.contains("internal_mesh");
    const bool has_external = args.contains("external_mesh");
    if (has_internal == has_external) {
        problems += "exactly one of internal_mesh / external_mesh must be given\n";
        return p;
    }
    p.use_external_mesh = has_external;
    if (has_external) {
        const Json& e = args["external_mesh"];
        p.external_mesh.mesh_file = e["mesh_file"].get<std::string>();
        p.external_mesh.nodes_coords_file = e["nodes_coords_file"].get<std::string>();
        p.external_mesh.materials_file = e["materials_file"].get<std::string>();
        p.external_mesh.free_surface_file = e.value("free_surface_file", "");
        p.external_mesh.absorbing_surface_file = e.value("absorbing_surface_file", "");
    } else {
        const Json& m = args["internal_mesh"];
        p.internal_mesh.xmin = m.value("xmin", 0.0);
        p.internal_mesh.xmax = m["xmax"].get<double>();
        p.internal_mesh.nx = m["nx"].get<int>();
        p.internal_mesh.interfaces_file = m.value("interfaces_file", "interfaces.dat");
        if (!args.contains("regions")) {
            problems += "regions are required with internal_mesh\n";
            return p;
        }
        for (const auto& r : args["regions"]) {
            p.regions.push_back(Region2D{r["nxmin"].get<int>(), r["nxmax"].get<int>(),
                                         r["nzmin"].get<int>(), r["nzmax"].get<int>(),
                                         r["material"].get<int>()});
        }
    }
    return p;
}

ToolResult tool_generate_par_file(const SuiteContext& ctx, const Json& args) {
    std::string problems;
    const ParFile2D p = par_file_from_args(args, problems);
    if (!problems.empty()) {
        return ToolResult::failure("invalid Par_file arguments:\n" + problems);
    }
    const ParameterDeck deck = build_par_file_2d(p);
    const std::string rel =
        ctx.workspace->write_data_file("Par_file", render_deck(deck),
                                       "specfem2d_generate_par_file");
    std::ostringstream text;
    text << "wrote " << rel << ": NSTEP=" << p.nstep << ", DT=" << render_number(p.dt) << ", "
         << p.materials.size() << " material(s), "
         << (p.use_external_mesh ? "external mesh" : "internal mesh");
    return ToolResult::ok(text.str(), {rel});
}

SourceSpec2D source_from_json(const Json& s) {
    SourceSpec2D src;
    src.xs = s["xs"].get<double>();
    src.zs = s["zs"].get<double>();
    src.f0 = s["f0"].get<double>();
    src.angle_deg = s.value("angle_deg", 0.0);
    src.factor = s.value("factor", 1.0e10);
    if (s.value("source_type", "elastic_force") == std::string("moment_tensor")) {
        src.source_type = SourceSpec2D::Mechanism::moment_tensor;
        src.mxx = s.value("Mxx", 0.0);
        src.mzz = s.value("Mzz", 0.0);
        src.mxz = s.value("Mxz", 0.0);
    }
    if (s.value("time_function", "ricker") == std::string("gaussian")) {
        src.time_function = SourceSpec2D::TimeFunction::gaussian;
    }
    return src;
}

ToolResult tool_generate_source_file(const SuiteContext& ctx, const Json& args) {
    std::vector<SourceSpec2D> sources;
    for (const auto& s : args["sources"]) {
        sources.push_back(source_from_json(s));
    }
    const std::string rel = ctx.workspace->write_data_file(
        "SOURCE", render_source_2d(sources), "specfem2d_generate_source_file");
    std::ostringstream text;
    text << "wrote " << rel << " with " << sources.size() << " source(s); first: f0="
         << render_number(sources.front().f0) << " Hz at (" << render_number(sources.front().xs)
         << ", " << render_number(sources.front().zs) << ")";
    return ToolResult::ok(text.str(), {rel});
}

StationList stations_from_args(const Json& args) {
    StationList all;
    for (const auto& spec : args["arrays"]) {
        const std::string network = spec["network"].get<std::string>();
        const double elevation = spec.value("elevation", 0.0);
        const double burial = spec.value("burial", 0.0);
        const bool has_explicit = spec.contains("stations");
        const bool has_linspace = spec.contains("linspace");
        if (has_explicit == has_linspace) {
            throw std::invalid_argument("array for network " + network +
                                        ": give exactly one of stations / linspace");
        }
        if (has_explicit) {
            for (const auto& s : spec["stations"]) {
                all.push_back(Station{s["name"].get<std::string>(), network,
                                      s["h1"].get<double>(), s["h2"].get<double>(),
                                      s.value("elevation", elevation),
                                      s.value("burial", burial)});
            }
        } else {
            const Json& ls = spec["linspace"];
            const auto part = linspace_stations(
                ls["n"].get<int>(),
                {ls["start"][0].get<double>(), ls["start"][1].get<double>()},
                {ls["end"][0].get<double>(), ls["end"][1].get<double>()}, network,
                spec.value("prefix", "S"), elevation, burial);
            all.insert(all.end(), part.begin(), part.end());
        }
    }
    return all;
}

ToolResult tool_generate_stations_file(const SuiteContext& ctx, const Json& args) {
    const StationList stations = stations_from_args(args);
    const std::string rel = ctx.workspace->write_data_file(
        "STATIONS", render_stations(stations), "specfem2d_generate_stations_file");
    std::set<std::string> networks;
    for (const auto& s : stations) {
        networks.insert(s.network);
    }
    std::ostringstream text;
    text << "wrote " << rel << " with " << stations.size() << " station(s) across "
         << networks.size() << " network(s)";
    return ToolResult::ok(text.str(), {rel});
}

ToolResult tool_generate_interfaces_file(const SuiteContext& ctx, const Json& args) {
    InterfaceModel model;
    for (const auto& iface : args["interfaces"]) {
        InterfaceModel::Polyline poly;
        for (const auto& pt : iface["points"]) {
            poly.emplace_back(pt[0].get<double>(), pt[1].get<double>());
        }
        model.interfaces.push_back(std::move(poly));
    }
    for (const auto& n : args["layer_elements"]) {
        model.layer_elements.push_back(n.get<int>());
    }
    const std::string rel = ctx.workspace->write_data_file(
        "interfaces.dat", render_interfaces(model), "specfem2d_generate_interfaces_file");
    std::ostringstream text;
    text << "wrote " << rel << ": " << model.interfaces.size() << " interfaces, "
         << model.layer_elements.size() << " layer(s)";
    return ToolResult::ok(text.str(), {rel});
}

struct MeshGeometry {
    double xmin, xmax, zmin, zmax;
    int nx, nz_total;
};

// Derives the mesh box from the deck plus the interface file and checks
// their consistency the way the real mesher would reject them.
MeshGeometry derive_geometry(const ParameterDeck& deck, const InterfaceModel& model,
                             std::string& problems) {
    MeshGeometry g{};
    g.xmin = deck.get_number("xmin", 0.0);
    g.xmax = deck.get_number("xmax", 0.0);
    g.nx = static_cast<int>(deck.get_int("nx", 0));
    g.nz_total = 0;
    for (int n : model.layer_elements) {
        g.nz_total += n;
    }
    double zmin = model.interfaces.front().front().second;
    double zmax = zmin;
    for (const auto& poly : model.interfaces) {
        for (const auto& [x, z] : poly) {
            zmin = std::min(zmin, z);
            zmax = std::max(zmax, z);
        }
    }
    g.zmin = zmin;
    g.zmax = zmax;

    const double ix0 = model.interfaces.front().front().first;
    const double ix1 = model.interfaces.front().back().first;
    if (ix0 != g.xmin || ix1 != g.xmax) {
        problems += "interface x-range [" + render_number(ix0) + ", " + render_number(ix1) +
                    "] does not match Par_file xmin/xmax [" + render_number(g.xmin) + ", " +
                    render_number(g.xmax) + "]\n";
    }
    const long long nbregions = deck.get_int("nbregions", 0);
    for (long long r = 1; r <= nbregions; ++r) {
        const std::string row = deck.get_string("REGION_" + std::to_string(r), "");
        std::istringstream fields(row);
        int nxmin = 0, nxmax = 0, nzmin = 0, nzmax = 0, material = 0;
        if (!(fields >> nxmin >> nxmax >> nzmin >> nzmax >> material)) {
            problems += "REGION_" + std::to_string(r) + " is malformed: '" + row + "'\n";
            continue;
        }
        if (nxmax > g.nx || nzmax > g.nz_total) {
            problems += "REGION_" + std::to_string(r) + " exceeds the mesh (" +
                        std::to_string(g.nx) + " x " + std::to_string(g.nz_total) +
                        " elements)\n";
        }
        if (material > deck.get_int("nbmodels", 0)) {
            problems += "REGION_" + std::to_string(r) + " references material " +
                        std::to_string(material) + " > nbmodels\n";
        }
    }
    return g;
}

ToolResult tool_run_mesher(const SuiteContext& ctx, const Json& args) {
    if (auto missing = require_workspace_file(*ctx.workspace, "DATA/Par_file",
                                              "specfem2d_generate_par_file")) {
        return *missing;
    }
    const ParameterDeck deck = detail::parse_deck_file(*ctx.workspace, "DATA/Par_file");
    const bool external = deck.get_bool("read_external_mesh", false);
    std::string interfaces_rel;
    if (!external) {
        interfaces_rel = "DATA/" + deck.get_string("interfacesfile", "interfaces.dat");
        if (auto missing = require_workspace_file(*ctx.workspace, interfaces_rel,
                                                  "specfem2d_generate_interfaces_file")) {
            return *missing;
        }
    }

    if (ctx.runner.mode == RunMode::real_binaries) {
        RunRequest req;
        req.executable = "xmeshfem2D";
        req.nproc = detail::resolve_nproc(args, static_cast<int>(deck.get_int("NPROC", 1)));
        req.mode = RunMode::real_binaries;
        req.timeout_sec = detail::resolve_timeout(args, ctx.runner);
        req.bin_dir = ctx.runner.bin_dir;
        req.mpi_launcher = ctx.runner.mpi_launcher;
        return report_to_result("xmeshfem2D", run_executable(req, *ctx.workspace));
    }

    std::string problems;
    MeshGeometry g{};
    if (!external) {
        const auto text = read_file(ctx.workspace->root() / interfaces_rel);
        const InterfaceModel model = parse_interfaces(*text);
        g = derive_geometry(deck, model, problems);
    }
    if (!problems.empty()) {
        return ToolResult::failure("mesh consistency check failed:\n" + problems);
    }

    ParameterDeck summary;
    summary.add_header_comment("mock mesher summary (xmeshfem2D stand-in)json");
    summary.set("external_mesh", external);
    if (!external) {
        summary.set("nx", static_cast<long long>(g.nx));
        summary.set("nz_total", static_cast<long long>(g.nz_total));
        summary.set("elements", static_cast<long long>(g.nx) * g.nz_total);
        summary.set("xmin", g.xmin);
        summary.set("xmax", g.xmax);
        summary.set("zmin", g.zmin);
        summary.set("zmax", g.zmax);
    }
    ctx.workspace->write_output_file("mesher_summary.txt", render_deck(summary),
                                     "specfem2d_run_mesher");
    RunReport report;
    report.status = RunReport::Status::ok;
    report.produced_files = {"mesher_summary.txt"};
    return report_to_result("mock mesher", report,
                            "mock mode: validated Par_file/interfaces consistency only");
}

bool has_real_databases(const Workspace& ws) {
    if (!fs::exists(ws.output_dir())) {
        return false;
    }
    for (const auto& entry : fs::directory_iterator(ws.output_dir())) {
        if (entry.path().filename().string().find("Database") != std::string::npos) {
            return true;
        }
    }
    return false;
}

ToolResult tool_run_solver(const SuiteContext& ctx, const Json& args) {
    if (!fs::exists(ctx.workspace->root() / kMesherSummary) &&
        !has_real_databases(*ctx.workspace)) {
        return ToolResult::failure(std::string(kMesherSummary) +
                                   " not found — run specfem2d_run_mesher first");
    }
    for (const auto& [rel, producer] :
         {std::pair<std::string, std::string>{"DATA/Par_file", "specfem2d_generate_par_file"},
          {"DATA/SOURCE", "specfem2d_generate_source_file"},
          {"DATA/STATIONS", "specfem2d_generate_stations_file"}}) {
        if (auto missing = require_workspace_file(*ctx.workspace, rel, producer)) {
            return *missing;
        }
    }
    const ParameterDeck deck = detail::parse_deck_file(*ctx.workspace, "DATA/Par_file");

    if (ctx.runner.mode == RunMode::real_binaries) {
        RunRequest req;
        req.executable = "xspecfem2D";
        req.nproc = detail::resolve_nproc(args, static_cast<int>(deck.get_int("NPROC", 1)));
        req.mode = RunMode::real_binaries;
        req.timeout_sec = detail::resolve_timeout(args, ctx.runner);
        req.bin_dir = ctx.runner.bin_dir;
        req.mpi_launcher = ctx.runner.mpi_launcher;
        return report_to_result("xspecfem2D", run_executable(req, *ctx.workspace));
    }

    const ParameterDeck summary = detail::parse_deck_file(*ctx.workspace, kMesherSummary);
    if (summary.get_bool("external_mesh", false)) {
        return ToolResult::failure(
            "mock solver supports internally meshed models only; external meshes need real "
            "binaries (set SPECFEM2D_BIN)json");
    }

    const auto source_text = read_file(ctx.workspace->data_dir() / "SOURCE");
    const auto sources = parse_source_2d(*source_text);

    MockSolverConfig cfg;
    cfg.xmin = summary.get_number("xmin", 0.0);
    cfg.xmax = summary.get_number("xmax", 0.0);
    cfg.zmin = summary.get_number("zmin", 0.0);
    cfg.zmax = summary.get_number("zmax", 0.0);
    cfg.dt = deck.get_number("DT", 0.0);
    cfg.nstep = deck.get_int("NSTEP", 0);
    cfg.source = sources.front();
    cfg.stations = detail::parse_stations_file(*ctx.workspace);

    const std::string material = deck.get_string("MATERIAL_1", "");
    std::istringstream fields(material);
    double rho = 0, vp = 0;
    if (!(fields >> rho >> vp) || !(vp > 0)) {
        return ToolResult::failure("cannot read vp from MATERIAL_1 entry: '" + material + "'");
    }
    fill_constant_velocity(cfg, vp);

    const RunReport report = mock_solve(cfg, *ctx.workspace, "specfem2d_run_solver");
    std::ostringstream note;
    note << "mock acoustic solver: homogeneous velocity " << render_number(vp)
         << " m/s from material 1, " << cfg.nx << "x" << cfg.nz
         << " grid, rigid boundaries; " << cfg.stations.size() << " station(s) recorded";
    if (sources.size() > 1) {
        note << "; only the first of " << sources.size() << " sources is injected";
    }
    return report_to_result("mock solver", report, note.str());
}

} // namespace

std::vector<ToolDescriptor> descriptors_2d() {
    return {
        par_file_descriptor(),
        source_file_descriptor(),
        stations_file_descriptor(),
        interfaces_file_descriptor(),
        {"specfem2d_run_mesher", "Executes the 2D mesher.",
         detail::run_args_schema("requires DATA/Par_file and, for internal meshing, the "
                                 "interfaces file")},
        {"specfem2d_run_solver", "Executes the 2D seismic wave propagation solver.",
         detail::run_args_schema("requires the mesher stage plus DATA/SOURCE and "
                                 "DATA/STATIONS")},
        {"specfem2d_visualize", "Visualizes simulation results.", detail::visualize_schema()},
    };
}

ToolRegistry make_registry_2d(SuiteContext ctx) {
    ToolRegistry registry(Profile::specfem2d);
    auto descriptors = descriptors_2d();
    registry.add(descriptors[0],
                 [ctx](const Json& args) { return tool_generate_par_file(ctx, args); });
    registry.add(descriptors[1],
                 [ctx](const Json& args) { return tool_generate_source_file(ctx, args); });
    registry.add(descriptors[2],
                 [ctx](const Json& args) { return tool_generate_stations_file(ctx, args); });
    registry.add(descriptors[3],
                 [ctx](const Json& args) { return tool_generate_interfaces_file(ctx, args); });
    registry.add(descriptors[4], [ctx](const Json& args) { return tool_run_mesher(ctx, args); });
    registry.add(descriptors[5], [ctx](const Json& args) { return tool_run_solver(ctx, args); });
    registry.add(descriptors[6], detail::make_visualize_handler(ctx, "specfem2d_visualize"));
    return registry;
}

} // namespace smcp
