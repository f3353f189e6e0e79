#include "suite_util.hpp"

#include "specfem_mcp/record_section.hpp"
#include "specfem_mcp/seismogram.hpp"

#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace smcp::detail {

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::optional<ToolResult> require_workspace_file(const Workspace& ws, const std::string& rel,
                                                 const std::string& producer_tool) {
    if (fs::exists(ws.root() / rel)) {
        return std::nullopt;
    }
    return ToolResult::failure(rel + " not found — run " + producer_tool + " first");
}

ParameterDeck parse_deck_file(const Workspace& ws, const std::string& rel) {
    const auto text = read_file(ws.root() / rel);
    if (!text) {
        throw std::runtime_error(rel + " is missing or unreadable");
    }
    return parse_deck(*text);
}

StationList parse_stations_file(const Workspace& ws) {
    const auto text = read_file(ws.data_dir() / "STATIONS");
    if (!text) {
        throw std::runtime_error("DATA/STATIONS is missing or unreadable");
    }
    return parse_stations(*text);
}

ToolResult report_to_result(const std::string& title, const RunReport& report,
                            const std::string& note) {
    std::ostringstream text;
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.2f", report.wall_time_sec);
    switch (report.status) {
    case RunReport::Status::ok:
        text << title << " completed in " << wall << " s";
        break;
    case RunReport::Status::failed:
        text << title << " failed";
        if (report.exit_code) {
            text << " (exit code " << *report.exit_code << ")";
        }
        break;
    case RunReport::Status::timeout:
        text << title << " timed out after " << wall << " s";
        break;
    }
    text << "; " << report.produced_files.size() << " new file(s) under OUTPUT_FILES/";
    if (!note.empty()) {
        text << "\n" << note;
    }
    if (report.status != RunReport::Status::ok && !report.stderr_tail.empty()) {
        text << "\nstderr tail:";
        for (const auto& line : report.stderr_tail) {
            text << "\n  " << line;
        }
    }

    ToolResult result;
    result.is_error = report.status != RunReport::Status::ok;
    result.content.push_back({ContentBlock::Type::text, text.str()});
    // Cap the listing; a 2D run can produce hundreds of traces.
    std::size_t listed = 0;
    for (const auto& file : report.produced_files) {
        if (++listed > 12) {
            result.content.push_back(
                {ContentBlock::Type::text,
                 "(+" + std::to_string(report.produced_files.size() - 12) + " more files)"});
            break;
        }
        result.content.push_back({ContentBlock::Type::resource_link, "OUTPUT_FILES/" + file});
    }
    return result;
}

int resolve_nproc(const Json& args, int fallback) {
    if (args.contains("nproc")) {
        return args["nproc"].get<int>();
    }
    return fallback;
}

double resolve_timeout(const Json& args, const RunnerConfig& runner) {
    if (args.contains("timeout")) {
        return args["timeout"].get<double>();
    }
    return runner.default_timeout();
}

Json run_args_schema(const char* description_extra) {
    Json schema = Json::parse(R"json({
      "type": "object",
      "properties": {
        "nproc":   {"type": "integer", "minimum": 1,
                    "description": "MPI process count (real mode)"},
        "timeout": {"type": "number", "exclusiveMinimum": 0,
                    "description": "wall-clock limit in seconds"}
      },
      "required": []
    })json");
    if (description_extra != nullptr && *description_extra != '\0') {
        schema["description"] = description_extra;
    }
    return schema;
}

Json visualize_schema() {
    return Json::parse(R"json({
      "type": "object",
      "properties": {
        "normalization": {"type": "string", "enum": ["per_trace", "global"],
                          "description": "wiggle amplitude scaling"},
        "fill_positive": {"type": "boolean",
                          "description": "fill positive lobes in black"},
        "out_name":      {"type": "string",
                          "description": "plot file name under OUTPUT_FILES/plots/"}
      },
      "required": []
    })json");
}

ToolHandler make_visualize_handler(SuiteContext ctx, std::string tool_name) {
    return [ctx, tool_name](const Json& args) -> ToolResult {
        const TraceScan scan = discover_traces(ctx.workspace->output_dir());
        if (scan.traces.empty()) {
            return ToolResult::failure("no traces found under OUTPUT_FILES/ — run the solver "
                                       "first");
        }
        RecordSection rs;
        rs.traces = scan.traces;
        rs.normalization = args.value("normalization", "per_trace") == std::string("global")
                               ? RecordSection::Normalization::global
                               : RecordSection::Normalization::per_trace;
        rs.fill_positive = args.value("fill_positive", true);

        std::string name = args.value("out_name", "record_section.svg");
        if (name.empty() || name.find('/') != std::string::npos ||
            name.find("..") != std::string::npos) {
            return ToolResult::failure("out_name must be a bare file name, got '" + name + "'");
        }
        const fs::path out = ctx.workspace->output_dir() / "plots" / name;
        render_record_section(rs, out);
        ctx.workspace->record("OUTPUT_FILES/plots/" + name, tool_name);

        std::ostringstream text;
        text << "wrote record section with " << rs.traces.size() << " trace(s)";
        if (!scan.warnings.empty()) {
            text << "; " << scan.warnings.size() << " file(s) skipped:";
            for (const auto& w : scan.warnings) {
                text << "\n  " << w;
            }
        }
        return ToolResult::ok(text.str(), {"OUTPUT_FILES/plots/" + name});
    };
}

namespace {

int count_stubs(const Workspace& ws, const char* dir, const std::string& suffix) {
    const fs::path base = ws.output_dir() / dir;
    if (!fs::exists(base)) {
        return 0;
    }
    int count = 0;
    for (const auto& entry : fs::directory_iterator(base)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("proc", 0) == 0 && name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
            ++count;
        }
    }
    return count;
}

} // namespace

int count_partition_stubs(const Workspace& ws) {
    return count_stubs(ws, "MESH", "_partition.txt");
}

int count_database_stubs(const Workspace& ws) {
    return count_stubs(ws, "DATABASES_MPI", "_database.txt");
}

Json cmtsolution_schema() {
    return Json::parse(R"json({
      "type": "object",
      "properties": {
        "event_name":    {"type": "string"},
        "header_line":   {"type": "string",
                          "description": "verbatim PDE line; generated when omitted"},
        "time_shift":    {"type": "number"},
        "half_duration": {"type": "number", "minimum": 0},
        "latitude":      {"type": "number", "minimum": -90, "maximum": 90},
        "longitude":     {"type": "number", "minimum": -180, "exclusiveMaximum": 360},
        "depth_km":      {"type": "number", "minimum": 0},
        "mrr": {"type": "number"}, "mtt": {"type": "number"}, "mpp": {"type": "number"},
        "mrt": {"type": "number"}, "mrp": {"type": "number"}, "mtp": {"type": "number"}
      },
      "required": ["event_name", "half_duration", "latitude", "longitude", "depth_km",
                   "mrr", "mtt", "mpp", "mrt", "mrp", "mtp"]
    })json");
}

Json forcesolution_schema() {
    return Json::parse(R"json({
      "type": "object",
      "properties": {
        "header_line":  {"type": "string"},
        "time_shift":   {"type": "number"},
        "f0_or_hdur":   {"type": "number", "minimum": 0,
                         "description": "f0 in Hz (Cartesian) or half duration in s (globe)"},
        "latitude":     {"type": "number"},
        "longitude":    {"type": "number"},
        "depth_km":     {"type": "number"},
        "factor":       {"type": "number"},
        "direction":    {"type": "array", "minItems": 3, "maxItems": 3,
                         "items": {"type": "number"},
                         "description": "E, N, Z_up components; not all zero"}
      },
      "required": ["latitude", "longitude", "depth_km", "factor", "direction"]
    })json");
}

Json stations_geo_schema() {
    return Json::parse(R"json({
      "type": "object",
      "properties": {
        "stations": {
          "type": "array", "minItems": 1,
          "items": {
            "type": "object",
            "properties": {
              "name":      {"type": "string"},
              "network":   {"type": "string"},
              "latitude":  {"type": "number", "minimum": -90, "maximum": 90},
              "longitude": {"type": "number", "minimum": -180, "exclusiveMaximum": 360},
              "elevation": {"type": "number"},
              "burial":    {"type": "number"}
            },
            "required": ["name", "network", "latitude", "longitude"]
          }
        }
      },
      "required": ["stations"]
    })json");
}

ToolResult write_cmtsolution(const SuiteContext& ctx, const Json& args,
                             const std::string& tool_name) {
    CmtSolution cmt;
    cmt.event_name = args["event_name"].get<std::string>();
    cmt.time_shift = args.value("time_shift", 0.0);
    cmt.half_duration = args["half_duration"].get<double>();
    cmt.latitude = args["latitude"].get<double>();
    cmt.longitude = args["longitude"].get<double>();
    cmt.depth_km = args["depth_km"].get<double>();
    cmt.mrr = args["mrr"].get<double>();
    cmt.mtt = args["mtt"].get<double>();
    cmt.mpp = args["mpp"].get<double>();
    cmt.mrt = args["mrt"].get<double>();
    cmt.mrp = args["mrp"].get<double>();
    cmt.mtp = args["mtp"].get<double>();
    cmt.header_line = args.value(
        "header_line", "PDE " + render_number(cmt.latitude) + " " +
                           render_number(cmt.longitude) + " " + render_number(cmt.depth_km) +
                           " " + cmt.event_name);
    const std::string rel =
        ctx.workspace->write_data_file("CMTSOLUTION", render_cmtsolution(cmt), tool_name);
    std::ostringstream text;
    text << "wrote " << rel << ": " << cmt.event_name << " at (" << render_number(cmt.latitude)
         << ", " << render_number(cmt.longitude) << "), depth " << render_number(cmt.depth_km)
         << " km, half duration " << render_number(cmt.half_duration) << " s";
    return ToolResult::ok(text.str(), {rel});
}

ToolResult write_forcesolution(const SuiteContext& ctx, const Json& args,
                               const std::string& tool_name, ForceLayout layout) {
    ForceSolution force;
    force.header_line = args.value("header_line", "FORCE 001");
    force.time_shift = args.value("time_shift", 0.0);
    force.half_duration_or_f0 = args.value("f0_or_hdur", 0.0);
    force.latitude_or_x = args["latitude"].get<double>();
    force.longitude_or_y = args["longitude"].get<double>();
    force.depth_km_or_z = args["depth_km"].get<double>();
    force.factor = args["factor"].get<double>();
    force.component_dir = {args["direction"][0].get<double>(),
                           args["direction"][1].get<double>(),
                           args["direction"][2].get<double>()};
    const std::string rel = ctx.workspace->write_data_file(
        "FORCESOLUTION", render_forcesolution(force, layout), tool_name);
    return ToolResult::ok("wrote " + rel, {rel});
}

ToolResult write_stations_geo(const SuiteContext& ctx, const Json& args,
                              const std::string& tool_name) {
    StationList stations;
    for (const auto& s : args["stations"]) {
        stations.push_back(Station{s["name"].get<std::string>(),
                                   s["network"].get<std::string>(),
                                   s["latitude"].get<double>(), s["longitude"].get<double>(),
                                   s.value("elevation", 0.0), s.value("burial", 0.0)});
    }
    const std::string rel =
        ctx.workspace->write_data_file("STATIONS", render_stations(stations), tool_name);
    std::ostringstream text;
    text << "wrote " << rel << " with " << stations.size() << " station(s)";
    return ToolResult::ok(text.str(), {rel});
}

std::optional<PointSource> read_point_source(const Workspace& ws, std::string& error) {
    const auto cmt_text = read_file(ws.data_dir() / "CMTSOLUTION");
    if (cmt_text) {
        try {
            const CmtSolution cmt = parse_cmtsolution(*cmt_text);
            return PointSource{cmt.latitude, cmt.longitude, cmt.depth_km, cmt.half_duration,
                               false};
        } catch (const std::exception& e) {
            error = std::string("DATA/CMTSOLUTION unreadable: ") + e.what();
            return std::nullopt;
        }
    }
    const auto force_text = read_file(ws.data_dir() / "FORCESOLUTION");
    if (force_text) {
        // Labeled block: pull the three position lines plus f0/half duration.
        PointSource src;
        src.from_force_file = true;
        std::istringstream in(*force_text);
        std::string line;
        while (std::getline(in, line)) {
            const auto colon = line.find(':');
            if (colon == std::string::npos) {
                continue;
            }
            const std::string key = line.substr(0, colon);
            const double value = std::strtod(line.c_str() + colon + 1, nullptr);
            if (key == "latorUTM" || key == "latitude") {
                src.latitude = value;
            } else if (key == "longorUTM" || key == "longitude") {
                src.longitude = value;
            } else if (key == "depth") {
                src.depth_km = value;
            } else if (key == "f0" || key == "half duration") {
                src.hd_or_f0 = value;
            }
        }
        return src;
    }
    error = "no source file found — run the CMTSOLUTION or FORCESOLUTION tool first";
    return std::nullopt;
}

} // namespace smcp::detail
