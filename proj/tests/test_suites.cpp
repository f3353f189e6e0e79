#include <doctest.h>

#include "specfem_mcp/deck.hpp"
#include "specfem_mcp/seismogram.hpp"
#include "specfem_mcp/sources.hpp"
#include "specfem_mcp/suites.hpp"

#include "test_support.hpp"

#include <set>

using namespace smcp;
namespace tt = smcp::testing;

namespace {

struct SuiteFixture {
    tt::TempDir tmp;
    std::shared_ptr<Workspace> workspace;
    ToolRegistry registry;

    explicit SuiteFixture(Profile profile)
        : tmp(profile_id(profile)),
          workspace(std::make_shared<Workspace>(Workspace::init(tmp.path()))),
          registry(make_registry(profile, SuiteContext{workspace, RunnerConfig{}})) {}

    ToolResult call(const std::string& tool, const Json& args) {
        REQUIRE(registry.find(tool) != nullptr);
        return registry.call(tool, args);
    }
};

Json case1_par_args() {
    return Json::parse(R"({
        "title": "flat-layer control model",
        "nstep": 600, "dt": 0.002,
        "stacey_absorbing": true,
        "materials": [{"rho": 2200, "vp": 2500, "vs": 1200, "q_kappa": 9999, "q_mu": 9999}],
        "internal_mesh": {"xmin": 0, "xmax": 50000, "nx": 200},
        "regions": [{"nxmin": 1, "nxmax": 200, "nzmin": 1, "nzmax": 80, "material": 1}]
    })");
}

Json case1_interfaces_args() {
    return Json::parse(R"({
        "interfaces": [
            {"points": [[0, -20000], [50000, -20000]]},
            {"points": [[0, 0], [50000, 0]]}
        ],
        "layer_elements": [80]
    })");
}

Json small_source_args(double f0) {
    Json args;
    args["sources"] = Json::array(
        {Json{{"xs", 10000.0}, {"zs", -12000.0}, {"f0", f0}, {"factor", 1e10}}});
    return args;
}

Json cmt_args() {
    return Json::parse(R"({
        "event_name": "TEST_EVENT",
        "half_duration": 0.5,
        "latitude": 40.8277, "longitude": 14.138, "depth_km": 2.6,
        "mrr": 2.5e22, "mtt": -1.1e22, "mpp": -1.4e22,
        "mrt": 3.0e21, "mrp": -2.2e21, "mtp": 1.6e21
    })");
}

Json stations3d_args(int n) {
    Json stations = Json::array();
    for (int i = 0; i < n; ++i) {
        stations.push_back(Json{{"name", "ST" + std::to_string(i + 1)},
                                {"network", "IV"},
                                {"latitude", 40.80 + 0.01 * i},
                                {"longitude", 14.10 + 0.008 * i},
                                {"elevation", 20.0 * i},
                                {"burial", 0.0}});
    }
    return Json{{"stations", stations}};
}

Json globe_par_args() {
    return Json::parse(R"({
        "nchunks": 6, "nex_xi": 64, "nex_eta": 64,
        "model_name": "s362ani",
        "oceans": true, "ellipticity": true, "topography": true,
        "gravity": true, "rotation": true, "attenuation": true,
        "record_length_minutes": 2.0, "gpu_mode": true
    })");
}

Json globe_stations_args() {
    Json stations = Json::array();
    const char* nets[2] = {"II", "IU"};
    for (int i = 0; i < 12; ++i) {
        stations.push_back(Json{{"name", "GS" + std::to_string(i + 1)},
                                {"network", nets[i % 2]},
                                {"latitude", -60.0 + 10.0 * i},
                                {"longitude", -170.0 + 28.0 * i},
                                {"elevation", 100.0 * (i % 5)},
                                {"burial", 30.0 * (i % 3)}});
    }
    return Json{{"stations", stations}};
}

std::set<std::string> data_files(const Workspace& ws) {
    std::set<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(ws.data_dir())) {
        files.insert(entry.path().filename().string());
    }
    return files;
}

int count_semd(const Workspace& ws) {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(ws.output_dir())) {
        if (entry.path().extension() == ".semd") {
            ++count;
        }
    }
    return count;
}

} // namespace

TEST_CASE("2d registry matches the published seven-tool catalog") {
    SuiteFixture fx(Profile::specfem2d);
    const auto tools = fx.registry.descriptors();
    REQUIRE(tools.size() == 7);
    const char* expected[] = {
        "specfem2d_generate_par_file",       "specfem2d_generate_source_file",
        "specfem2d_generate_stations_file",  "specfem2d_generate_interfaces_file",
        "specfem2d_run_mesher",              "specfem2d_run_solver",
        "specfem2d_visualize",
    };
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(tools[i].name == expected[i]);
        CHECK(tools[i].input_schema["type"] == "object");
        CHECK(!tools[i].description.empty());
    }
}

TEST_CASE("2d par file tool writes the deck and polices constraints") {
    SuiteFixture fx(Profile::specfem2d);

    Json nine = case1_par_args();
    nine["materials"] = Json::array();
    for (int i = 0; i < 9; ++i) {
        Json m = Json{{"rho", 2000.0 + 50 * i}, {"vp", 1600.0 + 150 * i},
                      {"vs", 800.0 + 100 * i}, {"q_kappa", 60.0 + 10 * i},
                      {"q_mu", 40.0 + 10 * i}};
        if (i == 4) { // absorptive reservoir layer
            m["vp"] = 2200.0;
            m["q_kappa"] = 10.0;
            m["q_mu"] = 10.0;
        }
        nine["materials"].push_back(m);
    }
    nine["gpu_mode"] = true;
    nine["output_snapshots"] = true;

    const ToolResult result = fx.call("specfem2d_generate_par_file", nine);
    REQUIRE(!result.is_error);
    const std::string par = tt::read_file(fx.workspace->data_dir() / "Par_file");
    CHECK(par.find("nbmodels                        = 9") != std::string::npos);
    CHECK(par.find("2200.0") != std::string::npos);
    CHECK(par.find(" 10.0 10.0") != std::string::npos);
    CHECK(par.find("GPU_MODE                        = .true.") != std::string::npos);
    CHECK(par.find("STACEY_ABSORBING_CONDITIONS     = .true.") != std::string::npos);

    Json conflicted = case1_par_args();
    conflicted["pml_boundary"] = true;
    const ToolResult bad = fx.call("specfem2d_generate_par_file", conflicted);
    CHECK(bad.is_error);
    CHECK(bad.text().find("mutually exclusive") != std::string::npos);

    Json invalid = case1_par_args();
    invalid["dt"] = -1.0;
    CHECK(fx.call("specfem2d_generate_par_file", invalid).is_error);
}

TEST_CASE("2d source tool: valid, fixture-level and invalid inputs") {
    SuiteFixture fx(Profile::specfem2d);
    const ToolResult ok = fx.call("specfem2d_generate_source_file",
                                  Json{{"sources", Json::array({Json{{"xs", 6000.0},
                                                                     {"zs", -50.0},
                                                                     {"f0", 15.0}}})}});
    REQUIRE(!ok.is_error);
    CHECK(tt::read_file(fx.workspace->data_dir() / "SOURCE")
              .find("xs                              = 6000.0") != std::string::npos);

    const ToolResult bad =
        fx.call("specfem2d_generate_source_file",
                Json{{"sources", Json::array({Json{{"xs", 0.0}, {"zs", 0.0}, {"f0", -2.0}}})}});
    CHECK(bad.is_error);
    CHECK(fx.call("specfem2d_generate_source_file", Json{{"sources", Json::array()}}).is_error);
}

TEST_CASE("2d stations tool concatenates surface and VSP arrays") {
    SuiteFixture fx(Profile::specfem2d);
    Json args = Json::parse(R"({"arrays": [
        {"network": "AA", "linspace": {"n": 304, "start": [0, 0], "end": [12000, 0]}},
        {"network": "BB", "linspace": {"n": 131, "start": [4000, -500], "end": [2500, -5500]}},
        {"network": "CC", "linspace": {"n": 131, "start": [8000, -500], "end": [6117, -5500]}}
    ]})");
    const ToolResult result = fx.call("specfem2d_generate_stations_file", args);
    REQUIRE(!result.is_error);
    const std::string text = tt::read_file(fx.workspace->data_dir() / "STATIONS");
    std::size_t lines = 0;
    for (char c : text) {
        lines += c == '\n';
    }
    CHECK(lines == 566);

    // duplicates across arrays are named
    Json dup = Json::parse(R"({"arrays": [
        {"network": "AA", "linspace": {"n": 3, "start": [0, 0], "end": [100, 0]}},
        {"network": "AA", "linspace": {"n": 3, "start": [0, -10], "end": [100, -10]}}
    ]})");
    const ToolResult bad = fx.call("specfem2d_generate_stations_file", dup);
    CHECK(bad.is_error);
    CHECK(bad.text().find("AA.S0001") != std::string::npos);

    CHECK(fx.call("specfem2d_generate_stations_file",
                  Json::parse(R"({"arrays":[{"network":"AA","linspace":
                      {"n": 0, "start": [0,0], "end": [1,0]}}]})"))
              .is_error);
}

TEST_CASE("2d interfaces tool accepts the control model, rejects bad x") {
    SuiteFixture fx(Profile::specfem2d);
    CHECK(!fx.call("specfem2d_generate_interfaces_file", case1_interfaces_args()).is_error);

    Json bad = case1_interfaces_args();
    bad["interfaces"][1]["points"] = Json::array({Json::array({0, 0}),
                                                  Json::array({-5, 0}),
                                                  Json::array({50000, 0})});
    const ToolResult result = fx.call("specfem2d_generate_interfaces_file", bad);
    CHECK(result.is_error);
    CHECK(result.text().find("interface 2") != std::string::npos);
}

TEST_CASE("2d pipeline: ordering guard, mesher checks, solver, visualize") {
    SuiteFixture fx(Profile::specfem2d);

    // solver before mesher on a fresh workspace
    const ToolResult premature = fx.call("specfem2d_run_solver", Json::object());
    CHECK(premature.is_error);
    CHECK(premature.text().find("specfem2d_run_mesher") != std::string::npos);

    // mesher without Par_file
    const ToolResult no_par = fx.call("specfem2d_run_mesher", Json::object());
    CHECK(no_par.is_error);
    CHECK(no_par.text().find("DATA/Par_file") != std::string::npos);

    REQUIRE(!fx.call("specfem2d_generate_par_file", case1_par_args()).is_error);
    const ToolResult no_ifaces = fx.call("specfem2d_run_mesher", Json::object());
    CHECK(no_ifaces.is_error);
    CHECK(no_ifaces.text().find("interfaces.dat") != std::string::npos);

    REQUIRE(!fx.call("specfem2d_generate_interfaces_file", case1_interfaces_args()).is_error);
    const ToolResult meshed = fx.call("specfem2d_run_mesher", Json::object());
    REQUIRE(!meshed.is_error);
    CHECK(std::filesystem::exists(fx.workspace->output_dir() / "mesher_summary.txt"));

    // solver still needs SOURCE and STATIONS
    const ToolResult no_source = fx.call("specfem2d_run_solver", Json::object());
    CHECK(no_source.is_error);
    CHECK(no_source.text().find("DATA/SOURCE") != std::string::npos);

    REQUIRE(!fx.call("specfem2d_generate_source_file", small_source_args(2.0)).is_error);
    REQUIRE(!fx.call("specfem2d_generate_stations_file",
                     Json::parse(R"({"arrays":[{"network":"AA",
                         "linspace": {"n": 5, "start": [0,0], "end": [50000,0]}}]})"))
                 .is_error);

    const ToolResult solved = fx.call("specfem2d_run_solver", Json::object());
    REQUIRE(!solved.is_error);
    CHECK(count_semd(*fx.workspace) == 5);
    CHECK(solved.text().find("2500") != std::string::npos); // documented mock velocity

    const ToolResult plotted = fx.call("specfem2d_visualize", Json::object());
    REQUIRE(!plotted.is_error);
    CHECK(std::filesystem::exists(fx.workspace->output_dir() / "plots/record_section.svg"));
}

TEST_CASE("2d solver reports a CFL violation with the stable bound") {
    SuiteFixture fx(Profile::specfem2d);
    Json par = case1_par_args();
    par["dt"] = 1.0; // way past stability for a 50 km / 200-node grid
    REQUIRE(!fx.call("specfem2d_generate_par_file", par).is_error);
    REQUIRE(!fx.call("specfem2d_generate_interfaces_file", case1_interfaces_args()).is_error);
    REQUIRE(!fx.call("specfem2d_generate_source_file", small_source_args(2.0)).is_error);
    REQUIRE(!fx.call("specfem2d_generate_stations_file",
                     Json::parse(R"({"arrays":[{"network":"AA",
                         "linspace": {"n": 3, "start": [0,0], "end": [50000,0]}}]})"))
                 .is_error);
    REQUIRE(!fx.call("specfem2d_run_mesher", Json::object()).is_error);
    const ToolResult result = fx.call("specfem2d_run_solver", Json::object());
    CHECK(result.is_error);
    CHECK(result.text().find("max stable dt") != std::string::npos);
}

TEST_CASE("2d generate tools leave exactly the declared files, all in the manifest") {
    SuiteFixture fx(Profile::specfem2d);
    CHECK(data_files(*fx.workspace).empty());
    fx.call("specfem2d_generate_par_file", case1_par_args());
    CHECK(data_files(*fx.workspace) == std::set<std::string>{"Par_file"});
    fx.call("specfem2d_generate_source_file", small_source_args(2.0));
    CHECK(data_files(*fx.workspace) == std::set<std::string>{"Par_file", "SOURCE"});
    REQUIRE(fx.workspace->manifest().size() == 2);
    CHECK(fx.workspace->manifest()[0].tool == "specfem2d_generate_par_file");

    // regenerating overwrites and appends a new manifest entry
    fx.call("specfem2d_generate_par_file", case1_par_args());
    CHECK(data_files(*fx.workspace).size() == 2);
    CHECK(fx.workspace->manifest().size() == 3);
}

TEST_CASE("3d registry matches the published nine-tool catalog") {
    SuiteFixture fx(Profile::specfem3d);
    const auto tools = fx.registry.descriptors();
    REQUIRE(tools.size() == 9);
    const char* expected[] = {
        "specfem3d_generate_par_file",
        "specfem3d_generate_cmtsolution_file",
        "specfem3d_generate_forcesolution_file",
        "specfem3d_generate_stations_file",
        "specfem3d_run_mesh_generator",
        "specfem3d_decompose_mesh",
        "specfem3d_generate_databases",
        "specfem3d_run_solver",
        "specfem3d_visualize",
    };
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(tools[i].name == expected[i]);
    }
}

TEST_CASE("3d generate tools: par file, cmt, force, stations") {
    SuiteFixture fx(Profile::specfem3d);
    Json par = Json::parse(R"({
        "nproc": 4, "nstep": 40000, "dt": 0.001,
        "utm_zone": 33, "suppress_utm": false,
        "attenuation": true, "use_olsen_attenuation": true,
        "pml_conditions": true, "movie_surface": true
    })");
    REQUIRE(!fx.call("specfem3d_generate_par_file", par).is_error);
    const std::string text = tt::read_file(fx.workspace->data_dir() / "Par_file");
    CHECK(text.find("UTM_PROJECTION_ZONE             = 33") != std::string::npos);
    CHECK(text.find("USE_OLSEN_ATTENUATION           = .true.") != std::string::npos);
    // derived check: the written file re-parses to the same deck
    CHECK(parse_deck(text) == parse_deck(render_deck(parse_deck(text))));

    Json both = par;
    both["stacey_conditions"] = true;
    CHECK(fx.call("specfem3d_generate_par_file", both).is_error);

    REQUIRE(!fx.call("specfem3d_generate_cmtsolution_file", cmt_args()).is_error);
    const std::string cmt = tt::read_file(fx.workspace->data_dir() / "CMTSOLUTION");
    CHECK(cmt.find("half duration:  0.5") != std::string::npos);
    CHECK(parse_cmtsolution(cmt).latitude == 40.8277);

    Json bad_cmt = cmt_args();
    bad_cmt["half_duration"] = -1.0;
    CHECK(fx.call("specfem3d_generate_cmtsolution_file", bad_cmt).is_error);
    Json far_north = cmt_args();
    far_north["latitude"] = 95.0;
    CHECK(fx.call("specfem3d_generate_cmtsolution_file", far_north).is_error);

    Json force = Json::parse(R"({
        "latitude": 40.8, "longitude": 14.1, "depth_km": 1.0,
        "factor": 1e15, "direction": [0, 0, 1]
    })");
    REQUIRE(!fx.call("specfem3d_generate_forcesolution_file", force).is_error);
    CHECK(tt::read_file(fx.workspace->data_dir() / "FORCESOLUTION").find("latorUTM") !=
          std::string::npos);
    force["direction"] = {0, 0, 0};
    CHECK(fx.call("specfem3d_generate_forcesolution_file", force).is_error);

    REQUIRE(!fx.call("specfem3d_generate_stations_file", stations3d_args(9)).is_error);
    Json dup = stations3d_args(2);
    dup["stations"][1]["name"] = "ST1";
    CHECK(fx.call("specfem3d_generate_stations_file", dup).is_error);
    Json off_planet = stations3d_args(1);
    off_planet["stations"][0]["latitude"] = 91.0;
    CHECK(fx.call("specfem3d_generate_stations_file", off_planet).is_error);
}

TEST_CASE("3d stage chain enforces order and counts partitions") {
    SuiteFixture fx(Profile::specfem3d);
    REQUIRE(!fx.call("specfem3d_generate_par_file",
                     Json::parse(R"({"nstep": 100, "dt": 0.001})"))
                 .is_error);
    REQUIRE(!fx.call("specfem3d_generate_cmtsolution_file", cmt_args()).is_error);
    REQUIRE(!fx.call("specfem3d_generate_stations_file", stations3d_args(3)).is_error);

    const ToolResult premature = fx.call("specfem3d_decompose_mesh", Json{{"nproc", 4}});
    CHECK(premature.is_error);
    CHECK(premature.text().find("specfem3d_run_mesh_generator") != std::string::npos);

    REQUIRE(!fx.call("specfem3d_run_mesh_generator", Json::object()).is_error);
    CHECK(fx.call("specfem3d_decompose_mesh", Json{{"nproc", 0}}).is_error);
    REQUIRE(!fx.call("specfem3d_decompose_mesh", Json{{"nproc", 4}}).is_error);
    int partitions = 0;
    for (const auto& entry :
         std::filesystem::directory_iterator(fx.workspace->output_dir() / "MESH")) {
        partitions += entry.path().filename().string().find("_partition") != std::string::npos;
    }
    CHECK(partitions == 4);

    REQUIRE(!fx.call("specfem3d_generate_databases", Json::object()).is_error);
    int databases = 0;
    for (const auto& entry :
         std::filesystem::directory_iterator(fx.workspace->output_dir() / "DATABASES_MPI")) {
        databases += entry.path().filename().string().find("_database") != std::string::npos;
    }
    CHECK(databases == 4);

    const ToolResult solved = fx.call("specfem3d_run_solver", Json::object());
    REQUIRE(!solved.is_error);
    CHECK(count_semd(*fx.workspace) == 9); // 3 stations x 3 components
    CHECK(solved.text().find("slice") != std::string::npos);

    CHECK(!fx.call("specfem3d_visualize", Json{{"normalization", "global"}}).is_error);
}

TEST_CASE("3d out-of-order databases and solver calls name the missing stage") {
    SuiteFixture fx(Profile::specfem3d);
    const ToolResult databases = fx.call("specfem3d_generate_databases", Json::object());
    CHECK(databases.is_error);
    CHECK(databases.text().find("specfem3d_decompose_mesh") != std::string::npos);
    const ToolResult solver = fx.call("specfem3d_run_solver", Json::object());
    CHECK(solver.is_error);
    CHECK(solver.text().find("specfem3d_generate_databases") != std::string::npos);
}

TEST_CASE("globe registry matches the published seven-tool catalog") {
    SuiteFixture fx(Profile::specfem3d_globe);
    const auto tools = fx.registry.descriptors();
    REQUIRE(tools.size() == 7);
    const char* expected[] = {
        "specfem3d_globe_generate_par_file",
        "specfem3d_globe_generate_cmtsolution_file",
        "specfem3d_globe_generate_forcesolution_file",
        "specfem3d_globe_generate_stations_file",
        "specfem3d_globe_run_mesher",
        "specfem3d_globe_run_solver",
        "specfem3d_globe_visualize",
    };
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(tools[i].name == expected[i]);
    }
}

TEST_CASE("globe suite runs the full mock pipeline") {
    SuiteFixture fx(Profile::specfem3d_globe);

    Json mismatch = globe_par_args();
    mismatch["nex_eta"] = 128;
    CHECK(fx.call("specfem3d_globe_generate_par_file", mismatch).is_error);

    Json lint = globe_par_args();
    lint["nchunks"] = 1;
    lint["nex_xi"] = 63;
    lint["nex_eta"] = 63;
    const ToolResult linted = fx.call("specfem3d_globe_generate_par_file", lint);
    CHECK(linted.is_error);
    CHECK(linted.text().find("multiple of 8") != std::string::npos);

    REQUIRE(!fx.call("specfem3d_globe_generate_par_file", globe_par_args()).is_error);

    // mesher needs CMTSOLUTION and STATIONS too
    const ToolResult missing = fx.call("specfem3d_globe_run_mesher", Json::object());
    CHECK(missing.is_error);
    CHECK(missing.text().find("DATA/CMTSOLUTION") != std::string::npos);

    Json tohoku = cmt_args();
    tohoku["event_name"] = "TOHOKU_2011";
    tohoku["latitude"] = 38.30;
    tohoku["longitude"] = 142.37;
    tohoku["depth_km"] = 20.0;
    tohoku["half_duration"] = 15.0;
    REQUIRE(!fx.call("specfem3d_globe_generate_cmtsolution_file", tohoku).is_error);
    REQUIRE(!fx.call("specfem3d_globe_generate_stations_file", globe_stations_args())
                 .is_error);

    const ToolResult before_mesh = fx.call("specfem3d_globe_run_solver", Json::object());
    CHECK(before_mesh.is_error);
    CHECK(before_mesh.text().find("specfem3d_globe_run_mesher") != std::string::npos);

    const ToolResult meshed = fx.call("specfem3d_globe_run_mesher", Json::object());
    REQUIRE(!meshed.is_error);
    CHECK(meshed.text().find("nproc = NCHUNKS*NPROC_XI*NPROC_ETA = 6") != std::string::npos);

    const ToolResult solved = fx.call("specfem3d_globe_run_solver", Json::object());
    REQUIRE(!solved.is_error);
    CHECK(count_semd(*fx.workspace) == 36);

    const ToolResult plotted =
        fx.call("specfem3d_globe_visualize", Json{{"out_name", "globe.svg"}});
    REQUIRE(!plotted.is_error);
    const std::string svg = tt::read_file(fx.workspace->output_dir() / "plots/globe.svg");
    CHECK(svg.find("MXN") != std::string::npos);
    CHECK(svg.find("MXE") != std::string::npos);
    CHECK(svg.find("MXZ") != std::string::npos);

    // repeat visualization is byte-identical
    REQUIRE(!fx.call("specfem3d_globe_visualize", Json{{"out_name", "globe2.svg"}}).is_error);
    CHECK(svg == tt::read_file(fx.workspace->output_dir() / "plots/globe2.svg"));
}

TEST_CASE("globe solver re-checks the mesher's nproc") {
    SuiteFixture fx(Profile::specfem3d_globe);
    REQUIRE(!fx.call("specfem3d_globe_generate_par_file", globe_par_args()).is_error);
    Json tohoku = cmt_args();
    tohoku["half_duration"] = 15.0;
    REQUIRE(!fx.call("specfem3d_globe_generate_cmtsolution_file", tohoku).is_error);
    REQUIRE(!fx.call("specfem3d_globe_generate_stations_file", globe_stations_args())
                 .is_error);
    REQUIRE(!fx.call("specfem3d_globe_run_mesher", Json::object()).is_error);

    // regenerate the Par_file with a different process layout
    Json repartitioned = globe_par_args();
    repartitioned["nproc_xi"] = 2;
    repartitioned["nproc_eta"] = 2;
    repartitioned["nex_xi"] = 64;
    repartitioned["nex_eta"] = 64;
    REQUIRE(!fx.call("specfem3d_globe_generate_par_file", repartitioned).is_error);

    const ToolResult solved = fx.call("specfem3d_globe_run_solver", Json::object());
    CHECK(solved.is_error);
    CHECK(solved.text().find("re-run specfem3d_globe_run_mesher") != std::string::npos);
}

TEST_CASE("visualize fails cleanly on an empty OUTPUT_FILES") {
    SuiteFixture fx(Profile::specfem2d);
    const ToolResult result = fx.call("specfem2d_visualize", Json::object());
    CHECK(result.is_error);
    CHECK(result.text().find("no traces") != std::string::npos);
}

TEST_CASE("schema violations write nothing to the workspace") {
    SuiteFixture fx(Profile::specfem2d);
    const ToolResult result =
        fx.call("specfem2d_generate_stations_file", Json{{"arrays", "not-an-array"}});
    CHECK(result.is_error);
    CHECK(data_files(*fx.workspace).empty());
    CHECK(fx.workspace->manifest().empty());
}

TEST_CASE("real mode without binaries names the expected path") {
    tt::TempDir tmp("realmode");
    auto ws = std::make_shared<Workspace>(Workspace::init(tmp.path()));
    RunnerConfig runner;
    runner.mode = RunMode::real_binaries;
    runner.bin_dir = "/no/such/bin";
    ToolRegistry registry = make_registry_2d(SuiteContext{ws, runner});
    REQUIRE(!registry.call("specfem2d_generate_par_file", case1_par_args()).is_error);
    REQUIRE(!registry.call("specfem2d_generate_interfaces_file", case1_interfaces_args())
                 .is_error);
    const ToolResult result = registry.call("specfem2d_run_mesher", Json::object());
    CHECK(result.is_error);
    CHECK(result.text().find("/no/such/bin/xmeshfem2D") != std::string::npos);
}

TEST_CASE("3d mesh generator requires the Par_file") {
    SuiteFixture fx(Profile::specfem3d);
    const ToolResult result = fx.call("specfem3d_run_mesh_generator", Json::object());
    CHECK(result.is_error);
    CHECK(result.text().find("DATA/Par_file") != std::string::npos);
}

TEST_CASE("sessions resume in a pre-populated workspace") {
    // prerequisite checks are file-existence based, so a workspace whose
    // DATA/ was written elsewhere runs without the generate tools
    SuiteFixture fx(Profile::specfem2d);
    for (const char* file : {"Par_file", "SOURCE", "STATIONS", "interfaces.dat"}) {
        tt::write_file(fx.workspace->data_dir() / file,
                       tt::read_file(tt::source_dir() / "fixtures/case1" / file));
    }
    // shorten the run: patch NSTEP down in the copied deck
    std::string par = tt::read_file(fx.workspace->data_dir() / "Par_file");
    const auto pos = par.find("= 9000");
    REQUIRE(pos != std::string::npos);
    par.replace(pos, 6, "= 300 ");
    tt::write_file(fx.workspace->data_dir() / "Par_file", par);

    REQUIRE(!fx.call("specfem2d_run_mesher", Json::object()).is_error);
    REQUIRE(!fx.call("specfem2d_run_solver", Json::object()).is_error);
    CHECK(count_semd(*fx.workspace) == 201);
}

TEST_CASE("external meshes pass through to the deck, mock solver declines them") {
    SuiteFixture fx(Profile::specfem2d);
    for (const char* file : {"salt.mesh", "salt.nodes", "salt.materials"}) {
        tt::write_file(fx.workspace->root() / "meshes" / file, "opaque user mesh data\n");
    }
    Json args = Json::parse(R"json({
        "nstep": 100, "dt": 0.001, "pml_boundary": true,
        "materials": [
            {"rho": 1000, "vp": 1500, "vs": 0,    "q_kappa": 9999, "q_mu": 9999},
            {"rho": 2100, "vp": 5000, "vs": 2700, "q_kappa": 200,  "q_mu": 100}
        ],
        "external_mesh": {}
    })json");
    args["external_mesh"] = Json{
        {"mesh_file", (fx.workspace->root() / "meshes/salt.mesh").string()},
        {"nodes_coords_file", (fx.workspace->root() / "meshes/salt.nodes").string()},
        {"materials_file", (fx.workspace->root() / "meshes/salt.materials").string()}};
    REQUIRE(!fx.call("specfem2d_generate_par_file", args).is_error);
    const std::string par = tt::read_file(fx.workspace->data_dir() / "Par_file");
    CHECK(par.find("read_external_mesh              = .true.") != std::string::npos);
    CHECK(par.find("salt.mesh") != std::string::npos);

    REQUIRE(!fx.call("specfem2d_run_mesher", Json::object()).is_error);
    REQUIRE(!fx.call("specfem2d_generate_source_file", small_source_args(9.0)).is_error);
    REQUIRE(!fx.call("specfem2d_generate_stations_file",
                     Json::parse(R"json({"arrays":[{"network":"AA",
                         "linspace": {"n": 3, "start": [0,0], "end": [4800,0]}}]})json"))
                 .is_error);
    const ToolResult solved = fx.call("specfem2d_run_solver", Json::object());
    CHECK(solved.is_error);
    CHECK(solved.text().find("external") != std::string::npos);
}
