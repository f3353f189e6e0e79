#include <doctest.h>

#include "specfem_mcp/geo.hpp"
#include "specfem_mcp/mock_solver.hpp"
#include "specfem_mcp/record_section.hpp"
#include "specfem_mcp/seismogram.hpp"

#include "test_support.hpp"

#include <cmath>
#include <regex>

using namespace smcp;
namespace tt = smcp::testing;

namespace {

Seismogram make_trace(const std::string& net, const std::string& sta, const std::string& cmp,
                      std::vector<double> samples, double dt = 0.01) {
    Seismogram s;
    s.network = net;
    s.station = sta;
    s.component = cmp;
    s.dt = dt;
    s.samples = std::move(samples);
    return s;
}

std::vector<double> wavelet_samples(int n, double scale) {
    std::vector<double> samples(n);
    for (int i = 0; i < n; ++i) {
        samples[i] = scale * ricker(i * 0.01, 8.0);
    }
    return samples;
}

// Largest |y - baseline| over each polyline in the SVG body, in drawing
// order.
std::vector<double> polyline_amplitudes(const std::string& svg) {
    std::vector<double> result;
    const std::regex poly_re("<polyline[^>]*points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), poly_re);
         it != std::sregex_iterator(); ++it) {
        const std::string points = (*it)[1];
        double min_y = 1e300;
        double max_y = -1e300;
        const std::regex pair_re("[0-9.]+,(-?[0-9.]+)");
        for (auto p = std::sregex_iterator(points.begin(), points.end(), pair_re);
             p != std::sregex_iterator(); ++p) {
            const double y = std::stod((*p)[1]);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
        result.push_back((max_y - min_y) / 2.0);
    }
    return result;
}

} // namespace

TEST_CASE("parse_trace reads the minimal two-row file") {
    const Seismogram s = parse_trace("0.0 0.0\n0.001 1.0\n");
    CHECK(s.t0 == 0.0);
    CHECK(s.dt == 0.001);
    CHECK(s.samples == std::vector<double>{0.0, 1.0});
}

TEST_CASE("parse_trace rejects bad input") {
    CHECK_THROWS_WITH(parse_trace("0.0 0.0\n"), doctest::Contains("need at least 2"));
    CHECK_THROWS_WITH(parse_trace("0.0 0.0\n0.001 1.0\n0.0025 2.0\n"),
                      doctest::Contains("row 3"));
    CHECK_THROWS(parse_trace("0.0\n0.001\n"));
    CHECK_THROWS(parse_trace("0.0 1.0\n0.0 2.0\n")); // non-increasing
}

TEST_CASE("trace text round trip is exact on grid samples") {
    std::mt19937 rng(31415);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> samples;
        const int n = 2 + static_cast<int>(rng() % 50);
        for (int k = 0; k < n; ++k) {
            samples.push_back(tt::grid_double(rng));
        }
        const std::string text = render_trace_samples(0.0, 0.002, samples);
        const Seismogram back = parse_trace(text);
        CHECK(back.samples == samples);
        CHECK(back.dt == doctest::Approx(0.002).epsilon(1e-9));
    }
}

TEST_CASE("mock solver traces survive the file round trip") {
    tt::TempDir tmp("trace");
    Workspace ws = Workspace::init(tmp.path());
    MockSolverConfig cfg;
    cfg.nx = 64;
    cfg.nz = 64;
    cfg.xmin = 0;
    cfg.xmax = 640;
    cfg.zmin = -640;
    cfg.zmax = 0;
    fill_constant_velocity(cfg, 1000.0);
    cfg.source = {};
    cfg.source.xs = 200;
    cfg.source.zs = -300;
    cfg.source.f0 = 10.0;
    cfg.dt = 0.9 * max_stable_dt(cfg);
    cfg.nstep = 64;
    cfg.stations = {{"S0001", "AA", 400, -300, 0, 0}};
    mock_solve(cfg, ws);

    const Seismogram s = parse_trace_file(ws.output_dir() / "AA.S0001.BXZ.semd");
    CHECK(s.network == "AA");
    CHECK(s.station == "S0001");
    CHECK(s.component == "BXZ");
    CHECK(s.dt == doctest::Approx(cfg.dt).epsilon(1e-9));
    CHECK(s.samples.size() == static_cast<std::size_t>(cfg.nstep));
}

TEST_CASE("discover_traces orders, tolerates corruption, skips other files") {
    tt::TempDir tmp("disc");
    Workspace ws = Workspace::init(tmp.path());

    CHECK(discover_traces(ws.output_dir()).traces.empty());

    // written shuffled on purpose
    tt::write_file(ws.output_dir() / "IU.B.MXZ.semd", "0 0\n0.5 1\n");
    tt::write_file(ws.output_dir() / "AA.Z.BXZ.semd", "0 0\n0.5 1\n");
    tt::write_file(ws.output_dir() / "AA.A.BXZ.semd", "0 0\n0.5 1\n");
    tt::write_file(ws.output_dir() / "AA.A.BXE.semv", "0 0\n0.5 1\n");
    tt::write_file(ws.output_dir() / "AA.corrupt.BXZ.semd", "0 0\nnot numbers\n");
    tt::write_file(ws.output_dir() / "notes.txt", "not a trace");

    const TraceScan scan = discover_traces(ws.output_dir());
    REQUIRE(scan.traces.size() == 4);
    CHECK(scan.traces[0].station == "A");
    CHECK(scan.traces[0].component == "BXE");
    CHECK(scan.traces[1].component == "BXZ");
    CHECK(scan.traces[2].station == "Z");
    CHECK(scan.traces[3].network == "IU");
    REQUIRE(scan.warnings.size() == 1);
    CHECK(scan.warnings[0].find("AA.corrupt.BXZ.semd") != std::string::npos);

    CHECK_THROWS(discover_traces(tmp.path() / "missing"));
}

TEST_CASE("record section rejects empty and mixed-dt input") {
    RecordSection empty;
    tt::TempDir tmp("rs");
    CHECK_THROWS(render_record_section(empty, tmp.path() / "x.svg"));

    RecordSection mixed;
    mixed.traces = {make_trace("AA", "S1", "BXZ", {0, 1, 0}, 0.01),
                    make_trace("AA", "S2", "BXZ", {0, 1, 0}, 0.02)};
    CHECK_THROWS(render_record_section(mixed, tmp.path() / "x.svg"));
}

TEST_CASE("record section output is deterministic and labeled") {
    tt::TempDir tmp("rs2");
    RecordSection rs;
    for (int sta = 0; sta < 12; ++sta) {
        for (const char* cmp : {"MXE", "MXN", "MXZ"}) {
            rs.traces.push_back(make_trace("II", "S" + std::to_string(sta), cmp,
                                           wavelet_samples(200, 1.0 + sta)));
        }
    }
    const auto path_a = render_record_section(rs, tmp.path() / "a.svg");
    render_record_section(rs, tmp.path() / "b.svg");
    const std::string svg_a = tt::read_file(path_a);
    CHECK(svg_a == tt::read_file(tmp.path() / "b.svg"));

    CHECK(svg_a.find("II.S0.MXE") != std::string::npos);
    CHECK(svg_a.find("II.S11.MXZ") != std::string::npos);
    CHECK(svg_a.find("Time (s)") != std::string::npos);
    CHECK(polyline_amplitudes(svg_a).size() == 36);
    CHECK(svg_a.find("<path fill=\"#000000\"") != std::string::npos);
}

TEST_CASE("single zero trace draws a flat line with no fill") {
    tt::TempDir tmp("rs3");
    RecordSection rs;
    rs.traces = {make_trace("AA", "S1", "BXZ", std::vector<double>(50, 0.0))};
    const auto path = render_record_section(rs, tmp.path() / "zero.svg");
    const std::string svg = tt::read_file(path);
    CHECK(svg.find("<path fill=\"#000000\"") == std::string::npos);
    const auto amplitudes = polyline_amplitudes(svg);
    REQUIRE(amplitudes.size() == 1);
    CHECK(amplitudes[0] == doctest::Approx(0.0));
}

TEST_CASE("per-trace vs global normalization differ only in amplitude") {
    tt::TempDir tmp("rs4");
    RecordSection rs;
    rs.traces = {make_trace("AA", "S1", "BXZ", wavelet_samples(300, 1.0)),
                 make_trace("AA", "S2", "BXZ", wavelet_samples(300, 2.0))};
    rs.fill_positive = false;

    rs.normalization = RecordSection::Normalization::per_trace;
    const std::string per = tt::read_file(render_record_section(rs, tmp.path() / "p.svg"));
    rs.normalization = RecordSection::Normalization::global;
    const std::string glob = tt::read_file(render_record_section(rs, tmp.path() / "g.svg"));

    const auto per_amp = polyline_amplitudes(per);
    const auto glob_amp = polyline_amplitudes(glob);
    REQUIRE(per_amp.size() == 2);
    REQUIRE(glob_amp.size() == 2);
    // per-trace: both wiggles fill the row; global: the weaker trace
    // shrinks by its amplitude ratio.
    CHECK(per_amp[0] == doctest::Approx(per_amp[1]).epsilon(0.01));
    CHECK(glob_amp[0] == doctest::Approx(0.5 * glob_amp[1]).epsilon(0.02));
}

TEST_CASE("great-circle helpers give textbook distances") {
    // equator quarter turn
    CHECK(great_circle_distance_m(0, 0, 0, 90) ==
          doctest::Approx(kEarthRadiusM * std::numbers::pi / 2).epsilon(1e-9));
    // pole to pole
    CHECK(great_circle_distance_m(90, 0, -90, 0) ==
          doctest::Approx(kEarthRadiusM * std::numbers::pi).epsilon(1e-9));
    CHECK(great_circle_distance_m(12.3, 45.6, 12.3, 45.6) == doctest::Approx(0.0));
    // Tohoku to a US southwest station is roughly 9200 km
    const double d = great_circle_distance_m(38.30, 142.37, 34.95, -106.46);
    CHECK(d > 8.8e6);
    CHECK(d < 9.7e6);
    // due-east bearing on the equator
    CHECK(initial_bearing_rad(0, 0, 0, 10) ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
}
