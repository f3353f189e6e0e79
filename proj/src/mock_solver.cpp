#include "specfem_mcp/mock_solver.hpp"

#include "specfem_mcp/deck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace smcp {

namespace {

struct Grid {
    double hx;
    double hz;

    static Grid of(const MockSolverConfig& cfg) {
        return {(cfg.xmax - cfg.xmin) / (cfg.nx - 1), (cfg.zmax - cfg.zmin) / (cfg.nz - 1)};
    }
};

int clamp_interior(int i, int n) {
    return std::clamp(i, 1, n - 2);
}

int nearest_node(double coord, double origin, double h, int n) {
    return clamp_interior(static_cast<int>(std::lround((coord - origin) / h)), n);
}

} // namespace

double ricker(double t, double f0) {
    const double t0 = 1.2 / f0;
    double a = std::numbers::pi * f0 * (t - t0);
    a *= a;
    return (1.0 - 2.0 * a) * std::exp(-a);
}

double gaussian_stf(double t, double f0) {
    const double t0 = 1.2 / f0;
    double a = std::numbers::pi * f0 * (t - t0);
    a *= a;
    return std::exp(-a);
}

void fill_constant_velocity(MockSolverConfig& cfg, double v) {
    cfg.velocity.assign(static_cast<std::size_t>(cfg.nx) * cfg.nz, v);
}

double max_stable_dt(const MockSolverConfig& cfg) {
    const Grid g = Grid::of(cfg);
    const double vmax = *std::max_element(cfg.velocity.begin(), cfg.velocity.end());
    return 0.7 * std::min(g.hx, g.hz) / (vmax * std::sqrt(2.0));
}

void validate(const MockSolverConfig& cfg) {
    if (cfg.nx < 16 || cfg.nz < 16) {
        throw std::invalid_argument("mock grid must be at least 16x16 nodes");
    }
    if (!(cfg.xmax > cfg.xmin) || !(cfg.zmax > cfg.zmin)) {
        throw std::invalid_argument("mock extent is empty");
    }
    if (cfg.velocity.size() != static_cast<std::size_t>(cfg.nx) * cfg.nz) {
        throw std::invalid_argument("velocity field size does not match the grid");
    }
    for (double v : cfg.velocity) {
        if (!(v > 0)) {
            throw std::invalid_argument("velocity field must be strictly positive everywhere");
        }
    }
    if (cfg.stations.empty()) {
        throw std::invalid_argument("mock run needs at least one station");
    }
    if (cfg.nstep < 1) {
        throw std::invalid_argument("nstep must be >= 1");
    }
    validate(cfg.source);
    if (!(cfg.dt > 0)) {
        throw std::invalid_argument("dt must be > 0");
    }
    const double limit = max_stable_dt(cfg);
    if (cfg.dt > limit) {
        throw CflError(cfg.dt, limit);
    }
}

std::vector<MockTrace> mock_solve_traces(const MockSolverConfig& cfg) {
    validate(cfg);
    const Grid g = Grid::of(cfg);
    const int nx = cfg.nx;
    const int nz = cfg.nz;
    const std::size_t nodes = static_cast<std::size_t>(nx) * nz;

    // dt^2 * v^2 per node, hoisted out of the time loop.
    std::vector<double> dt2v2(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        dt2v2[i] = cfg.dt * cfg.dt * cfg.velocity[i] * cfg.velocity[i];
    }

    const int src_ix = nearest_node(cfg.source.xs, cfg.xmin, g.hx, nx);
    const int src_iz = nearest_node(cfg.source.zs, cfg.zmin, g.hz, nz);
    const std::size_t src = static_cast<std::size_t>(src_ix) * nz + src_iz;

    std::vector<std::size_t> recorder_nodes;
    recorder_nodes.reserve(cfg.stations.size());
    for (const auto& s : cfg.stations) {
        const int ix = nearest_node(s.h1, cfg.xmin, g.hx, nx);
        const int iz = nearest_node(s.h2, cfg.zmin, g.hz, nz);
        recorder_nodes.push_back(static_cast<std::size_t>(ix) * nz + iz);
    }

    std::vector<MockTrace> traces(cfg.stations.size());
    for (std::size_t s = 0; s < cfg.stations.size(); ++s) {
        traces[s].station = cfg.stations[s];
        traces[s].samples.resize(static_cast<std::size_t>(cfg.nstep));
    }

    std::vector<double> prev(nodes, 0.0);
    std::vector<double> curr(nodes, 0.0);
    std::vector<double> next(nodes, 0.0);

    const double inv_hx2 = 1.0 / (g.hx * g.hx);
    const double inv_hz2 = 1.0 / (g.hz * g.hz);
    const bool use_gaussian = cfg.source.time_function == SourceSpec2D::TimeFunction::gaussian;

    for (long long step = 0; step < cfg.nstep; ++step) {
        const double t = step * cfg.dt;
        for (std::size_t s = 0; s < recorder_nodes.size(); ++s) {
            traces[s].samples[static_cast<std::size_t>(step)] = curr[recorder_nodes[s]];
        }
        for (int ix = 1; ix < nx - 1; ++ix) {
            const double* col = curr.data() + static_cast<std::size_t>(ix) * nz;
            const double* left = col - nz;
            const double* right = col + nz;
            const double* p = prev.data() + static_cast<std::size_t>(ix) * nz;
            const double* c2 = dt2v2.data() + static_cast<std::size_t>(ix) * nz;
            double* out = next.data() + static_cast<std::size_t>(ix) * nz;
            for (int iz = 1; iz < nz - 1; ++iz) {
                const double lap = (left[iz] + right[iz] - 2.0 * col[iz]) * inv_hx2 +
                                   (col[iz - 1] + col[iz + 1] - 2.0 * col[iz]) * inv_hz2;
                out[iz] = 2.0 * col[iz] - p[iz] + c2[iz] * lap;
            }
        }
        const double stf =
            use_gaussian ? gaussian_stf(t, cfg.source.f0) : ricker(t, cfg.source.f0);
        next[src] += dt2v2[src] * cfg.source.factor * stf;

        std::swap(prev, curr);
        std::swap(curr, next);
    }
    return traces;
}

std::string render_trace_samples(double t0, double dt, const std::vector<double>& samples) {
    std::string out;
    out.reserve(samples.size() * 24);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out += render_number(t0 + static_cast<double>(i) * dt);
        out += ' ';
        out += render_number(samples[i]);
        out += '\n';
    }
    return out;
}

RunReport mock_solve(const MockSolverConfig& cfg, Workspace& ws, const std::string& tool_name) {
    const auto start = std::chrono::steady_clock::now();
    const auto traces = mock_solve_traces(cfg);

    RunReport report;
    report.status = RunReport::Status::ok;
    for (const auto& trace : traces) {
        const std::string file = trace.station.network + "." + trace.station.name + "." +
                                 cfg.channel_code + ".semd";
        ws.write_output_file(file, render_trace_samples(0.0, cfg.dt, trace.samples), tool_name);
        report.produced_files.push_back(file);
    }
    std::sort(report.produced_files.begin(), report.produced_files.end());
    report.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace smcp
