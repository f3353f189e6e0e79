#pragma once

#include "specfem_mcp/process.hpp"
#include "specfem_mcp/sources.hpp"
#include "specfem_mcp/stations.hpp"
#include "specfem_mcp/workspace.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace smcp {

/// Desk-scale stand-in for the external solver binaries: the scalar
/// acoustic wave equation
///
///     (1 / v^2) d2u/dt2 - laplacian(u) = s
///
/// integrated with second-order centered differences in time and space
/// on a regular grid with rigid (zero-field) outer boundaries.
struct MockSolverConfig {
    int nx = 200;
    int nz = 200;
    double xmin = 0, xmax = 0; // m
    double zmin = 0, zmax = 0; // m
    std::vector<double> velocity; // v(x, z) m/s, nx*nz row-major [ix*nz + iz]
    SourceSpec2D source;
    StationList stations; // h1 = x, h2 = z
    double dt = 0;        // s
    long long nstep = 0;
    std::string channel_code = "BXZ"; // trace file naming
};

struct CflError : std::runtime_error {
    double max_stable_dt;
    CflError(double requested, double limit)
        : std::runtime_error("dt = " + std::to_string(requested) +
                             " s violates the CFL bound; max stable dt = " +
                             std::to_string(limit) + " s"),
          max_stable_dt(limit) {}
};

/// CFL bound for this scheme: 0.7 * min(hx, hz) / (vmax * sqrt(2)).
double max_stable_dt(const MockSolverConfig& cfg);

/// Throws CflError when dt exceeds the bound, std::invalid_argument for
/// structural problems (grid too small, non-positive velocity, ...).
void validate(const MockSolverConfig& cfg);

/// Fills cfg.velocity with a constant field.
void fill_constant_velocity(MockSolverConfig& cfg, double v);

/// Ricker source time function with onset delay t0 = 1.2 / f0:
/// r(t) = (1 - 2 pi^2 f0^2 (t - t0)^2) exp(-pi^2 f0^2 (t - t0)^2).
double ricker(double t, double f0);
double gaussian_stf(double t, double f0);

struct MockTrace {
    Station station;
    std::vector<double> samples; // u recorded every dt starting at t = 0
};

/// Pure integration: returns one trace per station, no file I/O. The
/// source is injected at the nearest interior grid node; receivers snap
/// to the nearest interior node.
std::vector<MockTrace> mock_solve_traces(const MockSolverConfig& cfg);

/// Runs the integration and writes one two-column ASCII trace per
/// station to OUTPUT_FILES/ as NET.STA.<channel>.semd.
RunReport mock_solve(const MockSolverConfig& cfg, Workspace& ws,
                     const std::string& tool_name = "mock_solver");

/// Two-column trace text: time (s) and value, one sample per line.
std::string render_trace_samples(double t0, double dt, const std::vector<double>& samples);

} // namespace smcp
