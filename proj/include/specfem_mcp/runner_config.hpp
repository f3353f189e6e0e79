#pragma once

#include "specfem_mcp/process.hpp"
#include "specfem_mcp/tool.hpp"

#include <filesystem>
#include <string>

namespace smcp {

/// Execution configuration shared by a suite's run tools. Environment:
/// SPECFEM2D_BIN / SPECFEM3D_BIN / SPECFEM3D_GLOBE_BIN select the bin
/// directory per profile, SPECFEM_MCP_MODE forces real|mock (default is
/// mock when the bin variable is unset), SPECFEM_MPI_LAUNCHER overrides
/// mpirun.
struct RunnerConfig {
    RunMode mode = RunMode::mock;
    std::filesystem::path bin_dir;
    std::string mpi_launcher = "mpirun";
    double real_timeout_sec = 3600;
    double mock_timeout_sec = 60;

    static RunnerConfig from_env(Profile profile);

    double default_timeout() const {
        return mode == RunMode::real_binaries ? real_timeout_sec : mock_timeout_sec;
    }
};

} // namespace smcp
