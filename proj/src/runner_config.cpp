#include "specfem_mcp/runner_config.hpp"

#include <cstdlib>

namespace smcp {

RunnerConfig RunnerConfig::from_env(Profile profile) {
    RunnerConfig config;
    const char* bin_var = nullptr;
    switch (profile) {
    case Profile::specfem2d: bin_var = "SPECFEM2D_BIN"; break;
    case Profile::specfem3d: bin_var = "SPECFEM3D_BIN"; break;
    case Profile::specfem3d_globe: bin_var = "SPECFEM3D_GLOBE_BIN"; break;
    }
    const char* bin = std::getenv(bin_var);
    if (bin != nullptr && *bin != '\0') {
        config.bin_dir = bin;
        config.mode = RunMode::real_binaries;
    }
    if (const char* mode = std::getenv("SPECFEM_MCP_MODE"); mode != nullptr) {
        const std::string value = mode;
        if (value == "real") {
            config.mode = RunMode::real_binaries;
        } else if (value == "mock") {
            config.mode = RunMode::mock;
        }
    }
    if (const char* launcher = std::getenv("SPECFEM_MPI_LAUNCHER");
        launcher != nullptr && *launcher != '\0') {
        config.mpi_launcher = launcher;
    }
    return config;
}

} // namespace smcp
