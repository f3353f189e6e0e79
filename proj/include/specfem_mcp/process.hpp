#pragma once

#include "specfem_mcp/workspace.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace smcp {

enum class RunMode { real_binaries, mock };

struct RunRequest {
    std::string executable; // e.g. xmeshfem2D, xspecfem3D, xdecompose_mesh
    int nproc = 1;
    RunMode mode = RunMode::mock;
    double timeout_sec = 60;
    std::filesystem::path working_dir; // defaults to the workspace root
    std::filesystem::path bin_dir;
    std::string mpi_launcher = "mpirun";
    std::vector<std::string> extra_args; // positional args (decompose_mesh)
};

struct RunReport {
    enum class Status { ok, failed, timeout };

    Status status = Status::ok;
    std::optional<int> exit_code; // absent for timeouts and mock runs
    double wall_time_sec = 0;
    std::vector<std::string> stdout_tail;
    std::vector<std::string> stderr_tail;
    std::vector<std::string> produced_files; // relative to OUTPUT_FILES/, sorted
};

/// nproc == 1 launches the binary directly; nproc > 1 prepends the MPI
/// launcher with "-np N". In real mode the binary must exist under
/// bin_dir (throws naming the expected path).
std::vector<std::string> compose_command(const RunRequest& req);

/// Spawns the composed command in the workspace root, captures both
/// output streams, enforces the timeout by killing the child, and diffs
/// OUTPUT_FILES/ before/after to fill produced_files.
RunReport run_executable(const RunRequest& req, Workspace& ws);

/// Low-level helper: run argv to completion with a deadline.
struct ExecResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string stdout_text;
    std::string stderr_text;
    double wall_time_sec = 0;
};

ExecResult run_process(const std::vector<std::string>& argv,
                       const std::filesystem::path& working_dir, double timeout_sec,
                       const std::string& stdin_data = "");

/// Interactive child with piped stdin/stdout (stderr passes through);
/// used by the reference MCP client to drive a server process.
class ChildProcess {
public:
    explicit ChildProcess(const std::vector<std::string>& argv);
    ~ChildProcess();

    ChildProcess(const ChildProcess&) = delete;
    ChildProcess& operator=(const ChildProcess&) = delete;

    bool write_line(const std::string& line);
    std::optional<std::string> read_line(double timeout_sec);
    void close_stdin();
    bool running();
    int wait(); // blocks; returns exit code (128+signal if killed)
    void kill_now();

private:
    int pid_ = -1;
    int stdin_fd_ = -1;
    int stdout_fd_ = -1;
    std::string buffer_;
    std::optional<int> exit_code_;
};

std::vector<std::string> tail_lines(const std::string& text, std::size_t n);

} // namespace smcp
