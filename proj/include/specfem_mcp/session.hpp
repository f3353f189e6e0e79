#pragma once

#include "specfem_mcp/process.hpp"
#include "specfem_mcp/tool.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace smcp {

/// One scripted tool invocation and its expected outcome.
struct SessionStep {
    std::string tool;
    Json args = Json::object();
    bool expect_ok = true;
};

/// Deterministic stand-in for an interactive agent session: an ordered
/// list of tool calls against one server profile and workspace.
struct SessionScript {
    Profile profile = Profile::specfem2d;
    std::filesystem::path workspace;
    std::vector<SessionStep> steps;

    /// Loads a .session JSON document; throws on structural problems
    /// (missing steps, unknown profile).
    static SessionScript load(const std::filesystem::path& path);
};

struct ReplayOptions {
    std::string server_exe;                             // binary to spawn
    std::optional<std::filesystem::path> workspace;     // overrides the script
    std::optional<RunMode> mode;                        // forces --mock / --real
    std::ostream* log = nullptr;                        // pass/fail lines
};

// Exit codes: 0 all steps matched, 1 mismatch, 2 handshake failure,
// 3 server crash mid-session.
inline constexpr int kReplayOk = 0;
inline constexpr int kReplayMismatch = 1;
inline constexpr int kReplayHandshakeFailure = 2;
inline constexpr int kReplayServerCrash = 3;

int replay_session(const SessionScript& script, const ReplayOptions& options);

} // namespace smcp
