#pragma once

#include "specfem_mcp/tool.hpp"
#include "specfem_mcp/workspace.hpp"

#include <iosfwd>
#include <string>

namespace smcp {

inline constexpr const char* kServerVersion = "0.1.0";

struct StreamTransport {
    std::istream& in;
    std::ostream& out;
};

/// Runs the sequential dispatch loop until end-of-stream: one response
/// per request, none for notifications, lifecycle enforced (-32002
/// before initialize). Only protocol frames go to the output stream;
/// diagnostics go to stderr. Returns the process exit status.
int serve(StreamTransport transport, const ToolRegistry& registry, Workspace& workspace);

} // namespace smcp
