#pragma once

#include "specfem_mcp/process.hpp"
#include "specfem_mcp/tool.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace smcp {

struct HandshakeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ServerCrashed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Outcome of one tools/call round trip.
struct ToolCallOutcome {
    bool protocol_error = false;
    int error_code = 0;
    std::string error_message;
    ToolResult result; // valid when !protocol_error

    bool ok() const { return !protocol_error && !result.is_error; }
};

/// Reference MCP client: spawns a server process and speaks the public
/// wire protocol over its stdio — no in-process shortcuts, so it doubles
/// as a conformance check for any server.
class McpClient {
public:
    explicit McpClient(const std::vector<std::string>& server_argv,
                       double timeout_sec = 120.0);

    /// Sends initialize and validates the reply. Returns the result
    /// object ({capabilities, serverInfo}).
    Json initialize();

    std::vector<ToolDescriptor> list_tools();
    ToolCallOutcome call_tool(const std::string& name, const Json& args);

    /// Raw request: throws ServerCrashed on EOF, returns the response.
    JsonRpcMessage request(const std::string& method, const Json& params);

    /// Closes the server's stdin and waits for a clean exit.
    int shutdown();

private:
    ChildProcess process_;
    double timeout_sec_;
    long long next_id_ = 1;
};

} // namespace smcp
