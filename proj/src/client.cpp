#include "specfem_mcp/client.hpp"

#include <sstream>

namespace smcp {

McpClient::McpClient(const std::vector<std::string>& server_argv, double timeout_sec)
    : process_(server_argv), timeout_sec_(timeout_sec) {}

JsonRpcMessage McpClient::request(const std::string& method, const Json& params) {
    JsonRpcMessage req = JsonRpcMessage::make_request(next_id_++, method, params);
    if (!process_.write_line(req.to_json().dump())) {
        throw ServerCrashed("server stdin closed while sending " + method);
    }
    for (;;) {
        const auto line = process_.read_line(timeout_sec_);
        if (!line) {
            throw ServerCrashed("server produced no response to " + method);
        }
        std::istringstream in(*line + "\n");
        const ReadOutcome outcome = read_message(in);
        if (outcome.status != ReadOutcome::Status::message ||
            outcome.message.kind != JsonRpcMessage::Kind::response) {
            throw ServerCrashed("non-response frame on the protocol stream: " + *line);
        }
        if (outcome.message.id != req.id) {
            throw ServerCrashed("response id mismatch: expected " + req.id.dump() + ", got " +
                                outcome.message.id.dump());
        }
        return outcome.message;
    }
}

Json McpClient::initialize() {
    const JsonRpcMessage response = request("initialize", Json::object());
    if (response.error) {
        throw HandshakeError("initialize failed: " + response.error->message);
    }
    const Json& result = response.result;
    if (!result.is_object() || !result.contains("serverInfo") ||
        !result.contains("capabilities")) {
        throw HandshakeError("initialize result missing serverInfo/capabilities");
    }
    if (!result["capabilities"].contains("tools")) {
        throw HandshakeError("server does not advertise tools");
    }
    return result;
}

std::vector<ToolDescriptor> McpClient::list_tools() {
    const JsonRpcMessage response = request("tools/list", Json());
    if (response.error) {
        throw std::runtime_error("tools/list failed: " + response.error->message);
    }
    std::vector<ToolDescriptor> tools;
    for (const auto& t : response.result.value("tools", Json::array())) {
        tools.push_back(ToolDescriptor{t.value("name", ""), t.value("description", ""),
                                       t.value("inputSchema", Json::object())});
    }
    return tools;
}

ToolCallOutcome McpClient::call_tool(const std::string& name, const Json& args) {
    const JsonRpcMessage response =
        request("tools/call", Json{{"name", name}, {"arguments", args}});
    ToolCallOutcome outcome;
    if (response.error) {
        outcome.protocol_error = true;
        outcome.error_code = response.error->code;
        outcome.error_message = response.error->message;
        return outcome;
    }
    outcome.result = ToolResult::from_json(response.result);
    return outcome;
}

int McpClient::shutdown() {
    process_.close_stdin();
    return process_.wait();
}

} // namespace smcp
