#include "specfem_mcp/server.hpp"

#include <filesystem>
#include <iostream>
#include <ostream>

namespace smcp {

namespace {

JsonRpcMessage handle_initialize(const JsonRpcMessage& request, const ToolRegistry& registry,
                                 bool& initialized) {
    if (initialized) {
        return JsonRpcMessage::make_error(request.id, kInvalidRequest,
                                          "session already initialized");
    }
    initialized = true;
    Json result;
    result["capabilities"] = Json{{"tools", Json::object()}};
    result["serverInfo"] =
        Json{{"name", server_name(registry.profile())}, {"version", kServerVersion}};
    return JsonRpcMessage::make_response(request.id, result);
}

JsonRpcMessage handle_list_tools(const JsonRpcMessage& request, const ToolRegistry& registry) {
    Json tools = Json::array();
    for (const auto& descriptor : registry.descriptors()) {
        tools.push_back(descriptor.to_json());
    }
    return JsonRpcMessage::make_response(request.id, Json{{"tools", tools}});
}

JsonRpcMessage handle_call_tool(const JsonRpcMessage& request, const ToolRegistry& registry) {
    if (!request.params.is_object() || !request.params.contains("name") ||
        !request.params["name"].is_string()) {
        return JsonRpcMessage::make_error(request.id, kInvalidParams,
                                          "tools/call params need a string \"name\"");
    }
    const std::string name = request.params["name"].get<std::string>();
    Json args = request.params.value("arguments", Json::object());
    if (!args.is_object()) {
        return JsonRpcMessage::make_error(request.id, kInvalidParams,
                                          "\"arguments\" must be an object");
    }
    if (registry.find(name) == nullptr) {
        return JsonRpcMessage::make_error(request.id, kMethodNotFound,
                                          "unknown tool: " + name);
    }
    return JsonRpcMessage::make_response(request.id, registry.call(name, args).to_json());
}

JsonRpcMessage dispatch(const JsonRpcMessage& request, const ToolRegistry& registry,
                        bool& initialized) {
    if (request.method == "initialize") {
        return handle_initialize(request, registry, initialized);
    }
    if (!initialized) {
        return JsonRpcMessage::make_error(request.id, kNotInitialized,
                                          "server not initialized: send initialize first");
    }
    if (request.method == "tools/list") {
        return handle_list_tools(request, registry);
    }
    if (request.method == "tools/call") {
        return handle_call_tool(request, registry);
    }
    if (request.method == "resources/list") {
        return JsonRpcMessage::make_response(request.id,
                                             Json{{"resources", Json::array()}});
    }
    if (request.method == "prompts/list") {
        return JsonRpcMessage::make_response(request.id, Json{{"prompts", Json::array()}});
    }
    return JsonRpcMessage::make_error(request.id, kMethodNotFound,
                                      "method not found: " + request.method);
}

} // namespace

int serve(StreamTransport transport, const ToolRegistry& registry, Workspace& workspace) {
    if (!std::filesystem::exists(workspace.root())) {
        std::cerr << "[" << server_name(registry.profile())
                  << "] workspace root missing: " << workspace.root() << "\n";
        return 1;
    }
    std::cerr << "[" << server_name(registry.profile()) << "] serving " << registry.size()
              << " tools, workspace " << workspace.root().string() << "\n";

    bool initialized = false;
    for (;;) {
        const ReadOutcome outcome = read_message(transport.in);
        if (outcome.status == ReadOutcome::Status::eof) {
            break;
        }
        if (outcome.status == ReadOutcome::Status::parse_error) {
            write_message(transport.out,
                          JsonRpcMessage::make_error(nullptr, kParseError, "parse error"));
        } else if (outcome.status == ReadOutcome::Status::invalid) {
            write_message(transport.out,
                          JsonRpcMessage::make_error(outcome.offending_id, kInvalidRequest,
                                                     "invalid request"));
        } else {
            const JsonRpcMessage& message = outcome.message;
            if (message.kind == JsonRpcMessage::Kind::request) {
                write_message(transport.out, dispatch(message, registry, initialized));
            }
            // Notifications and stray responses get no reply.
        }
        if (!transport.out.good()) {
            std::cerr << "[" << server_name(registry.profile())
                      << "] transport write failure, shutting down\n";
            return 1;
        }
    }
    return 0;
}

} // namespace smcp
