#pragma once

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace smcp {

using Json = nlohmann::json;

// JSON-RPC 2.0 error codes used on the wire. -32002 is the server-not-
// initialized code; tool-domain failures are reported inside ToolResult,
// never as protocol errors.
inline constexpr int kParseError = -32700;
inline constexpr int kInvalidRequest = -32600;
inline constexpr int kMethodNotFound = -32601;
inline constexpr int kInvalidParams = -32602;
inline constexpr int kNotInitialized = -32002;

struct JsonRpcError {
    int code = 0;
    std::string message;
    Json data; // null when unused

    Json to_json() const;

    friend bool operator==(const JsonRpcError&, const JsonRpcError&) = default;
};

/// One JSON-RPC 2.0 message. Requests carry an id and a method,
/// notifications a method only, responses an id plus exactly one of
/// result / error.
struct JsonRpcMessage {
    enum class Kind { request, response, notification };

    Kind kind = Kind::request;
    Json id;            // integer or string; null for notifications
    std::string method; // requests and notifications only
    Json params;
    Json result;
    std::optional<JsonRpcError> error;

    static JsonRpcMessage make_request(Json id, std::string method, Json params = Json());
    static JsonRpcMessage make_notification(std::string method, Json params = Json());
    static JsonRpcMessage make_response(Json id, Json result);
    static JsonRpcMessage make_error(Json id, int code, std::string message, Json data = Json());

    Json to_json() const;
};

/// Result of pulling one newline-delimited frame off a stream.
struct ReadOutcome {
    enum class Status {
        message,     // structurally valid JSON-RPC 2.0 message
        parse_error, // line was not valid JSON (answer with -32700)
        invalid,     // valid JSON but not a JSON-RPC 2.0 message (-32600)
        eof,         // end of stream: clean shutdown
    };

    Status status = Status::eof;
    JsonRpcMessage message; // set when status == message
    Json offending_id;      // best-effort id of an invalid frame, else null
};

/// Reads the next frame. Blank lines between frames are skipped; a
/// frame is one UTF-8 line terminated by '\n'.
ReadOutcome read_message(std::istream& in);

/// Serializes one message as a single line ending in '\n'.
void write_message(std::ostream& out, const JsonRpcMessage& msg);

} // namespace smcp
