#include "specfem_mcp/jsonrpc.hpp"

#include <istream>
#include <ostream>

namespace smcp {

Json JsonRpcError::to_json() const {
    Json j;
    j["code"] = code;
    j["message"] = message;
    if (!data.is_null()) {
        j["data"] = data;
    }
    return j;
}

JsonRpcMessage JsonRpcMessage::make_request(Json id, std::string method, Json params) {
    JsonRpcMessage m;
    m.kind = Kind::request;
    m.id = std::move(id);
    m.method = std::move(method);
    m.params = std::move(params);
    return m;
}

JsonRpcMessage JsonRpcMessage::make_notification(std::string method, Json params) {
    JsonRpcMessage m;
    m.kind = Kind::notification;
    m.method = std::move(method);
    m.params = std::move(params);
    return m;
}

JsonRpcMessage JsonRpcMessage::make_response(Json id, Json result) {
    JsonRpcMessage m;
    m.kind = Kind::response;
    m.id = std::move(id);
    m.result = std::move(result);
    return m;
}

JsonRpcMessage JsonRpcMessage::make_error(Json id, int code, std::string message, Json data) {
    JsonRpcMessage m;
    m.kind = Kind::response;
    m.id = std::move(id);
    m.error = JsonRpcError{code, std::move(message), std::move(data)};
    return m;
}

Json JsonRpcMessage::to_json() const {
    Json j;
    j["jsonrpc"] = "2.0";
    switch (kind) {
    case Kind::request:
        j["id"] = id;
        j["method"] = method;
        if (!params.is_null()) {
            j["params"] = params;
        }
        break;
    case Kind::notification:
        j["method"] = method;
        if (!params.is_null()) {
            j["params"] = params;
        }
        break;
    case Kind::response:
        j["id"] = id;
        if (error) {
            j["error"] = error->to_json();
        } else {
            j["result"] = result;
        }
        break;
    }
    return j;
}

namespace {

bool is_valid_id(const Json& id) {
    return id.is_number_integer() || id.is_string();
}

ReadOutcome classify(const Json& j) {
    ReadOutcome out;
    out.status = ReadOutcome::Status::invalid;
    out.offending_id = nullptr;

    if (!j.is_object()) {
        return out;
    }
    if (j.contains("id") && is_valid_id(j["id"])) {
        out.offending_id = j["id"];
    }
    if (!j.contains("jsonrpc") || j["jsonrpc"] != "2.0") {
        return out;
    }

    if (j.contains("method")) {
        if (!j["method"].is_string()) {
            return out;
        }
        if (j.contains("params") && !j["params"].is_object() && !j["params"].is_array() &&
            !j["params"].is_null()) {
            return out;
        }
        if (j.contains("result") || j.contains("error")) {
            return out;
        }
        JsonRpcMessage m;
        m.method = j["method"].get<std::string>();
        m.params = j.value("params", Json());
        if (j.contains("id")) {
            if (!is_valid_id(j["id"])) {
                return out; // null or fractional ids are not accepted
            }
            m.kind = JsonRpcMessage::Kind::request;
            m.id = j["id"];
        } else {
            m.kind = JsonRpcMessage::Kind::notification;
        }
        out.status = ReadOutcome::Status::message;
        out.message = std::move(m);
        return out;
    }

    const bool has_result = j.contains("result");
    const bool has_error = j.contains("error");
    if (has_result == has_error) {
        return out; // exactly one of result/error for a response
    }
    if (!j.contains("id") || !(is_valid_id(j["id"]) || j["id"].is_null())) {
        return out;
    }
    JsonRpcMessage m;
    m.kind = JsonRpcMessage::Kind::response;
    m.id = j["id"];
    if (has_result) {
        m.result = j["result"];
    } else {
        const Json& e = j["error"];
        if (!e.is_object() || !e.contains("code") || !e["code"].is_number_integer() ||
            !e.contains("message") || !e["message"].is_string()) {
            return out;
        }
        m.error = JsonRpcError{e["code"].get<int>(), e["message"].get<std::string>(),
                               e.value("data", Json())};
    }
    out.status = ReadOutcome::Status::message;
    out.message = std::move(m);
    return out;
}

} // namespace

ReadOutcome read_message(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue; // blank separator line
        }
        Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded()) {
            ReadOutcome out;
            out.status = ReadOutcome::Status::parse_error;
            out.offending_id = nullptr;
            return out;
        }
        return classify(j);
    }
    return {}; // eof
}

void write_message(std::ostream& out, const JsonRpcMessage& msg) {
    out << msg.to_json().dump() << "\n";
    out.flush();
}

} // namespace smcp
