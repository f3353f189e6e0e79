#include "specfem_mcp/tool.hpp"

#include "specfem_mcp/schema.hpp"

#include <stdexcept>

namespace smcp {

std::string profile_id(Profile p) {
    switch (p) {
    case Profile::specfem2d: return "specfem2d";
    case Profile::specfem3d: return "specfem3d";
    case Profile::specfem3d_globe: return "specfem3d_globe";
    }
    return "specfem2d";
}

std::string server_name(Profile p) {
    switch (p) {
    case Profile::specfem2d: return "specfem2d-mcp";
    case Profile::specfem3d: return "specfem3d-mcp";
    case Profile::specfem3d_globe: return "specfem3d-globe-mcp";
    }
    return "specfem2d-mcp";
}

std::optional<Profile> parse_profile(std::string_view text) {
    if (text == "2d" || text == "specfem2d") {
        return Profile::specfem2d;
    }
    if (text == "3d" || text == "specfem3d") {
        return Profile::specfem3d;
    }
    if (text == "globe" || text == "specfem3d_globe") {
        return Profile::specfem3d_globe;
    }
    return std::nullopt;
}

Json ToolDescriptor::to_json() const {
    Json j;
    j["name"] = name;
    j["description"] = description;
    j["inputSchema"] = input_schema;
    return j;
}

ToolResult ToolResult::ok(std::string summary, std::vector<std::string> paths) {
    ToolResult r;
    r.content.push_back({ContentBlock::Type::text, std::move(summary)});
    for (auto& p : paths) {
        r.content.push_back({ContentBlock::Type::resource_link, std::move(p)});
    }
    return r;
}

ToolResult ToolResult::failure(std::string explanation) {
    ToolResult r;
    r.is_error = true;
    r.content.push_back({ContentBlock::Type::text, std::move(explanation)});
    return r;
}

Json ToolResult::to_json() const {
    Json blocks = Json::array();
    for (const auto& block : content) {
        if (block.type == ContentBlock::Type::text) {
            blocks.push_back({{"type", "text"}, {"text", block.value}});
        } else {
            blocks.push_back({{"type", "resource_link"}, {"path", block.value}});
        }
    }
    Json j;
    j["content"] = blocks;
    j["isError"] = is_error;
    return j;
}

ToolResult ToolResult::from_json(const Json& j) {
    ToolResult r;
    r.is_error = j.value("isError", false);
    for (const auto& block : j.value("content", Json::array())) {
        const std::string type = block.value("type", "text");
        if (type == "resource_link") {
            r.content.push_back({ContentBlock::Type::resource_link, block.value("path", "")});
        } else {
            r.content.push_back({ContentBlock::Type::text, block.value("text", "")});
        }
    }
    return r;
}

std::string ToolResult::text() const {
    for (const auto& block : content) {
        if (block.type == ContentBlock::Type::text) {
            return block.value;
        }
    }
    return "";
}

namespace {

bool valid_tool_name(std::string_view name) {
    if (name.empty()) {
        return false;
    }
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) {
            return false;
        }
    }
    return true;
}

} // namespace

void ToolRegistry::add(ToolDescriptor descriptor, ToolHandler handler) {
    if (!valid_tool_name(descriptor.name)) {
        throw std::invalid_argument("tool name must match [a-z0-9_]+: '" + descriptor.name +
                                    "'");
    }
    if (find(descriptor.name) != nullptr) {
        throw std::invalid_argument("duplicate tool name: " + descriptor.name);
    }
    if (!descriptor.input_schema.is_object() ||
        descriptor.input_schema.value("type", "") != "object") {
        throw std::invalid_argument("input schema for " + descriptor.name +
                                    " must declare type \"object\"");
    }
    if (!handler) {
        throw std::invalid_argument("tool " + descriptor.name + " has no handler");
    }
    bindings_.push_back({std::move(descriptor), std::move(handler)});
}

const ToolDescriptor* ToolRegistry::find(std::string_view name) const {
    for (const auto& binding : bindings_) {
        if (binding.descriptor.name == name) {
            return &binding.descriptor;
        }
    }
    return nullptr;
}

std::vector<ToolDescriptor> ToolRegistry::descriptors() const {
    std::vector<ToolDescriptor> out;
    out.reserve(bindings_.size());
    for (const auto& binding : bindings_) {
        out.push_back(binding.descriptor);
    }
    return out;
}

ToolResult ToolRegistry::call(std::string_view name, const Json& args) const {
    const Binding* binding = nullptr;
    for (const auto& b : bindings_) {
        if (b.descriptor.name == name) {
            binding = &b;
            break;
        }
    }
    if (binding == nullptr) {
        throw std::invalid_argument("unknown tool: " + std::string(name));
    }
    const ValidationReport report = validate_arguments(binding->descriptor.input_schema, args);
    if (!report.valid()) {
        return ToolResult::failure("invalid arguments for " + std::string(name) + ":\n" +
                                   report.to_text());
    }
    try {
        ToolResult result = binding->handler(args);
        if (result.content.empty()) {
            result.content.push_back({ContentBlock::Type::text, "(no output)"});
        }
        return result;
    } catch (const std::exception& e) {
        return ToolResult::failure(std::string(name) + " failed: " + e.what());
    } catch (...) {
        return ToolResult::failure(std::string(name) + " failed with an unknown error");
    }
}

} // namespace smcp
