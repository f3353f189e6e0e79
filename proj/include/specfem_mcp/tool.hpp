#pragma once

#include "specfem_mcp/jsonrpc.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smcp {

enum class Profile { specfem2d, specfem3d, specfem3d_globe };

std::string profile_id(Profile p);   // "specfem2d", "specfem3d", "specfem3d_globe"
std::string server_name(Profile p);  // "specfem2d-mcp", ...
std::optional<Profile> parse_profile(std::string_view text); // accepts 2d/3d/globe too

struct ToolDescriptor {
    std::string name; // [a-z0-9_]+, unique within a registry
    std::string description;
    Json input_schema; // root type "object"

    Json to_json() const; // {name, description, inputSchema}
};

struct ContentBlock {
    enum class Type { text, resource_link };
    Type type = Type::text;
    std::string value; // text body or workspace-relative path
};

struct ToolResult {
    std::vector<ContentBlock> content; // non-empty
    bool is_error = false;

    static ToolResult ok(std::string summary, std::vector<std::string> paths = {});
    static ToolResult failure(std::string explanation);

    Json to_json() const;
    static ToolResult from_json(const Json& j);

    /// First text block, or "" when none (for tests and the CLI).
    std::string text() const;
};

using ToolHandler = std::function<ToolResult(const Json& args)>;

/// Ordered, immutable-after-startup tool catalog for one server profile.
class ToolRegistry {
public:
    explicit ToolRegistry(Profile profile) : profile_(profile) {}

    /// Rejects invalid names, duplicates, and non-object root schemas.
    void add(ToolDescriptor descriptor, ToolHandler handler);

    Profile profile() const { return profile_; }
    std::size_t size() const { return bindings_.size(); }
    const ToolDescriptor* find(std::string_view name) const;
    std::vector<ToolDescriptor> descriptors() const;

    /// Schema-validates args, then dispatches. Violations and handler
    /// exceptions come back as ToolResult{is_error = true}; the process
    /// never dies from a tool failure. The name must exist (use find()
    /// first for -32601 semantics).
    ToolResult call(std::string_view name, const Json& args) const;

private:
    struct Binding {
        ToolDescriptor descriptor;
        ToolHandler handler;
    };

    Profile profile_;
    std::vector<Binding> bindings_;
};

} // namespace smcp
