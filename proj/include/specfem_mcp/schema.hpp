#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace smcp {

using Json = nlohmann::json;

struct SchemaViolation {
    std::string path;    // dotted path, empty for the root
    std::string message; // e.g. "missing: f0"
};

struct ValidationReport {
    std::vector<SchemaViolation> violations;

    bool valid() const { return violations.empty(); }
    std::string to_text() const; // one violation per line
};

/// Validates a value against a root-object schema. Supported keywords:
/// type (object, array, string, number, integer, boolean), properties,
/// required, enum, minimum, maximum, exclusiveMinimum, exclusiveMaximum,
/// items, minItems, maxItems. Unknown keywords are ignored. Violations
/// are data, not faults: an empty report means valid.
ValidationReport validate_arguments(const Json& schema, const Json& args);

} // namespace smcp
