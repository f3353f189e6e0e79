#include "specfem_mcp/schema.hpp"

#include <sstream>

namespace smcp {

std::string ValidationReport::to_text() const {
    std::ostringstream out;
    for (const auto& v : violations) {
        if (!v.path.empty()) {
            out << v.message << " at " << v.path << "\n";
        } else {
            out << v.message << "\n";
        }
    }
    return out.str();
}

namespace {

std::string json_type_name(const Json& v) {
    switch (v.type()) {
    case Json::value_t::object: return "object";
    case Json::value_t::array: return "array";
    case Json::value_t::string: return "string";
    case Json::value_t::boolean: return "boolean";
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned: return "integer";
    case Json::value_t::number_float: return "number";
    case Json::value_t::null: return "null";
    default: return "unknown";
    }
}

bool matches_type(const std::string& want, const Json& v) {
    if (want == "object") return v.is_object();
    if (want == "array") return v.is_array();
    if (want == "string") return v.is_string();
    if (want == "boolean") return v.is_boolean();
    if (want == "integer") return v.is_number_integer();
    if (want == "number") return v.is_number();
    return true; // unknown type names are not enforced
}

std::string join_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

void check(const Json& schema, const Json& value, const std::string& path,
           ValidationReport& report) {
    if (!schema.is_object()) {
        return;
    }

    if (schema.contains("type") && schema["type"].is_string()) {
        const std::string want = schema["type"].get<std::string>();
        if (!matches_type(want, value)) {
            report.violations.push_back(
                {path, "type mismatch: expected " + want + ", got " + json_type_name(value)});
            return; // nested checks are meaningless on the wrong type
        }
    }

    if (schema.contains("enum") && schema["enum"].is_array()) {
        bool found = false;
        for (const auto& candidate : schema["enum"]) {
            if (candidate == value) {
                found = true;
                break;
            }
        }
        if (!found) {
            report.violations.push_back({path, "value " + value.dump() + " not in enum"});
        }
    }

    if (value.is_number()) {
        const double x = value.get<double>();
        if (schema.contains("minimum") && x < schema["minimum"].get<double>()) {
            report.violations.push_back(
                {path, "value " + value.dump() + " below minimum " + schema["minimum"].dump()});
        }
        if (schema.contains("maximum") && x > schema["maximum"].get<double>()) {
            report.violations.push_back(
                {path, "value " + value.dump() + " above maximum " + schema["maximum"].dump()});
        }
        if (schema.contains("exclusiveMinimum") &&
            x <= schema["exclusiveMinimum"].get<double>()) {
            report.violations.push_back({path, "value " + value.dump() + " must be > " +
                                                   schema["exclusiveMinimum"].dump()});
        }
        if (schema.contains("exclusiveMaximum") &&
            x >= schema["exclusiveMaximum"].get<double>()) {
            report.violations.push_back({path, "value " + value.dump() + " must be < " +
                                                   schema["exclusiveMaximum"].dump()});
        }
    }

    if (value.is_object()) {
        if (schema.contains("required") && schema["required"].is_array()) {
            for (const auto& req : schema["required"]) {
                const std::string key = req.get<std::string>();
                if (!value.contains(key)) {
                    report.violations.push_back({path, "missing: " + key});
                }
            }
        }
        if (schema.contains("properties") && schema["properties"].is_object()) {
            for (const auto& [key, sub] : schema["properties"].items()) {
                if (value.contains(key)) {
                    check(sub, value[key], join_path(path, key), report);
                }
            }
        }
    }

    if (value.is_array()) {
        if (schema.contains("minItems") &&
            value.size() < schema["minItems"].get<std::size_t>()) {
            report.violations.push_back(
                {path, "array has " + std::to_string(value.size()) + " items, needs at least " +
                           schema["minItems"].dump()});
        }
        if (schema.contains("maxItems") &&
            value.size() > schema["maxItems"].get<std::size_t>()) {
            report.violations.push_back(
                {path, "array has " + std::to_string(value.size()) + " items, allows at most " +
                           schema["maxItems"].dump()});
        }
        if (schema.contains("items")) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                check(schema["items"], value[i], path + "[" + std::to_string(i) + "]", report);
            }
        }
    }
}

} // namespace

ValidationReport validate_arguments(const Json& schema, const Json& args) {
    ValidationReport report;
    check(schema, args, "", report);
    return report;
}

} // namespace smcp
