#pragma once

// Just enough of JSON Schema (type/properties/required/items/anyOf) to check
// the shipped schemas against real outputs.

#include <json.hpp>
#include <string>

namespace schema {

using nlohmann::json;

inline bool matches(const json& value, const json& schema, std::string* why = nullptr);

inline bool type_matches(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    return false;
}

inline bool matches(const json& value, const json& schema, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (schema.contains("anyOf")) {
        for (const auto& option : schema["anyOf"])
            if (matches(value, option)) return true;
        return fail("no anyOf branch matched");
    }
    if (schema.contains("type") && !type_matches(value, schema["type"].get<std::string>()))
        return fail("expected type " + schema["type"].get<std::string>());
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>()))
                return fail("missing required key " + key.get<std::string>());
    if (schema.contains("properties") && value.is_object())
        for (auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !matches(value[key], sub, why))
                return fail("property " + key + (why ? ": " + *why : ""));
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!matches(item, schema["items"], why)) return fail("array item mismatch");
    return true;
}

} // namespace schema
