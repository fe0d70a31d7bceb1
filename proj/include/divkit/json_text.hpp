#pragma once

#include <json.hpp>
#include <string>

namespace divkit {

// Deterministic serialization: insertion-ordered keys, floating values with 17
// significant digits, non-finite values as null. Parsing the output with
// nlohmann::ordered_json and serializing again reproduces it byte for byte.
std::string to_json_text(const nlohmann::ordered_json& value, int indent = 2);

std::string format_double(double v);

}  // namespace divkit
