#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ratelab/numbers.hpp"

namespace ratelab {

// Strict JSON value readers shared by every descriptor parser. Naturals are
// decimal strings or non-negative integer literals; rationals are "a/b"
// strings or integer literals. Floats are rejected: nothing in the wire
// format is approximate.
Nat nat_from_json(const nlohmann::json& v, const std::string& context);
Rational rational_from_json(const nlohmann::json& v, const std::string& context);

const nlohmann::json& require_field(const nlohmann::json& j, const char* key,
                                    const std::string& context);
std::string string_field(const nlohmann::json& j, const char* key, const std::string& context);

}  // namespace ratelab
