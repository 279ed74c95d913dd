#pragma once

#include <nlohmann/json.hpp>

#include "ratelab/points.hpp"
#include "ratelab/predicate.hpp"
#include "ratelab/series.hpp"
#include "ratelab/specker.hpp"

namespace ratelab {

// Inverse of the descriptor() methods: rebuild values from their wire form.
// Every parser raises config_error with the offending location; nothing is
// defaulted silently. (sequence_from_json is declared next to the builders
// in series.hpp and implemented with these.)

BaseSequence base_from_json(const nlohmann::json& descriptor);
PointFamily points_from_json(const nlohmann::json& descriptor);
FRoute route_from_json(const nlohmann::json& j);
WindowPredicate predicate_from_json(const nlohmann::json& descriptor);

}  // namespace ratelab
