#include "ratelab/descriptors.hpp"

#include "ratelab/json_util.hpp"

namespace ratelab {

Nat nat_from_json(const nlohmann::json& v, const std::string& context) {
    if (v.is_string()) return parse_nat(v.get<std::string>());
    if (v.is_number_unsigned()) return Nat(v.get<std::uint64_t>());
    if (v.is_number_integer()) {
        long long x = v.get<long long>();
        if (x < 0) throw config_error(context + ": expected a natural number, got " + v.dump());
        return Nat(x);
    }
    throw config_error(context + ": expected a natural number (decimal string or integer), got " +
                       v.dump());
}

Rational rational_from_json(const nlohmann::json& v, const std::string& context) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_unsigned()) return Rational(Int(v.get<std::uint64_t>()));
    if (v.is_number_integer()) return Rational(Int(v.get<long long>()));
    throw config_error(context + ": expected a rational (\"a/b\" string or integer), got " +
                       v.dump());
}

const nlohmann::json& require_field(const nlohmann::json& j, const char* key,
                                    const std::string& context) {
    if (!j.is_object() || !j.contains(key))
        throw config_error(context + ": missing field '" + key + "'");
    return j.at(key);
}

std::string string_field(const nlohmann::json& j, const char* key, const std::string& context) {
    const nlohmann::json& v = require_field(j, key, context);
    if (!v.is_string()) throw config_error(context + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

BaseSequence base_from_json(const nlohmann::json& descriptor) {
    const std::string context = "base descriptor";
    const std::string kind = string_field(descriptor, "kind", context);
    if (kind == "dyadic_approach") return BaseSequence::dyadic_approach();
    if (kind == "rational_approach") return BaseSequence::rational_approach();
    if (kind == "table") {
        const nlohmann::json& vals = require_field(descriptor, "values", context);
        if (!vals.is_array() || vals.empty())
            throw config_error(context + ": 'values' must be a non-empty array");
        std::vector<Rational> values;
        values.reserve(vals.size());
        for (const auto& v : vals) values.push_back(rational_from_json(v, context + " value"));
        return BaseSequence::table(std::move(values));
    }
    throw config_error(context + ": unknown kind '" + kind + "'");
}

CoefficientSequence sequence_from_json(const nlohmann::json& descriptor) {
    const std::string context = "sequence descriptor";
    const std::string kind = string_field(descriptor, "kind", context);
    if (kind == "geometric")
        return geometric_sequence(
            rational_from_json(require_field(descriptor, "ratio", context), context + " ratio"));
    if (kind == "alternating_harmonic") return alternating_harmonic_sequence();
    if (kind == "power") {
        Nat k = nat_from_json(require_field(descriptor, "k", context), context + " k");
        if (k < 1 || k > 64) throw config_error(context + ": power exponent must be in [1, 64]");
        return power_sequence(k.convert_to<unsigned>());
    }
    if (kind == "zero") return zero_sequence();
    if (kind == "constant")
        return constant_sequence(
            rational_from_json(require_field(descriptor, "c", context), context + " c"));
    if (kind == "specker_31")
        return difference_transform(base_from_json(require_field(descriptor, "base", context)));
    if (kind == "specker_32")
        return spread_transform(base_from_json(require_field(descriptor, "base", context)));
    throw config_error(context + ": unknown kind '" + kind + "'");
}

PointFamily points_from_json(const nlohmann::json& descriptor) {
    const std::string context = "points descriptor";
    const std::string kind = string_field(descriptor, "kind", context);
    if (kind == "v") return PointFamily::v();
    if (kind == "dyadic") return PointFamily::dyadic();
    if (kind == "explicit") {
        const nlohmann::json& pts = require_field(descriptor, "points", context);
        if (!pts.is_array() || pts.empty())
            throw config_error(context + ": 'points' must be a non-empty array");
        std::vector<Rational> xs;
        xs.reserve(pts.size());
        for (const auto& x : pts) xs.push_back(rational_from_json(x, context + " point"));
        return PointFamily::explicit_list(std::move(xs));
    }
    throw config_error(context + ": unknown kind '" + kind + "'");
}

FRoute route_from_json(const nlohmann::json& j) {
    const std::string context = "route descriptor";
    if (!j.is_object()) throw config_error(context + ": must be an object");
    FRoute route;
    if (j.contains("force_certified")) {
        if (!j.at("force_certified").is_boolean())
            throw config_error(context + ": 'force_certified' must be a boolean");
        route.force_certified = j.at("force_certified").get<bool>();
    }
    if (j.contains("delta"))
        route.delta = rational_from_json(j.at("delta"), context + " delta");
    if (j.contains("bound"))
        route.bound_override = rational_from_json(j.at("bound"), context + " bound");
    if (j.contains("uniform_p"))
        route.uniform_p = nat_from_json(j.at("uniform_p"), context + " uniform_p");
    return route;
}

WindowPredicate predicate_from_json(const nlohmann::json& descriptor) {
    const std::string context = "predicate descriptor";
    PredicateKind kind = predicate_kind_from_name(string_field(descriptor, "kind", context));
    Rational eps =
        rational_from_json(require_field(descriptor, "eps", context), context + " eps");
    FRoute route;
    if (descriptor.contains("route")) route = route_from_json(descriptor.at("route"));
    switch (kind) {
        case PredicateKind::cauchy_partial_sums:
            return WindowPredicate::cauchy_partial_sums(
                sequence_from_json(require_field(descriptor, "sequence", context)), eps);
        case PredicateKind::cauchy_f:
            return WindowPredicate::cauchy_f(
                sequence_from_json(require_field(descriptor, "sequence", context)),
                points_from_json(require_field(descriptor, "points", context)), eps, route);
        case PredicateKind::joint_abel:
            return WindowPredicate::joint_abel(
                sequence_from_json(require_field(descriptor, "sequence", context)),
                points_from_json(require_field(descriptor, "points", context)), eps, route);
        case PredicateKind::small_tail:
            return WindowPredicate::small_tail(
                sequence_from_json(require_field(descriptor, "sequence", context)), eps);
        case PredicateKind::points_near_1:
            return WindowPredicate::points_near_1(
                points_from_json(require_field(descriptor, "points", context)), eps);
    }
    throw error("unreachable");
}

}  // namespace ratelab
