#include "ratelab/certificate.hpp"

#include "ratelab/json_util.hpp"

namespace ratelab {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::exhausted: return "exhausted";
    }
    throw error("unreachable");
}

Verdict verdict_from_name(const std::string& name) {
    for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::exhausted})
        if (name == verdict_name(v)) return v;
    throw config_error("unknown verdict '" + name + "'");
}

nlohmann::json Certificate::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["predicate"] = predicate;
    if (eps) j["eps"] = format_rational(*eps);
    j["gap"] = gap;
    if (n_found) j["n_found"] = n_found->str();
    if (bound) j["bound"] = format_rational(*bound);
    j["verdict"] = verdict_name(verdict);
    j["inputs"] = inputs;
    j["outcome"] = outcome;
    return j;
}

Certificate Certificate::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("certificate: expected an object");
    Certificate c;
    c.command = string_field(j, "command", "certificate");
    c.predicate = string_field(j, "predicate", "certificate");
    if (j.contains("eps")) c.eps = rational_from_json(j.at("eps"), "certificate eps");
    c.gap = string_field(j, "gap", "certificate");
    if (j.contains("n_found")) c.n_found = nat_from_json(j.at("n_found"), "certificate n_found");
    if (j.contains("bound")) c.bound = rational_from_json(j.at("bound"), "certificate bound");
    c.verdict = verdict_from_name(string_field(j, "verdict", "certificate"));
    c.inputs = require_field(j, "inputs", "certificate");
    c.outcome = require_field(j, "outcome", "certificate");
    return c;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string Certificate::csv_row() const {
    std::string row = csv_escape(predicate);
    row += ',';
    if (eps) row += csv_escape(format_rational(*eps));
    row += ',';
    row += csv_escape(gap);
    row += ',';
    if (n_found) row += n_found->str();
    row += ',';
    if (bound) row += csv_escape(format_rational(*bound));
    row += ',';
    row += verdict_name(verdict);
    return row;
}

}  // namespace ratelab
