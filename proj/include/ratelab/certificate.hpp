#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ratelab/numbers.hpp"

namespace ratelab {

// Outcome of a completed check. `exhausted` is a bounded search giving up,
// distinct from `fail` (a verdict the theorems say should not happen on
// sound instances).
enum class Verdict { pass, fail, exhausted };

const char* verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);

// Replayable record of one scenario run. `inputs` holds the fully resolved
// parameters (descriptors canonicalized, defaults filled in), so running
// them again through the same command reproduces `outcome` byte for byte;
// verify-cert does exactly that. The flat fields feed the fixed CSV columns.
struct Certificate {
    std::string command;
    std::string predicate;  // label of the verified statement
    std::optional<Rational> eps;
    std::string gap;  // compact challenge rendering, empty when none applies
    std::optional<Nat> n_found;
    std::optional<Rational> bound;
    Verdict verdict = Verdict::pass;
    nlohmann::json inputs;
    nlohmann::json outcome;

    nlohmann::json to_json() const;
    static Certificate from_json(const nlohmann::json& j);

    // One row for the columns predicate,eps,gap,N_found,bound,verdict.
    std::string csv_row() const;
};

inline constexpr const char* certificate_csv_header = "predicate,eps,gap,N_found,bound,verdict";

// RFC 4180 quoting: fields containing a comma, quote, or newline are wrapped
// in double quotes with inner quotes doubled.
std::string csv_escape(const std::string& field);

}  // namespace ratelab
