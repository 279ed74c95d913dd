#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ratelab/limits.hpp"
#include "ratelab/numbers.hpp"

namespace ratelab {

// A power-series coefficient stream a_0, a_1, ... with optional certified
// metadata. Declared bounds are trusted lazily: every index actually touched
// is re-checked against them, and a violation is a hard error (config_error),
// never a silent verdict.
//
// Copies share the prefix-sum memo; access is thread safe. Sequences with an
// exact partial-sum form (geometric, constant, table-backed) skip the memo
// entirely so windows far out stay cheap.
class CoefficientSequence {
public:
    struct Parts {
        std::function<Rational(const Nat&)> term;
        std::optional<Rational> coeff_bound;                         // |a_i| <= coeff_bound
        std::optional<Rational> partial_sum_bound;                   // |s_n| <= partial_sum_bound
        std::optional<Nat> support_cutoff;                           // a_i = 0 for i > cutoff
        std::function<Rational(const Rational&)> closed_form;        // exact F(x) on [0,1), optional
        std::function<Rational(const Nat&)> closed_partial;          // exact s_n, optional
        std::string label;
        nlohmann::json descriptor;                                   // empty = not serializable
    };

    explicit CoefficientSequence(Parts parts);

    // a_i, checked against coeff_bound.
    Rational term(const Nat& i) const;

    // s_n = a_0 + ... + a_n, checked against partial_sum_bound.
    Rational partial_sum(const Nat& n, const ResourceLimits& limits = {}) const;

    // s_lo .. s_hi as a dense vector (empty when hi < lo).
    std::vector<Rational> partial_sum_range(const Nat& lo, const Nat& hi,
                                            const ResourceLimits& limits = {}) const;

    const std::optional<Rational>& coeff_bound() const;
    const std::optional<Rational>& partial_sum_bound() const;
    const std::optional<Nat>& support_cutoff() const;
    const std::string& label() const;

    bool has_closed_form() const;
    // Exact F(x); requires has_closed_form() and 0 <= x < 1.
    Rational closed_form(const Rational& x) const;

    bool serializable() const;
    nlohmann::json descriptor() const;  // throws config_error when not serializable

    // Same stream without the exact-F route (forces certified evaluation).
    CoefficientSequence without_closed_form() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Built-in families. Ratios and scales are validated at construction.
CoefficientSequence geometric_sequence(const Rational& ratio);          // a_i = ratio^i, 0 < ratio < 1
CoefficientSequence alternating_harmonic_sequence();                    // a_i = (-1)^i / (i+1)
CoefficientSequence power_sequence(unsigned k);                         // a_0 = 1, a_i = i^-k
CoefficientSequence zero_sequence();
CoefficientSequence constant_sequence(const Rational& c);               // a_i = c
CoefficientSequence table_sequence(std::vector<Rational> terms);        // finitely supported
CoefficientSequence sequence_from_function(std::function<Rational(const Nat&)> term,
                                           std::optional<Rational> coeff_bound,
                                           std::optional<Rational> partial_sum_bound,
                                           std::string label);

CoefficientSequence sequence_from_json(const nlohmann::json& descriptor);

// Evaluation point for partial sums of the series: x in [0, 1 - 1/p].
// The pair travels together because every tail estimate is stated in p.
struct EvalPoint {
    Rational x;
    Nat p;

    EvalPoint(Rational x_, Nat p_);
};

// F_l(x) = sum_{i<=l} a_i x^i, exact.
Rational eval_truncated(const CoefficientSequence& seq, const Rational& x, const Nat& l,
                        const ResourceLimits& limits = {});

struct CertifiedValue {
    Rational value;
    Nat l_used;
    Rational accuracy;  // certified |F(x) - value| bound; 0 when the tail is empty
};

// Truncated evaluation with a certified tail bound: |F(pt.x) - value| <= eps.
// Uses l = omega(eps / (L * p), p) with L the coefficient bound (override
// wins when provided; it must still be a true bound). Finite support caps l.
CertifiedValue eval_certified(const CoefficientSequence& seq, const EvalPoint& pt,
                              const Rational& eps, const ResourceLimits& limits = {},
                              const std::optional<Rational>& bound_override = {});

// Both sides of the partial-summation identity
//   F_l(x) = s_l x^l + (1-x) * sum_{i<l} s_i x^i,
// computed independently and exactly.
std::pair<Rational, Rational> summation_by_parts(const CoefficientSequence& seq, const Rational& x,
                                                 const Nat& l, const ResourceLimits& limits = {});

}  // namespace ratelab
