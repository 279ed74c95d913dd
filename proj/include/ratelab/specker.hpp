#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ratelab/series.hpp"

namespace ratelab {

// A monotone nondecreasing rational sequence q_0 <= q_1 <= ... with
// |q_n| <= bound. Monotonicity of function-backed bases cannot be checked up
// front; the transforms spot-check every adjacent pair they touch and raise
// config_error on a violation.
class BaseSequence {
public:
    // q_n = 1 - 2^-n.
    static BaseSequence dyadic_approach();
    // q_n = n / (n+1).
    static BaseSequence rational_approach();
    // q_0 .. q_{k-1} as given, constant q_{k-1} afterwards. Monotonicity is
    // validated eagerly here.
    static BaseSequence table(std::vector<Rational> values);
    // Escape hatch for tests; not serializable.
    static BaseSequence from_function(std::function<Rational(const Nat&)> fn, Rational bound,
                                      std::string label);

    Rational value(const Nat& n) const;  // |q_n| <= bound checked on access
    const Rational& bound() const;

    // Index past which the sequence is known constant (table bases).
    const std::optional<Nat>& settles_after() const;

    const std::string& label() const;
    bool serializable() const;
    nlohmann::json descriptor() const;

private:
    struct Impl;
    explicit BaseSequence(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

// Difference coefficients: a_0 = q_0, a_{n+1} = q_{n+1} - q_n. The partial
// sums telescope to s_n = q_n, so metastability of the partial sums is
// exactly metastability of the base.
CoefficientSequence difference_transform(const BaseSequence& base);

// Spread coefficients: a_0 = q_0, a_1 = q_1 - q_0, and for n >= 2 with
// 2^(m-1) < n <= 2^m the block value a_n = (q_{m+1} - q_m) / 2^(m-1).
// Partial sums interpolate the base along each block: s_{2^m} = q_{m+1},
// and n * |a_n| <= 2 * (q_{m+1} - q_m), so the coefficients satisfy the
// tail-smallness condition whenever the base increments shrink.
CoefficientSequence spread_transform(const BaseSequence& base);

// Block exponent of the spread transform: the m with 2^(m-1) < n <= 2^m.
// Requires n >= 2.
Nat spread_block_exponent(const Nat& n);

}  // namespace ratelab
