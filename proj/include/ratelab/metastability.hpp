#pragma once

#include <optional>

#include "ratelab/gap.hpp"
#include "ratelab/predicate.hpp"
#include "ratelab/window.hpp"

namespace ratelab {

// Outcome of checking a predicate on one window. When ok is false the
// witness indices identify a violating index (pointwise) or pair, with lhs
// the violating magnitude. checked_pairs counts the comparisons the verdict
// covers, not the evaluations performed: the pairwise checks reduce a
// quadratic quantifier to one pass over extremes.
struct HoldsReport {
    bool ok = true;
    std::optional<Nat> witness_i;
    std::optional<Nat> witness_j;
    Rational lhs;
    Rational threshold;
    Nat checked_pairs = 0;
};

HoldsReport holds_on(const WindowPredicate& pred, const Window& w,
                     const ResourceLimits& limits = {});

nlohmann::json holds_report_json(const HoldsReport& report);

// Bounded search for the least n whose window [n; n+g(n)] (anchored) or
// [n; g(n)] (direct) satisfies the predicate. Scans n = start .. cap and
// reports exhaustion by an empty `found`; it never fabricates a bound.
struct SearchResult {
    std::optional<Nat> found;
    Nat scanned = 0;            // candidates examined
    Nat checked_pairs = 0;      // cumulative over examined windows
    std::optional<HoldsReport> report;  // the passing window's report
};

SearchResult least_metastable_n(const WindowPredicate& pred, const GapFunction& g, WindowMode mode,
                                const Nat& start, const Nat& cap,
                                const ResourceLimits& limits = {});

// Bounded hunt for a challenge defeating every start index: for each
// n <= n_max, the least k <= k_max making the predicate fail on the direct
// window [n; k]. Returns the table challenge when every n has one, empty as
// soon as some n has none.
std::optional<GapFunction> counterexample_gap(const WindowPredicate& pred, const Nat& n_max,
                                              const Nat& k_max, const ResourceLimits& limits = {});

// Naive quantifier evaluation: the same verdicts by literal double loops.
// Kept as the oracle for the range-reduced kernel and as the serial baseline
// for the benchmark.
namespace reference {

HoldsReport holds_on(const WindowPredicate& pred, const Window& w,
                     const ResourceLimits& limits = {});

SearchResult least_metastable_n(const WindowPredicate& pred, const GapFunction& g, WindowMode mode,
                                const Nat& start, const Nat& cap,
                                const ResourceLimits& limits = {});

}  // namespace reference

}  // namespace ratelab
