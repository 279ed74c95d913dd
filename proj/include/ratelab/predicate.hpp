#pragma once

#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ratelab/points.hpp"
#include "ratelab/series.hpp"
#include "ratelab/window.hpp"

namespace ratelab {

enum class PredicateKind {
    cauchy_partial_sums,  // |s_m - s_n| <= eps over pairs in the window
    cauchy_f,             // |F(x_m) - F(x_n)| <= eps over pairs
    joint_abel,           // |F(x_m) - s_n| <= eps over pairs (m from points, n from sums)
    small_tail,           // i * |a_i| <= eps pointwise
    points_near_1,        // 1 - x_m <= eps pointwise
};

const char* predicate_kind_name(PredicateKind kind);
PredicateKind predicate_kind_from_name(const std::string& name);

// How F(x) values are produced for the predicates that need them. With an
// exact sum form available the comparison threshold is eps itself; on the
// certified route each value carries accuracy delta, so the threshold
// tightens to eps - 2*delta and a pass still certifies the eps statement.
struct FRoute {
    bool force_certified = false;          // ignore the exact form even if present
    std::optional<Rational> delta;         // certified accuracy, default eps/8
    std::optional<Rational> bound_override;  // coefficient bound fed to the decay length
    std::optional<Nat> uniform_p;          // evaluate every point at this p instead of p_for(m)
};

// A quantifier body: the thing asserted at every index (or index pair) of a
// window. Predicates are immutable values; evaluation lives in
// metastability.hpp.
class WindowPredicate {
public:
    static WindowPredicate cauchy_partial_sums(CoefficientSequence seq, Rational eps);
    static WindowPredicate cauchy_f(CoefficientSequence seq, PointFamily points, Rational eps,
                                    FRoute route = {});
    static WindowPredicate joint_abel(CoefficientSequence seq, PointFamily points, Rational eps,
                                      FRoute route = {});
    static WindowPredicate small_tail(CoefficientSequence seq, Rational eps);
    static WindowPredicate points_near_1(PointFamily points, Rational eps);

    PredicateKind kind() const;
    bool pairwise() const;  // cauchy_* and joint_abel
    bool joint() const;     // joint_abel only

    // Nominal bound of the statement.
    const Rational& eps() const;
    // Resolved comparison threshold (eps, or eps - 2*delta when certified).
    const Rational& threshold() const;
    bool certified_route() const;

    // Window with the low end clipped to the point family's domain; identity
    // for predicates that do not sample points.
    Window clip(const Window& w) const;

    // Primary value stream over the clipped window: s_i, F(x_i), i * |a_i|,
    // or 1 - x_i depending on kind.
    Rational value(const Nat& i, const ResourceLimits& limits = {}) const;
    // Secondary stream for joint_abel: the partial sums s_n (unclipped side).
    Rational joint_value(const Nat& n, const ResourceLimits& limits = {}) const;

    std::string describe() const;
    bool serializable() const;
    nlohmann::json descriptor() const;

private:
    struct Impl;
    explicit WindowPredicate(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace ratelab
