#pragma once

#include <string>
#include <vector>

#include "ratelab/gap.hpp"
#include "ratelab/metastability.hpp"
#include "ratelab/points.hpp"
#include "ratelab/predicate.hpp"
#include "ratelab/series.hpp"

namespace ratelab {

// One named clause of a premise or conclusion check, with the window
// verdict and its diagnostics.
struct ClauseReport {
    std::string name;
    HoldsReport holds;
};

struct CheckReport {
    bool ok = true;
    std::vector<ClauseReport> clauses;

    const ClauseReport* first_failure() const {
        for (const auto& c : clauses)
            if (!c.holds.ok) return &c;
        return nullptr;
    }
};

nlohmann::json check_report_json(const CheckReport& report);

// Finite Abel instance. The data is everything quantified on the premise
// side: a coefficient stream whose partial sums stay within L, a point
// family, an accuracy eps, a challenge g, the two premise start indices and
// the closeness scale p. Derived: N = max(n1, n2), the conclusion window
// [N; N+g(N)], and the decay length l = omega(eps/(8 L p), p).
//
// Premise clauses:
//   partial_sums_cauchy   |s_i - s_j| <= eps/4   on [n1; max(N+g(N), l)]
//   points_within_p       x_m <= 1 - 1/p         on [n2; N+g(N)]
//   points_near_1         1 - x_m <= eps/(8 L n1) on [n2; N+g(N)]
// Conclusion:
//   joint_conclusion      |F(x_m) - s_n| <= eps  on [N; N+g(N)] squared
//
// Values touched along the way are spot-checked against L (partial sums)
// and 2L (coefficients, certified route only); a violation means the
// instance itself is ill-formed and raises config_error.
struct AbelInstance {
    CoefficientSequence seq;
    PointFamily points;
    Rational L;
    Rational eps;
    GapFunction g;
    Nat n1;  // >= 1
    Nat n2;
    Nat p;   // >= 1

    AbelInstance(CoefficientSequence seq_, PointFamily points_, Rational L_, Rational eps_,
                 GapFunction g_, Nat n1_, Nat n2_, Nat p_);

    Nat big_n() const;
    Nat window_end() const;    // N + g(N)
    Nat decay_length() const;  // omega(eps / (8 L p), p)

    Window conclusion_window() const;  // [N; N+g(N)]
    Window sums_window() const;        // [n1; max(N+g(N), l)]
    Window points_window() const;      // [n2; N+g(N)]
};

// How conclusion-side F values are evaluated. The default takes the exact
// sum form when the sequence has one; otherwise (or when forced) certified
// evaluation with accuracy delta (default eps/8) compares against the
// tightened threshold eps - 2*delta, pinning the decay-length bound to 2L
// and the evaluation scale to the instance p.
struct ConclusionOptions {
    bool force_certified = false;
    std::optional<Rational> delta;
};

CheckReport check_abel_premise(const AbelInstance& inst, const ResourceLimits& limits = {});
CheckReport check_abel_conclusion(const AbelInstance& inst, const ConclusionOptions& options = {},
                                  const ResourceLimits& limits = {});

// Finite Tauber instance over the approach points v_n = 1 - 1/n. L bounds
// the coefficients themselves here. Derived: N = max(ceil(2 L n1^2 / eps),
// n2), p = N + g(N), l = omega(eps/(4 L p), p).
//
// Premise clauses:
//   small_tail        i * |a_i| <= eps/8        on [n1; l]
//   f_values_cauchy   |F(v_m) - F(v_n)| <= eps/4 on [n2; N+g(N)]
// Conclusion:
//   partial_sums_cauchy   |s_m - s_n| <= eps    on [N; N+g(N)]
//
// Coefficients touched are spot-checked against L; violations raise
// config_error.
struct TauberInstance {
    CoefficientSequence seq;
    Rational L;
    Rational eps;
    GapFunction g;
    Nat n1;  // tail-smallness start
    Nat n2;  // F-cauchyness start, >= 1

    TauberInstance(CoefficientSequence seq_, Rational L_, Rational eps_, GapFunction g_, Nat n1_,
                   Nat n2_);

    Nat big_n() const;
    Nat window_end() const;    // N + g(N), also the evaluation scale p
    Nat decay_length() const;  // omega(eps / (4 L p), p)

    Window conclusion_window() const;  // [N; N+g(N)]
    Window tail_window() const;        // [n1; l]
    Window f_window() const;           // [n2; N+g(N)]
};

// Premise-side F values follow the same route rules as conclusions; the
// certified default accuracy is (eps/4)/8.
CheckReport check_tauber_premise(const TauberInstance& inst, const ConclusionOptions& options = {},
                                 const ResourceLimits& limits = {});
CheckReport check_tauber_conclusion(const TauberInstance& inst, const ResourceLimits& limits = {});

}  // namespace ratelab
