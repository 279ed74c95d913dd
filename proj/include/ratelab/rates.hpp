#pragma once

#include <functional>

#include "ratelab/finitary.hpp"
#include "ratelab/gap.hpp"
#include "ratelab/metastability.hpp"
#include "ratelab/points.hpp"
#include "ratelab/predicate.hpp"
#include "ratelab/series.hpp"

namespace ratelab {

// A premise rate: given an accuracy and a challenge, produce a start index n
// whose direct window [n; challenge(n)] satisfies the underlying statement.
// Realized here by bounded verified search; any sound functional works.
using SearchFunctional = std::function<Nat(const Rational& eps, const GapFunction& challenge)>;

// Bounded-search realizations, scanning n = start .. cap and raising
// cap_exhausted (with the stage named) when nothing passes.
SearchFunctional sums_metastability_search(CoefficientSequence seq, Nat start, Nat cap,
                                           ResourceLimits limits = {});
SearchFunctional f_metastability_search(CoefficientSequence seq, PointFamily points, FRoute route,
                                        Nat start, Nat cap, ResourceLimits limits = {});

// Least n with 1 - x_m <= delta for every family point in the direct window
// [n; h(n)]. Closed forms: 0 when delta >= 1, ceil(1/delta) for the v
// family; other families fall back to bounded search.
Nat phi_points(const PointFamily& points, const Rational& delta, const GapFunction& h,
               const Nat& cap, const ResourceLimits& limits = {});

// Least n with i * |a_i| <= bound on the direct window [n; h(n)].
Nat psi_tail(const CoefficientSequence& seq, const Rational& bound, const GapFunction& h,
             const Nat& cap, const ResourceLimits& limits = {});

// Composed rate for the finite Abel theorem. Builds the challenge
//   h_a(b) = max{a,b} + g(max{a,b}),
//   M_a  = max{a, phi_points(eps/(8 L a), h_a)},
//   p_a  = uniform p for the points below M_a + g(M_a),
//   f(a) = max{M_a + g(M_a), omega(eps/(8 L p_a), p_a)},
// obtains n1 from the supplied partial-sum metastability functional at
// (eps/4, f), n2 = phi_points(eps/(8 L n1), h_n1), and assembles the
// premise-true instance with N = max(n1, n2). The premise and conclusion
// are re-checked as part of the call; the audited identities
//   f(n1) = max{N + g(N), l}   and   h_n1(n2) = N + g(N)
// are recomputed independently. Any failure is an internal soundness bug
// and raises error; cap exhaustion raises cap_exhausted.
struct AbelRateBundle {
    AbelInstance instance;
    Nat n;             // max(n1, n2)
    Nat window_end;    // N + g(N)
    Nat decay_length;  // l = omega(eps/(8 L p), p)
    Nat m_at_n1;       // M_{n1}
    Nat f_at_n1;
    Nat h_at_n2;
    CheckReport premise;
    CheckReport conclusion;

    nlohmann::json to_json() const;
};

AbelRateBundle abel_rate(const CoefficientSequence& seq, const PointFamily& points,
                         const Rational& L, const Rational& eps, const GapFunction& g,
                         const SearchFunctional& s_meta, const Nat& cap,
                         const ResourceLimits& limits = {});

// Composed rate for the finite Tauber theorem over v_n = 1 - 1/n. With
// gt(x) = x + g(x) and N(a,b) = max{ceil(2 L b^2 / eps), a}:
//   h_a(b) = omega(eps / (4 L gt(N(a,b))), gt(N(a,b))),
//   f(a)   = omega(eps / (4 L gt(M_a)),   gt(M_a)),  M_a = N(a, psi_tail(h_a)),
// so the tail search challenge reaches exactly the decay length of the
// instance it induces. n2 comes from the supplied F-value metastability
// functional at (eps/4, f), n1 = psi_tail(eps/8, h_n2), N = N(n2, n1).
// Audited identities: f(n2) = omega(eps/(4 L p), p) = h_n2(n1) with
// p = N + g(N). Premise and conclusion re-checked as in abel_rate.
struct TauberRateBundle {
    TauberInstance instance;
    Nat n;             // max(ceil(2 L n1^2 / eps), n2)
    Nat window_end;    // p = N + g(N)
    Nat decay_length;  // l = omega(eps/(4 L p), p)
    Nat f_at_n2;
    Nat h_at_n1;
    CheckReport premise;
    CheckReport conclusion;

    nlohmann::json to_json() const;
};

TauberRateBundle tauber_rate(const CoefficientSequence& seq, const Rational& L,
                             const Rational& eps, const GapFunction& g,
                             const SearchFunctional& f_meta, const Nat& cap,
                             const ResourceLimits& limits = {});

// The classical iterate bound for monotone sequences valued in [0, L]: the
// ceil(L/eps)-fold iterate of the challenge at 0. Windows along the iterate
// chain cannot all fail, and the chain is nondecreasing for monotone
// challenges, so the least metastable start is at most this value.
Nat monotone_metastability_bound(const Rational& eps, const GapFunction& challenge,
                                 const Rational& L, const ResourceLimits& limits = {});

// Closed-form metastability bound for positive series with partial sums
// bounded by L, evaluated against |F(v_m) - s_n| <= eps on [N; N+g(N)]:
//   gamma = ceil(8 L f^(ceil(4L/eps))(0) / eps),
//   f(a)  = omega(eps / (8 L p_a), p_a),
//   p_a   = max(1, gt(ceil(8 L a / eps))),  gt(x) = x + g(x).
Nat gamma_bound(const Rational& eps, const GapFunction& g, const Rational& L,
                const ResourceLimits& limits = {});

}  // namespace ratelab
