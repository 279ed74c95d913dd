#include "ratelab/rates.hpp"

#include <utility>

namespace ratelab {

namespace {

Nat searched_least(const WindowPredicate& pred, const GapFunction& challenge, const Nat& start,
                   const Nat& cap, const char* stage, const ResourceLimits& limits) {
    SearchResult r = least_metastable_n(pred, challenge, WindowMode::direct, start, cap, limits);
    if (!r.found)
        throw cap_exhausted(stage, std::string(stage) + ": no start index up to cap " + cap.str() +
                                       " satisfies " + pred.describe());
    return *r.found;
}

Rational nat_rat(const Nat& n) { return Rational(Int(n)); }

void audit(bool ok, const char* what) {
    if (!ok) throw error(std::string("rate bundle audit failed: ") + what);
}

void require_verified(const CheckReport& report, const char* what) {
    if (report.ok) return;
    const ClauseReport* bad = report.first_failure();
    throw error(std::string("rate pipeline post-verification failed at ") + what +
                (bad ? " (" + bad->name + ")" : ""));
}

}  // namespace

SearchFunctional sums_metastability_search(CoefficientSequence seq, Nat start, Nat cap,
                                           ResourceLimits limits) {
    return [seq = std::move(seq), start = std::move(start), cap = std::move(cap),
            limits](const Rational& eps, const GapFunction& challenge) {
        auto pred = WindowPredicate::cauchy_partial_sums(seq, eps);
        return searched_least(pred, challenge, start, cap, "sums_metastability_search", limits);
    };
}

SearchFunctional f_metastability_search(CoefficientSequence seq, PointFamily points, FRoute route,
                                        Nat start, Nat cap, ResourceLimits limits) {
    return [seq = std::move(seq), points = std::move(points), route = std::move(route),
            start = std::move(start), cap = std::move(cap),
            limits](const Rational& eps, const GapFunction& challenge) {
        auto pred = WindowPredicate::cauchy_f(seq, points, eps, route);
        return searched_least(pred, challenge, start, cap, "f_metastability_search", limits);
    };
}

Nat phi_points(const PointFamily& points, const Rational& delta, const GapFunction& h,
               const Nat& cap, const ResourceLimits& limits) {
    if (delta <= 0) throw domain_error("phi_points: delta must be positive");
    // Every family point lies in [0, 1), so 1 - x_m <= 1 <= delta everywhere.
    if (delta >= 1) return Nat(0);
    if (points.is_v()) {
        // 1 - v_m = 1/m <= delta exactly when m >= 1/delta, and the bound
        // tightens along the family, so the least start is ceil(1/delta).
        return ceil_rat_nat(Rational(1) / delta);
    }
    auto pred = WindowPredicate::points_near_1(points, delta);
    return searched_least(pred, h, Nat(0), cap, "phi_points", limits);
}

Nat psi_tail(const CoefficientSequence& seq, const Rational& bound, const GapFunction& h,
             const Nat& cap, const ResourceLimits& limits) {
    auto pred = WindowPredicate::small_tail(seq, bound);
    return searched_least(pred, h, Nat(0), cap, "psi_tail", limits);
}

nlohmann::json AbelRateBundle::to_json() const {
    nlohmann::json j;
    j["theorem"] = "abel";
    j["eps"] = format_rational(instance.eps);
    j["L"] = format_rational(instance.L);
    j["gap"] = instance.g.to_json();
    j["n1"] = instance.n1.str();
    j["n2"] = instance.n2.str();
    j["p"] = instance.p.str();
    j["n"] = n.str();
    j["window_end"] = window_end.str();
    j["decay_length"] = decay_length.str();
    j["m_at_n1"] = m_at_n1.str();
    j["f_at_n1"] = f_at_n1.str();
    j["h_at_n2"] = h_at_n2.str();
    j["premise"] = check_report_json(premise);
    j["conclusion"] = check_report_json(conclusion);
    return j;
}

AbelRateBundle abel_rate(const CoefficientSequence& seq, const PointFamily& points,
                         const Rational& L, const Rational& eps, const GapFunction& g,
                         const SearchFunctional& s_meta, const Nat& cap,
                         const ResourceLimits& limits) {
    if (eps <= 0) throw domain_error("abel_rate: eps must be positive");
    if (L <= 0) throw domain_error("abel_rate: L must be positive");

    auto gt = [&g](const Nat& x) { return x + g(x); };
    auto h_at = [&](const Nat& a) {
        return GapFunction::opaque(
            [a, gt](const Nat& b) {
                Nat top = a > b ? a : b;
                return gt(top);
            },
            "h_a");
    };
    auto m_at = [&](const Nat& a) {
        if (a == 0) return Nat(0);
        Nat from_phi = phi_points(points, eps / (8 * L * nat_rat(a)), h_at(a), cap, limits);
        return a > from_phi ? a : from_phi;
    };
    auto p_at = [&](const Nat& a) {
        Nat m = m_at(a);
        return points.uniform_p(Window{Nat(0), gt(m)});
    };
    GapFunction f = GapFunction::opaque(
        [&](const Nat& a) {
            Nat reach = gt(m_at(a));
            Nat p = p_at(a);
            Nat l = omega(eps / (8 * L * nat_rat(p)), p);
            return reach > l ? reach : l;
        },
        "abel_f");

    Nat n1 = s_meta(eps / 4, f);
    if (n1 < 1) throw error("abel_rate: metastability functional returned n1 = 0");
    Nat n2 = phi_points(points, eps / (8 * L * nat_rat(n1)), h_at(n1), cap, limits);
    Nat p = p_at(n1);

    AbelRateBundle out{AbelInstance(seq, points, L, eps, g, n1, n2, p),
                       Nat(0), Nat(0), Nat(0), Nat(0), Nat(0), Nat(0),
                       CheckReport{}, CheckReport{}};
    out.n = out.instance.big_n();
    out.window_end = out.instance.window_end();
    out.decay_length = out.instance.decay_length();
    out.m_at_n1 = m_at(n1);
    out.f_at_n1 = f(n1);
    out.h_at_n2 = h_at(n1)(n2);

    audit(out.m_at_n1 == out.n, "M_{n1} = max(n1, n2)");
    audit(out.f_at_n1 == (out.window_end > out.decay_length ? out.window_end : out.decay_length),
          "f(n1) = max(N+g(N), l)");
    audit(out.h_at_n2 == out.window_end, "h_{n1}(n2) = N+g(N)");

    out.premise = check_abel_premise(out.instance, limits);
    require_verified(out.premise, "abel premise");
    out.conclusion = check_abel_conclusion(out.instance, {}, limits);
    require_verified(out.conclusion, "abel conclusion");
    return out;
}

nlohmann::json TauberRateBundle::to_json() const {
    nlohmann::json j;
    j["theorem"] = "tauber";
    j["eps"] = format_rational(instance.eps);
    j["L"] = format_rational(instance.L);
    j["gap"] = instance.g.to_json();
    j["n1"] = instance.n1.str();
    j["n2"] = instance.n2.str();
    j["n"] = n.str();
    j["window_end"] = window_end.str();
    j["decay_length"] = decay_length.str();
    j["f_at_n2"] = f_at_n2.str();
    j["h_at_n1"] = h_at_n1.str();
    j["premise"] = check_report_json(premise);
    j["conclusion"] = check_report_json(conclusion);
    return j;
}

TauberRateBundle tauber_rate(const CoefficientSequence& seq, const Rational& L,
                             const Rational& eps, const GapFunction& g,
                             const SearchFunctional& f_meta, const Nat& cap,
                             const ResourceLimits& limits) {
    if (eps <= 0) throw domain_error("tauber_rate: eps must be positive");
    if (L <= 0) throw domain_error("tauber_rate: L must be positive");

    auto gt = [&g](const Nat& x) { return x + g(x); };
    auto big_n_of = [&](const Nat& a, const Nat& b) {
        Nat quad = ceil_rat_nat(2 * L * nat_rat(b) * nat_rat(b) / eps);
        return quad > a ? quad : a;
    };
    auto h_at = [&](const Nat& a) {
        return GapFunction::opaque(
            [a, gt, big_n_of, &L, &eps](const Nat& b) {
                Nat p = gt(big_n_of(a, b));
                // gt vanishes at 0 when g(0) = 0; an empty reach demands nothing.
                if (p == 0) return Nat(0);
                return omega(eps / (4 * L * nat_rat(p)), p);
            },
            "h_a");
    };
    GapFunction f = GapFunction::opaque(
        [&](const Nat& a) {
            Nat tail_start = psi_tail(seq, eps / 8, h_at(a), cap, limits);
            Nat p = gt(big_n_of(a, tail_start));
            if (p == 0) return Nat(0);
            return omega(eps / (4 * L * nat_rat(p)), p);
        },
        "tauber_f");

    Nat n2 = f_meta(eps / 4, f);
    if (n2 < 1) throw error("tauber_rate: metastability functional returned n2 = 0");
    Nat n1 = psi_tail(seq, eps / 8, h_at(n2), cap, limits);

    TauberRateBundle out{TauberInstance(seq, L, eps, g, n1, n2),
                         Nat(0), Nat(0), Nat(0), Nat(0), Nat(0),
                         CheckReport{}, CheckReport{}};
    out.n = out.instance.big_n();
    out.window_end = out.instance.window_end();
    out.decay_length = out.instance.decay_length();
    out.f_at_n2 = f(n2);
    out.h_at_n1 = h_at(n2)(n1);

    audit(out.n == big_n_of(n2, n1), "N = max(ceil(2 L n1^2 / eps), n2)");
    audit(out.f_at_n2 == out.decay_length, "f(n2) = omega(eps/(4 L p), p)");
    audit(out.h_at_n1 == out.decay_length, "h_{n2}(n1) reaches the decay length");

    out.premise = check_tauber_premise(out.instance, {}, limits);
    require_verified(out.premise, "tauber premise");
    out.conclusion = check_tauber_conclusion(out.instance, limits);
    require_verified(out.conclusion, "tauber conclusion");
    return out;
}

Nat monotone_metastability_bound(const Rational& eps, const GapFunction& challenge,
                                 const Rational& L, const ResourceLimits& limits) {
    if (eps <= 0) throw domain_error("monotone_metastability_bound: eps must be positive");
    if (L < 0) throw domain_error("monotone_metastability_bound: L must be nonnegative");
    Nat steps = ceil_rat_nat(L / eps);
    if (steps > limits.max_iterations)
        throw resource_error("monotone_metastability_bound: " + steps.str() +
                             " iterations exceed limit " + limits.max_iterations.str());
    Nat n(0);
    for (Nat i = 0; i < steps; ++i) {
        n = challenge(n);
        limits.check_value(n, "monotone_metastability_bound iterate");
    }
    return n;
}

Nat gamma_bound(const Rational& eps, const GapFunction& g, const Rational& L,
                const ResourceLimits& limits) {
    if (eps <= 0) throw domain_error("gamma_bound: eps must be positive");
    if (L <= 0) throw domain_error("gamma_bound: L must be positive");
    Nat steps = ceil_rat_nat(4 * L / eps);
    if (steps > limits.max_iterations)
        throw resource_error("gamma_bound: " + steps.str() + " iterations exceed limit " +
                             limits.max_iterations.str());
    Nat a(0);
    for (Nat i = 0; i < steps; ++i) {
        Nat scaled = ceil_rat_nat(8 * L * Rational(Int(a)) / eps);
        Nat p = scaled + g(scaled);
        if (p < 1) p = 1;
        a = omega(eps / (8 * L * Rational(Int(p))), p);
        limits.check_value(a, "gamma_bound iterate");
    }
    return ceil_rat_nat(8 * L * Rational(Int(a)) / eps);
}

}  // namespace ratelab
