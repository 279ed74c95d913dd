#include "ratelab/finitary.hpp"

#include <utility>

namespace ratelab {

namespace {

Rational nat_rat(const Nat& n) { return Rational(Int(n)); }

// Instance-consistency spot checks. A violation does not mean the theorem
// failed; it means the declared bound was a lie, so the instance is rejected
// outright.
void require_sums_bounded(const CoefficientSequence& seq, const Window& w, const Rational& L,
                          const char* who, const ResourceLimits& limits) {
    if (w.empty()) return;
    limits.check_span(w.size(), who);
    for (Nat i = w.lo; i <= w.hi; ++i) {
        Rational s = seq.partial_sum(i, limits);
        if (rat_abs(s) > L)
            throw config_error(std::string(who) + ": declared partial-sum bound L = " +
                               format_rational(L) + " violated at index " + i.str() +
                               " (|s| = " + format_rational(rat_abs(s)) + ")");
    }
}

void require_coeffs_bounded(const CoefficientSequence& seq, const Window& w, const Rational& bound,
                            const char* who, const ResourceLimits& limits) {
    if (w.empty()) return;
    limits.check_span(w.size(), who);
    for (Nat i = w.lo; i <= w.hi; ++i) {
        Rational a = rat_abs(seq.term(i));
        if (a > bound)
            throw config_error(std::string(who) + ": declared coefficient bound " +
                               format_rational(bound) + " violated at index " + i.str() +
                               " (|a| = " + format_rational(a) + ")");
    }
}

// Pointwise x_m <= 1 - 1/p over the clipped window, reported in the same
// shape as the predicate checks.
HoldsReport points_within_p(const PointFamily& points, const Window& w, const Nat& p,
                            const ResourceLimits& limits) {
    HoldsReport out;
    out.threshold = Rational(1) - Rational(Int(1), Int(p));
    Window eff = points.clip(w);
    if (eff.empty()) return out;
    limits.check_span(eff.size(), "points_within_p");
    for (Nat m = eff.lo; m <= eff.hi; ++m) {
        Rational x = points.point(m);
        ++out.checked_pairs;
        if (x > out.threshold) {
            out.ok = false;
            out.witness_i = m;
            out.lhs = x;
            return out;
        }
    }
    return out;
}

// The coefficient range a certified evaluation enumerates: [0; l] with l
// from the same decay-length formula eval_certified uses, capped by finite
// support.
Window certified_coeff_window(const CoefficientSequence& seq, const Rational& delta,
                              const Rational& bound, const Nat& p) {
    Nat l = omega(delta / (bound * nat_rat(p)), p);
    if (const auto& cutoff = seq.support_cutoff(); cutoff && *cutoff < l) l = *cutoff;
    return Window{Nat(0), l};
}

}  // namespace

nlohmann::json check_report_json(const CheckReport& report) {
    nlohmann::json clauses = nlohmann::json::array();
    for (const auto& c : report.clauses) {
        nlohmann::json j = holds_report_json(c.holds);
        j["name"] = c.name;
        clauses.push_back(std::move(j));
    }
    return {{"ok", report.ok}, {"clauses", clauses}};
}

AbelInstance::AbelInstance(CoefficientSequence seq_, PointFamily points_, Rational L_,
                           Rational eps_, GapFunction g_, Nat n1_, Nat n2_, Nat p_)
    : seq(std::move(seq_)),
      points(std::move(points_)),
      L(std::move(L_)),
      eps(std::move(eps_)),
      g(std::move(g_)),
      n1(std::move(n1_)),
      n2(std::move(n2_)),
      p(std::move(p_)) {
    if (eps <= 0) throw domain_error("abel instance: eps must be positive");
    if (L <= 0) throw domain_error("abel instance: L must be positive");
    if (n1 < 1) throw config_error("abel instance: n1 must be >= 1");
    if (p < 1) throw config_error("abel instance: p must be >= 1");
}

Nat AbelInstance::big_n() const { return n1 > n2 ? n1 : n2; }

Nat AbelInstance::window_end() const {
    Nat n = big_n();
    return n + g(n);
}

Nat AbelInstance::decay_length() const { return omega(eps / (8 * L * nat_rat(p)), p); }

Window AbelInstance::conclusion_window() const { return Window{big_n(), window_end()}; }

Window AbelInstance::sums_window() const {
    Nat end = window_end();
    Nat l = decay_length();
    return Window{n1, end > l ? end : l};
}

Window AbelInstance::points_window() const { return Window{n2, window_end()}; }

CheckReport check_abel_premise(const AbelInstance& inst, const ResourceLimits& limits) {
    CheckReport out;
    Window sums = inst.sums_window();
    require_sums_bounded(inst.seq, sums, inst.L, "abel premise", limits);

    auto cauchy = WindowPredicate::cauchy_partial_sums(inst.seq, inst.eps / 4);
    out.clauses.push_back({"partial_sums_cauchy", holds_on(cauchy, sums, limits)});

    Window pts = inst.points_window();
    out.clauses.push_back({"points_within_p", points_within_p(inst.points, pts, inst.p, limits)});

    Rational band = inst.eps / (8 * inst.L * nat_rat(inst.n1));
    auto near = WindowPredicate::points_near_1(inst.points, band);
    out.clauses.push_back({"points_near_1", holds_on(near, pts, limits)});

    for (const auto& c : out.clauses) out.ok = out.ok && c.holds.ok;
    return out;
}

CheckReport check_abel_conclusion(const AbelInstance& inst, const ConclusionOptions& options,
                                  const ResourceLimits& limits) {
    CheckReport out;
    Window w = inst.conclusion_window();
    require_sums_bounded(inst.seq, w, inst.L, "abel conclusion", limits);

    FRoute route;
    route.force_certified = options.force_certified;
    route.delta = options.delta;
    route.bound_override = 2 * inst.L;
    route.uniform_p = inst.p;
    auto joint = WindowPredicate::joint_abel(inst.seq, inst.points, inst.eps, route);
    if (joint.certified_route()) {
        Rational delta = options.delta ? *options.delta : Rational(inst.eps / 8);
        Window coeffs = certified_coeff_window(inst.seq, delta, 2 * inst.L, inst.p);
        require_coeffs_bounded(inst.seq, coeffs, 2 * inst.L, "abel conclusion", limits);
    }
    out.clauses.push_back({"joint_conclusion", holds_on(joint, w, limits)});
    out.ok = out.clauses.front().holds.ok;
    return out;
}

TauberInstance::TauberInstance(CoefficientSequence seq_, Rational L_, Rational eps_,
                               GapFunction g_, Nat n1_, Nat n2_)
    : seq(std::move(seq_)),
      L(std::move(L_)),
      eps(std::move(eps_)),
      g(std::move(g_)),
      n1(std::move(n1_)),
      n2(std::move(n2_)) {
    if (eps <= 0) throw domain_error("tauber instance: eps must be positive");
    if (L <= 0) throw domain_error("tauber instance: L must be positive");
    if (n2 < 1) throw config_error("tauber instance: n2 must be >= 1");
}

Nat TauberInstance::big_n() const {
    Nat quad = ceil_rat_nat(2 * L * nat_rat(n1) * nat_rat(n1) / eps);
    return quad > n2 ? quad : n2;
}

Nat TauberInstance::window_end() const {
    Nat n = big_n();
    return n + g(n);
}

Nat TauberInstance::decay_length() const {
    Nat p = window_end();
    return omega(eps / (4 * L * nat_rat(p)), p);
}

Window TauberInstance::conclusion_window() const { return Window{big_n(), window_end()}; }

Window TauberInstance::tail_window() const { return Window{n1, decay_length()}; }

Window TauberInstance::f_window() const { return Window{n2, window_end()}; }

CheckReport check_tauber_premise(const TauberInstance& inst, const ConclusionOptions& options,
                                 const ResourceLimits& limits) {
    CheckReport out;
    Window tail = inst.tail_window();
    require_coeffs_bounded(inst.seq, tail, inst.L, "tauber premise", limits);

    auto small = WindowPredicate::small_tail(inst.seq, inst.eps / 8);
    out.clauses.push_back({"small_tail", holds_on(small, tail, limits)});

    FRoute route;
    route.force_certified = options.force_certified;
    route.delta = options.delta;
    route.bound_override = inst.L;
    auto cauchy = WindowPredicate::cauchy_f(inst.seq, PointFamily::v(), inst.eps / 4, route);
    Window fw = inst.f_window();
    if (cauchy.certified_route()) {
        Rational delta = options.delta ? *options.delta : Rational(inst.eps / 32);
        if (!fw.empty()) {
            Window coeffs = certified_coeff_window(inst.seq, delta, inst.L, fw.hi);
            require_coeffs_bounded(inst.seq, coeffs, inst.L, "tauber premise", limits);
        }
    }
    out.clauses.push_back({"f_values_cauchy", holds_on(cauchy, fw, limits)});

    for (const auto& c : out.clauses) out.ok = out.ok && c.holds.ok;
    return out;
}

CheckReport check_tauber_conclusion(const TauberInstance& inst, const ResourceLimits& limits) {
    CheckReport out;
    auto cauchy = WindowPredicate::cauchy_partial_sums(inst.seq, inst.eps);
    out.clauses.push_back({"partial_sums_cauchy", holds_on(cauchy, inst.conclusion_window(), limits)});
    out.ok = out.clauses.front().holds.ok;
    return out;
}

}  // namespace ratelab
