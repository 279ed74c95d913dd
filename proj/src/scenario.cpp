#include "ratelab/scenario.hpp"

#include <atomic>
#include <cstddef>
#include <thread>
#include <utility>

#include "ratelab/descriptors.hpp"
#include "ratelab/finitary.hpp"
#include "ratelab/json_util.hpp"
#include "ratelab/metastability.hpp"
#include "ratelab/rates.hpp"
#include "ratelab/specker.hpp"

namespace ratelab {

OutputFormat output_format_from_name(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "table") return OutputFormat::table;
    throw config_error("unknown output format '" + name + "' (expected json, csv, or table)");
}

std::vector<Scenario> Scenario::parse(const nlohmann::json& j, const std::string& default_command) {
    std::vector<Scenario> out;
    auto one = [&](const nlohmann::json& o, const std::string& where) {
        if (!o.is_object()) throw config_error(where + ": expected an object");
        Scenario s;
        if (o.contains("command")) {
            s.command = string_field(o, "command", where);
        } else if (!default_command.empty()) {
            s.command = default_command;
        } else {
            throw config_error(where + ": missing 'command'");
        }
        s.params = o;
        s.params.erase("command");
        out.push_back(std::move(s));
    };
    if (j.is_object() && j.contains("scenarios")) {
        const auto& arr = j.at("scenarios");
        if (!arr.is_array()) throw config_error("'scenarios' must be an array");
        std::size_t i = 0;
        for (const auto& o : arr) {
            one(o, "scenarios[" + std::to_string(i) + "]");
            ++i;
        }
        return out;
    }
    one(j, "scenario");
    return out;
}

namespace {

// Unrecognized keys are rejected, not ignored: a typo in a parameter name
// must not silently run a different experiment.
void reject_unknown(const nlohmann::json& params, std::initializer_list<const char*> allowed,
                    const std::string& ctx) {
    for (auto it = params.begin(); it != params.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known) throw config_error(ctx + ": unknown parameter '" + it.key() + "'");
    }
}

Nat nat_param(const nlohmann::json& params, const char* key, const std::string& ctx) {
    return nat_from_json(require_field(params, key, ctx), ctx + " " + key);
}

Rational rat_param(const nlohmann::json& params, const char* key, const std::string& ctx) {
    return rational_from_json(require_field(params, key, ctx), ctx + " " + key);
}

// Explicit scenario cap beats the CLI-wide override beats the default. The
// resolved value is always recorded in the certificate inputs, so replays
// never consult the options again.
Nat resolve_cap(const nlohmann::json& params, const RunOptions& opts, const std::string& ctx) {
    if (params.contains("cap")) return nat_from_json(params.at("cap"), ctx + " cap");
    if (opts.cap) return *opts.cap;
    return Nat(100000);
}

ConclusionOptions route_options(const nlohmann::json& params, const std::string& ctx) {
    ConclusionOptions o;
    if (!params.contains("route")) return o;
    const auto& r = params.at("route");
    if (!r.is_object()) throw config_error(ctx + ": route must be an object");
    reject_unknown(r, {"force_certified", "delta"}, ctx + " route");
    if (r.contains("force_certified")) {
        if (!r.at("force_certified").is_boolean())
            throw config_error(ctx + ": route.force_certified must be a boolean");
        o.force_certified = r.at("force_certified").get<bool>();
    }
    if (r.contains("delta")) o.delta = rational_from_json(r.at("delta"), ctx + " route delta");
    return o;
}

nlohmann::json route_options_json(const ConclusionOptions& o) {
    nlohmann::json r = nlohmann::json::object();
    if (o.force_certified) r["force_certified"] = true;
    if (o.delta) r["delta"] = format_rational(*o.delta);
    return r;
}

std::string window_text(const Nat& lo, const Nat& hi) {
    return "[" + lo.str() + "; " + hi.str() + "]";
}

Certificate run_search_n(const nlohmann::json& params, const RunOptions& opts) {
    const std::string ctx = "search-n";
    reject_unknown(params, {"predicate", "gap", "mode", "start", "cap"}, ctx);
    WindowPredicate pred = predicate_from_json(require_field(params, "predicate", ctx));
    GapFunction g = GapFunction::from_json(require_field(params, "gap", ctx));
    WindowMode mode = params.contains("mode")
                          ? window_mode_from_name(string_field(params, "mode", ctx))
                          : WindowMode::anchored;
    Nat start = params.contains("start") ? nat_from_json(params.at("start"), ctx + " start")
                                         : Nat(0);
    Nat cap = resolve_cap(params, opts, ctx);

    SearchResult r = least_metastable_n(pred, g, mode, start, cap, opts.limits);

    Certificate c;
    c.command = ctx;
    c.predicate = pred.describe();
    c.eps = pred.eps();
    c.gap = g.describe();
    c.n_found = r.found;
    c.verdict = r.found ? Verdict::pass : Verdict::exhausted;
    c.inputs = {{"predicate", pred.descriptor()},
                {"gap", g.to_json()},
                {"mode", window_mode_name(mode)},
                {"start", start.str()},
                {"cap", cap.str()}};
    c.outcome["scanned"] = r.scanned.str();
    c.outcome["checked_pairs"] = r.checked_pairs.str();
    if (r.found) {
        Window w = make_window(mode, *r.found, g);
        c.outcome["window"] = {{"lo", w.lo.str()}, {"hi", w.hi.str()}};
        c.outcome["accepted"] = holds_report_json(*r.report);
        c.outcome["summary"] = "N = " + r.found->str() + " on " + window_text(w.lo, w.hi);
    } else {
        c.outcome["summary"] = "no N <= " + cap.str();
    }
    return c;
}

std::string check_summary(const CheckReport& premise, const CheckReport& conclusion,
                          const std::string& window) {
    if (premise.ok && conclusion.ok) return "premise and conclusion hold on " + window;
    if (!premise.ok) return "premise clause '" + premise.first_failure()->name + "' fails";
    return "conclusion fails on a premise-true instance ('" +
           conclusion.first_failure()->name + "')";
}

Certificate run_check_abel(const nlohmann::json& params, const RunOptions& opts) {
    const std::string ctx = "check-abel";
    reject_unknown(params, {"sequence", "points", "L", "eps", "gap", "n1", "n2", "p", "route"},
                   ctx);
    CoefficientSequence seq = sequence_from_json(require_field(params, "sequence", ctx));
    PointFamily points =
        params.contains("points") ? points_from_json(params.at("points")) : PointFamily::v();
    Rational L = rat_param(params, "L", ctx);
    Rational eps = rat_param(params, "eps", ctx);
    GapFunction g = GapFunction::from_json(require_field(params, "gap", ctx));
    Nat n1 = nat_param(params, "n1", ctx);
    Nat n2 = nat_param(params, "n2", ctx);
    Nat p = nat_param(params, "p", ctx);
    ConclusionOptions ropt = route_options(params, ctx);

    AbelInstance inst(seq, points, L, eps, g, n1, n2, p);
    CheckReport premise = check_abel_premise(inst, opts.limits);
    CheckReport conclusion = check_abel_conclusion(inst, ropt, opts.limits);

    Certificate c;
    c.command = ctx;
    c.predicate = "abel(" + seq.label() + ", " + points.label() + ")";
    c.eps = eps;
    c.gap = g.describe();
    c.n_found = inst.big_n();
    c.bound = L;
    c.verdict = premise.ok && conclusion.ok ? Verdict::pass : Verdict::fail;
    c.inputs = {{"sequence", seq.descriptor()}, {"points", points.descriptor()},
                {"L", format_rational(L)},      {"eps", format_rational(eps)},
                {"gap", g.to_json()},           {"n1", n1.str()},
                {"n2", n2.str()},               {"p", p.str()}};
    nlohmann::json route = route_options_json(ropt);
    if (!route.empty()) c.inputs["route"] = route;
    c.outcome["n"] = inst.big_n().str();
    c.outcome["window_end"] = inst.window_end().str();
    c.outcome["decay_length"] = inst.decay_length().str();
    c.outcome["premise"] = check_report_json(premise);
    c.outcome["conclusion"] = check_report_json(conclusion);
    c.outcome["theorem_violated"] = premise.ok && !conclusion.ok;
    c.outcome["summary"] =
        check_summary(premise, conclusion, window_text(inst.big_n(), inst.window_end()));
    return c;
}

Certificate run_check_tauber(const nlohmann::json& params, const RunOptions& opts) {
    const std::string ctx = "check-tauber";
    reject_unknown(params, {"sequence", "L", "eps", "gap", "n1", "n2", "route"}, ctx);
    CoefficientSequence seq = sequence_from_json(require_field(params, "sequence", ctx));
    Rational L = rat_param(params, "L", ctx);
    Rational eps = rat_param(params, "eps", ctx);
    GapFunction g = GapFunction::from_json(require_field(params, "gap", ctx));
    Nat n1 = nat_param(params, "n1", ctx);
    Nat n2 = nat_param(params, "n2", ctx);
    ConclusionOptions ropt = route_options(params, ctx);

    TauberInstance inst(seq, L, eps, g, n1, n2);
    CheckReport premise = check_tauber_premise(inst, ropt, opts.limits);
    CheckReport conclusion = check_tauber_conclusion(inst, opts.limits);

    Certificate c;
    c.command = ctx;
    c.predicate = "tauber(" + seq.label() + ")";
    c.eps = eps;
    c.gap = g.describe();
    c.n_found = inst.big_n();
    c.bound = L;
    c.verdict = premise.ok && conclusion.ok ? Verdict::pass : Verdict::fail;
    c.inputs = {{"sequence", seq.descriptor()}, {"L", format_rational(L)},
                {"eps", format_rational(eps)},  {"gap", g.to_json()},
                {"n1", n1.str()},               {"n2", n2.str()}};
    nlohmann::json route = route_options_json(ropt);
    if (!route.empty()) c.inputs["route"] = route;
    c.outcome["n"] = inst.big_n().str();
    c.outcome["window_end"] = inst.window_end().str();
    c.outcome["decay_length"] = inst.decay_length().str();
    c.outcome["premise"] = check_report_json(premise);
    c.outcome["conclusion"] = check_report_json(conclusion);
    c.outcome["theorem_violated"] = premise.ok && !conclusion.ok;
    c.outcome["summary"] =
        check_summary(premise, conclusion, window_text(inst.big_n(), inst.window_end()));
    return c;
}

Certificate run_abel_rate(const nlohmann::json& params, const RunOptions& opts) {
    const std::string ctx = "abel-rate";
    reject_unknown(params, {"sequence", "points", "L", "eps", "gap", "cap"}, ctx);
    CoefficientSequence seq = sequence_from_json(require_field(params, "sequence", ctx));
    PointFamily points =
        params.contains("points") ? points_from_json(params.at("points")) : PointFamily::v();
    Rational L = rat_param(params, "L", ctx);
    Rational eps = rat_param(params, "eps", ctx);
    GapFunction g = GapFunction::from_json(require_field(params, "gap", ctx));
    Nat cap = resolve_cap(params, opts, ctx);

    SearchFunctional s_meta = sums_metastability_search(seq, Nat(0), cap, opts.limits);
    AbelRateBundle b = abel_rate(seq, points, L, eps, g, s_meta, cap, opts.limits);

    Certificate c;
    c.command = ctx;
    c.predicate = "abel_rate(" + seq.label() + ", " + points.label() + ")";
    c.eps = eps;
    c.gap = g.describe();
    c.n_found = b.n;
    c.bound = L;
    c.verdict = Verdict::pass;
    c.inputs = {{"sequence", seq.descriptor()}, {"points", points.descriptor()},
                {"L", format_rational(L)},      {"eps", format_rational(eps)},
                {"gap", g.to_json()},           {"cap", cap.str()}};
    c.outcome = b.to_json();
    c.outcome["summary"] = "N = " + b.n.str() + ", conclusion holds on " +
                           window_text(b.n, b.window_end) + ", l = " + b.decay_length.str();
    return c;
}

Certificate run_tauber_rate(const nlohmann::json& params, const RunOptions& opts) {
    const std::string ctx = "tauber-rate";
    reject_unknown(params, {"sequence", "L", "eps", "gap", "cap"}, ctx);
    CoefficientSequence seq = sequence_from_json(require_field(params, "sequence", ctx));
    Rational L = rat_param(params, "L", ctx);
    Rational eps = rat_param(params, "eps", ctx);
    GapFunction g = GapFunction::from_json(require_field(params, "gap", ctx));
    Nat cap = resolve_cap(params, opts, ctx);

    FRoute route;
    route.bound_override = L;
    SearchFunctional f_meta =
        f_metastability_search(seq, PointFamily::v(), route, Nat(1), cap, opts.limits);
    TauberRateBundle b = tauber_rate(seq, L, eps, g, f_meta, cap, opts.limits);

    Certificate c;
    c.command = ctx;
    c.predicate = "tauber_rate(" + seq.label() + ")";
    c.eps = eps;
    c.gap = g.describe();
    c.n_found = b.n;
    c.bound = L;
    c.verdict = Verdict::pass;
    c.inputs = {{"sequence", seq.descriptor()},
                {"L", format_rational(L)},
                {"eps", format_rational(eps)},
                {"gap", g.to_json()},
                {"cap", cap.str()}};
    c.outcome = b.to_json();
    c.outcome["summary"] = "N = " + b.n.str() + ", conclusion holds on " +
                           window_text(b.n, b.window_end) + ", l = " + b.decay_length.str();
    return c;
}

Certificate run_gamma(const nlohmann::json& params, const RunOptions& opts) {
    const std::string ctx = "gamma";
    reject_unknown(params, {"L", "eps", "gap", "sequence"}, ctx);
    Rational L = rat_param(params, "L", ctx);
    Rational eps = rat_param(params, "eps", ctx);
    GapFunction g = GapFunction::from_json(require_field(params, "gap", ctx));

    Nat gamma = gamma_bound(eps, g, L, opts.limits);

    Certificate c;
    c.command = ctx;
    c.eps = eps;
    c.gap = g.describe();
    c.bound = Rational(Int(gamma));
    c.inputs = {{"L", format_rational(L)}, {"eps", format_rational(eps)}, {"gap", g.to_json()}};
    c.outcome["gamma"] = gamma.str();

    if (!params.contains("sequence")) {
        c.predicate = "gamma_bound(L=" + format_rational(L) + ")";
        c.verdict = Verdict::pass;
        c.outcome["summary"] = "gamma = " + gamma.str();
        return c;
    }

    // Domination run: the closed-form bound must majorize the brute-force
    // least start for the joint statement. Exact sum values only; a certified
    // route would tighten the checked statement and could overshoot the
    // bound's own target.
    CoefficientSequence seq = sequence_from_json(params.at("sequence"));
    if (!seq.has_closed_form())
        throw config_error("gamma: the domination run needs an exact sum form for F");
    c.inputs["sequence"] = seq.descriptor();

    WindowPredicate pred = WindowPredicate::joint_abel(seq, PointFamily::v(), eps);
    SearchResult r = least_metastable_n(pred, g, WindowMode::anchored, Nat(0), gamma, opts.limits);
    c.predicate = pred.describe();
    c.n_found = r.found;
    c.outcome["scanned"] = r.scanned.str();
    c.outcome["checked_pairs"] = r.checked_pairs.str();
    if (r.found) {
        c.verdict = Verdict::pass;
        c.outcome["summary"] = "gamma = " + gamma.str() + ", least N = " + r.found->str();
        return c;
    }

    // Before declaring the bound beaten, make sure the instance satisfies
    // what the bound assumes: nonnegative coefficients with partial sums in
    // [0, L] over everything the scan looked at.
    Window last = anchored_window(gamma, g);
    opts.limits.check_span(last.hi + 1, "gamma validation");
    for (Nat i = 0; i <= last.hi; ++i) {
        if (seq.term(i) < 0)
            throw config_error("gamma: coefficient at index " + i.str() +
                               " is negative; the bound covers nonnegative series only");
        Rational s = seq.partial_sum(i, opts.limits);
        if (s > L)
            throw config_error("gamma: partial sum at index " + i.str() + " exceeds L = " +
                               format_rational(L));
    }
    c.verdict = Verdict::fail;
    c.outcome["summary"] = "no N <= gamma = " + gamma.str();
    return c;
}

struct IdentityCheck {
    std::string name;
    bool ok = true;
    Nat checked = 0;
    std::optional<Nat> violation;
};

nlohmann::json identity_json(const IdentityCheck& id) {
    nlohmann::json j;
    j["name"] = id.name;
    j["ok"] = id.ok;
    j["checked"] = id.checked.str();
    if (id.violation) j["violation"] = id.violation->str();
    return j;
}

Certificate run_specker(const nlohmann::json& params, const RunOptions& opts) {
    const std::string ctx = "specker";
    reject_unknown(params, {"base", "transform", "depth"}, ctx);
    BaseSequence base = base_from_json(require_field(params, "base", ctx));
    std::string transform = string_field(params, "transform", ctx);
    Nat depth =
        params.contains("depth") ? nat_from_json(params.at("depth"), ctx + " depth") : Nat(64);
    opts.limits.check_span(depth + 1, "specker");

    std::vector<IdentityCheck> checks;
    std::string label;
    if (transform == "difference") {
        CoefficientSequence seq = difference_transform(base);
        label = seq.label();
        IdentityCheck tele{"partial_sums_equal_base"};
        for (Nat n = 0; n <= depth; ++n) {
            tele.checked += 1;
            if (seq.partial_sum(n, opts.limits) != base.value(n)) {
                tele.ok = false;
                tele.violation = n;
                break;
            }
        }
        checks.push_back(std::move(tele));
    } else if (transform == "spread") {
        CoefficientSequence seq = spread_transform(base);
        label = seq.label();
        IdentityCheck anchors{"block_anchors"};
        auto check_anchor = [&](const Nat& n, const Nat& base_idx) {
            if (!anchors.ok) return;
            anchors.checked += 1;
            if (seq.partial_sum(n, opts.limits) != base.value(base_idx)) {
                anchors.ok = false;
                anchors.violation = n;
            }
        };
        check_anchor(Nat(0), Nat(0));
        for (Nat k = 0; pow2_nat(k) <= depth; ++k) check_anchor(pow2_nat(k), k + 1);
        checks.push_back(std::move(anchors));

        IdentityCheck tail{"scaled_tail_bounded_by_increments"};
        for (Nat n = 2; n <= depth; ++n) {
            Nat m = spread_block_exponent(n);
            tail.checked += 1;
            Rational lhs = Rational(Int(n)) * rat_abs(seq.term(n));
            Rational rhs = 2 * (base.value(m + 1) - base.value(m));
            if (lhs > rhs) {
                tail.ok = false;
                tail.violation = n;
                break;
            }
        }
        checks.push_back(std::move(tail));
    } else {
        throw config_error(ctx + ": unknown transform '" + transform +
                           "' (expected difference or spread)");
    }

    bool all_ok = true;
    nlohmann::json identities = nlohmann::json::array();
    for (const auto& id : checks) {
        all_ok = all_ok && id.ok;
        identities.push_back(identity_json(id));
    }

    Certificate c;
    c.command = ctx;
    c.predicate = label;
    c.gap = "";
    c.bound = base.bound();
    c.verdict = all_ok ? Verdict::pass : Verdict::fail;
    c.inputs = {{"base", base.descriptor()}, {"transform", transform}, {"depth", depth.str()}};
    c.outcome["identities"] = identities;
    if (all_ok) {
        c.outcome["summary"] = "identities hold up to index " + depth.str();
    } else {
        for (const auto& id : checks)
            if (!id.ok) {
                c.outcome["summary"] = "identity '" + id.name + "' fails at index " +
                                       id.violation->str();
                break;
            }
    }
    return c;
}

}  // namespace

Certificate run_scenario(const Scenario& sc, const RunOptions& opts) {
    if (!sc.params.is_object()) throw config_error(sc.command + ": parameters must be an object");
    if (sc.command == "search-n") return run_search_n(sc.params, opts);
    if (sc.command == "check-abel") return run_check_abel(sc.params, opts);
    if (sc.command == "check-tauber") return run_check_tauber(sc.params, opts);
    if (sc.command == "abel-rate") return run_abel_rate(sc.params, opts);
    if (sc.command == "tauber-rate") return run_tauber_rate(sc.params, opts);
    if (sc.command == "gamma") return run_gamma(sc.params, opts);
    if (sc.command == "specker") return run_specker(sc.params, opts);
    throw config_error("unknown command '" + sc.command + "'");
}

int BatchResult::exit_code() const {
    bool fail = false;
    bool resource = false;
    for (const auto& o : outcomes) {
        if (o.error_kind == "config") return 3;
        if (o.error_kind == "internal") fail = true;
        if (o.error_kind == "resource") resource = true;
        if (o.certificate) {
            if (o.certificate->verdict == Verdict::fail) fail = true;
            if (o.certificate->verdict == Verdict::exhausted) resource = true;
        }
    }
    if (fail) return 1;
    if (resource) return 2;
    return 0;
}

BatchResult run_batch(const std::vector<Scenario>& scenarios, const RunOptions& opts) {
    BatchResult out;
    out.outcomes.resize(scenarios.size());
    auto run_one = [&](std::size_t i) {
        ScenarioOutcome& slot = out.outcomes[i];
        slot.command = scenarios[i].command;
        try {
            slot.certificate = run_scenario(scenarios[i], opts);
        } catch (const config_error& e) {
            slot.error_kind = "config";
            slot.message = e.what();
        } catch (const domain_error& e) {
            slot.error_kind = "config";
            slot.message = e.what();
        } catch (const resource_error& e) {
            slot.error_kind = "resource";
            slot.message = e.what();
        } catch (const error& e) {
            slot.error_kind = "internal";
            slot.message = e.what();
        } catch (const std::exception& e) {
            slot.error_kind = "config";
            slot.message = e.what();
        }
    };

    std::size_t n = scenarios.size();
    std::size_t jobs = opts.jobs == 0 ? 1 : opts.jobs;
    if (jobs > n) jobs = n;
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) run_one(i);
        });
    for (auto& th : pool) th.join();
    return out;
}

std::string render_batch(const BatchResult& batch, OutputFormat format) {
    if (format == OutputFormat::json) {
        nlohmann::json results = nlohmann::json::array();
        for (const auto& o : batch.outcomes) {
            if (o.certificate) {
                results.push_back({{"certificate", o.certificate->to_json()}});
            } else {
                results.push_back({{"error",
                                    {{"command", o.command},
                                     {"kind", o.error_kind},
                                     {"message", o.message}}}});
            }
        }
        return nlohmann::json{{"results", results}}.dump(2) + "\n";
    }
    if (format == OutputFormat::csv) {
        std::string out = certificate_csv_header;
        out += '\n';
        for (const auto& o : batch.outcomes) {
            if (o.certificate) {
                out += o.certificate->csv_row();
            } else {
                out += csv_escape(o.command) + ",,,,," + o.error_kind + "_error";
            }
            out += '\n';
        }
        return out;
    }
    std::string out;
    std::size_t i = 0;
    for (const auto& o : batch.outcomes) {
        out += "[" + std::to_string(i) + "] " + o.command + ": ";
        if (o.certificate) {
            out += verdict_name(o.certificate->verdict);
            std::string summary = o.certificate->outcome.value("summary", "");
            if (!summary.empty()) out += "  " + summary;
        } else {
            out += o.error_kind + "_error  " + o.message;
        }
        out += '\n';
        ++i;
    }
    return out;
}

ReplayReport replay_certificate(const Certificate& cert, const RunOptions& opts) {
    Scenario sc{cert.command, cert.inputs};
    RunOptions ropts = opts;
    ropts.cap.reset();  // recorded inputs carry the resolved cap
    ReplayReport rep;
    rep.fresh = run_scenario(sc, ropts);
    nlohmann::json a = cert.to_json();
    nlohmann::json b = rep.fresh.to_json();
    if (a == b) {
        rep.agrees = true;
        return rep;
    }
    for (auto it = a.begin(); it != a.end(); ++it) {
        if (!b.contains(it.key()) || b.at(it.key()) != it.value()) {
            rep.mismatch = it.key();
            return rep;
        }
    }
    rep.mismatch = "field set";
    return rep;
}

std::vector<Certificate> certificates_from_json(const nlohmann::json& j) {
    std::vector<Certificate> out;
    if (j.is_array()) {
        for (const auto& el : j) out.push_back(Certificate::from_json(el));
    } else if (j.is_object() && j.contains("results")) {
        const auto& arr = j.at("results");
        if (!arr.is_array()) throw config_error("certificates: 'results' must be an array");
        for (const auto& r : arr) {
            // Error entries carry nothing to replay; skip them.
            if (r.is_object() && r.contains("certificate"))
                out.push_back(Certificate::from_json(r.at("certificate")));
        }
    } else if (j.is_object() && j.contains("certificates")) {
        const auto& arr = j.at("certificates");
        if (!arr.is_array()) throw config_error("certificates: 'certificates' must be an array");
        for (const auto& el : arr) out.push_back(Certificate::from_json(el));
    } else {
        out.push_back(Certificate::from_json(j));
    }
    if (out.empty()) throw config_error("certificates: nothing to replay");
    return out;
}

}  // namespace ratelab
