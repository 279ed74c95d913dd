#include "ratelab/metastability.hpp"

#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ratelab {

namespace {

Nat pair_count(const Nat& values) { return values * (values + 1) / 2; }

// Shared by the kernel and the counterexample hunt: running extremes with
// first-attained argument indices, so witnesses are deterministic.
struct Extremes {
    bool seen = false;
    Rational min, max;
    Nat arg_min, arg_max;

    void add(const Nat& i, const Rational& v) {
        if (!seen) {
            seen = true;
            min = max = v;
            arg_min = arg_max = i;
            return;
        }
        if (v < min) {
            min = v;
            arg_min = i;
        }
        if (v > max) {
            max = v;
            arg_max = i;
        }
    }
};

HoldsReport pairwise_holds(const WindowPredicate& pred, const Window& w,
                           const ResourceLimits& limits) {
    HoldsReport out;
    out.threshold = pred.threshold();
    Window eff = pred.clip(w);
    if (eff.empty()) return out;
    limits.check_span(eff.size(), "holds_on");
    Extremes ex;
    Nat scanned = 0;
    for (Nat i = eff.lo; i <= eff.hi; ++i) {
        ex.add(i, pred.value(i, limits));
        ++scanned;
        if (ex.max - ex.min > out.threshold) {
            out.ok = false;
            out.witness_i = ex.arg_min < ex.arg_max ? ex.arg_min : ex.arg_max;
            out.witness_j = ex.arg_min < ex.arg_max ? ex.arg_max : ex.arg_min;
            out.lhs = ex.max - ex.min;
            out.checked_pairs = pair_count(scanned);
            return out;
        }
    }
    out.checked_pairs = pair_count(scanned);
    return out;
}

HoldsReport joint_holds(const WindowPredicate& pred, const Window& w,
                        const ResourceLimits& limits) {
    HoldsReport out;
    out.threshold = pred.threshold();
    Window points_side = pred.clip(w);
    Window sums_side = w;
    if (points_side.empty() || sums_side.empty()) return out;
    limits.check_span(points_side.size(), "holds_on");
    limits.check_span(sums_side.size(), "holds_on");
    Extremes f;
    for (Nat m = points_side.lo; m <= points_side.hi; ++m) f.add(m, pred.value(m, limits));
    Nat scanned = 0;
    for (Nat n = sums_side.lo; n <= sums_side.hi; ++n) {
        Rational s = pred.joint_value(n, limits);
        ++scanned;
        if (f.max - s > out.threshold) {
            out.ok = false;
            out.witness_i = f.arg_max;
            out.witness_j = n;
            out.lhs = f.max - s;
            out.checked_pairs = points_side.size() * scanned;
            return out;
        }
        if (s - f.min > out.threshold) {
            out.ok = false;
            out.witness_i = f.arg_min;
            out.witness_j = n;
            out.lhs = s - f.min;
            out.checked_pairs = points_side.size() * scanned;
            return out;
        }
    }
    out.checked_pairs = points_side.size() * sums_side.size();
    return out;
}

HoldsReport pointwise_holds(const WindowPredicate& pred, const Window& w,
                            const ResourceLimits& limits) {
    HoldsReport out;
    out.threshold = pred.threshold();
    Window eff = pred.clip(w);
    if (eff.empty()) return out;
    limits.check_span(eff.size(), "holds_on");
    for (Nat i = eff.lo; i <= eff.hi; ++i) {
        Rational v = pred.value(i, limits);
        ++out.checked_pairs;
        if (v > out.threshold) {
            out.ok = false;
            out.witness_i = i;
            out.lhs = v;
            return out;
        }
    }
    return out;
}

}  // namespace

HoldsReport holds_on(const WindowPredicate& pred, const Window& w, const ResourceLimits& limits) {
    if (pred.joint()) return joint_holds(pred, w, limits);
    if (pred.pairwise()) return pairwise_holds(pred, w, limits);
    return pointwise_holds(pred, w, limits);
}

nlohmann::json holds_report_json(const HoldsReport& report) {
    nlohmann::json j;
    j["ok"] = report.ok;
    j["threshold"] = format_rational(report.threshold);
    j["checked_pairs"] = report.checked_pairs.str();
    if (!report.ok) {
        if (report.witness_i) j["witness_i"] = report.witness_i->str();
        if (report.witness_j) j["witness_j"] = report.witness_j->str();
        j["lhs"] = format_rational(report.lhs);
    }
    return j;
}

SearchResult least_metastable_n(const WindowPredicate& pred, const GapFunction& g, WindowMode mode,
                                const Nat& start, const Nat& cap, const ResourceLimits& limits) {
    SearchResult out;
    if (cap < start) return out;
#ifdef _OPENMP
    std::size_t block = static_cast<std::size_t>(omp_get_max_threads()) * 4;
    if (block < 1) block = 1;
#else
    std::size_t block = 1;
#endif
    for (Nat base = start; base <= cap; base += block) {
        Nat remaining = cap - base + 1;
        std::size_t count =
            remaining < block ? remaining.convert_to<std::size_t>() : block;
        std::vector<std::optional<HoldsReport>> reports(count);
        std::vector<std::exception_ptr> errors(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (count > 1)
#endif
        for (long long k = 0; k < static_cast<long long>(count); ++k) {
            try {
                Nat n = base + static_cast<unsigned long long>(k);
                reports[static_cast<std::size_t>(k)] = holds_on(pred, make_window(mode, n, g), limits);
            } catch (...) {
                errors[static_cast<std::size_t>(k)] = std::current_exception();
            }
        }
        // Consume in index order so the outcome matches the serial scan
        // exactly, whatever the thread schedule did.
        for (std::size_t k = 0; k < count; ++k) {
            if (errors[k]) std::rethrow_exception(errors[k]);
            out.scanned += 1;
            out.checked_pairs += reports[k]->checked_pairs;
            if (reports[k]->ok) {
                out.found = base + k;
                out.report = std::move(reports[k]);
                return out;
            }
        }
    }
    return out;
}

std::optional<GapFunction> counterexample_gap(const WindowPredicate& pred, const Nat& n_max,
                                              const Nat& k_max, const ResourceLimits& limits) {
    limits.check_span(n_max + 1, "counterexample_gap");
    limits.check_span(k_max + 1, "counterexample_gap");
    const Rational thr = pred.threshold();
    Nat domain_start = pred.clip(Window{0, k_max}).lo;
    std::vector<Nat> values;
    for (Nat n = 0; n <= n_max; ++n) {
        std::optional<Nat> bad;
        if (pred.joint()) {
            Extremes f, s;
            for (Nat k = n; k <= k_max; ++k) {
                if (k >= domain_start) f.add(k, pred.value(k, limits));
                s.add(k, pred.joint_value(k, limits));
                if (f.seen && (f.max - s.min > thr || s.max - f.min > thr)) {
                    bad = k;
                    break;
                }
            }
        } else if (pred.pairwise()) {
            Extremes ex;
            for (Nat k = n < domain_start ? domain_start : n; k <= k_max; ++k) {
                ex.add(k, pred.value(k, limits));
                if (ex.max - ex.min > thr) {
                    bad = k;
                    break;
                }
            }
        } else {
            for (Nat k = n < domain_start ? domain_start : n; k <= k_max; ++k) {
                if (pred.value(k, limits) > thr) {
                    bad = k;
                    break;
                }
            }
        }
        if (!bad) return std::nullopt;
        values.push_back(*bad);
    }
    return GapFunction::table(std::move(values), Nat(0));
}

namespace reference {

HoldsReport holds_on(const WindowPredicate& pred, const Window& w, const ResourceLimits& limits) {
    HoldsReport out;
    out.threshold = pred.threshold();
    if (pred.joint()) {
        Window points_side = pred.clip(w);
        Window sums_side = w;
        if (points_side.empty() || sums_side.empty()) return out;
        limits.check_span(points_side.size(), "reference::holds_on");
        limits.check_span(sums_side.size(), "reference::holds_on");
        for (Nat m = points_side.lo; m <= points_side.hi; ++m) {
            Rational fm = pred.value(m, limits);
            for (Nat n = sums_side.lo; n <= sums_side.hi; ++n) {
                Rational diff = rat_abs(fm - pred.joint_value(n, limits));
                ++out.checked_pairs;
                if (diff > out.threshold) {
                    out.ok = false;
                    out.witness_i = m;
                    out.witness_j = n;
                    out.lhs = diff;
                    return out;
                }
            }
        }
        return out;
    }
    Window eff = pred.clip(w);
    if (eff.empty()) return out;
    limits.check_span(eff.size(), "reference::holds_on");
    if (pred.pairwise()) {
        std::vector<Rational> vals;
        vals.reserve(eff.size().convert_to<std::size_t>());
        for (Nat i = eff.lo; i <= eff.hi; ++i) vals.push_back(pred.value(i, limits));
        for (std::size_t a = 0; a < vals.size(); ++a) {
            for (std::size_t b = a; b < vals.size(); ++b) {
                Rational diff = rat_abs(vals[a] - vals[b]);
                ++out.checked_pairs;
                if (diff > out.threshold) {
                    out.ok = false;
                    out.witness_i = eff.lo + a;
                    out.witness_j = eff.lo + b;
                    out.lhs = diff;
                    return out;
                }
            }
        }
        return out;
    }
    for (Nat i = eff.lo; i <= eff.hi; ++i) {
        Rational v = pred.value(i, limits);
        ++out.checked_pairs;
        if (v > out.threshold) {
            out.ok = false;
            out.witness_i = i;
            out.lhs = v;
            return out;
        }
    }
    return out;
}

SearchResult least_metastable_n(const WindowPredicate& pred, const GapFunction& g, WindowMode mode,
                                const Nat& start, const Nat& cap, const ResourceLimits& limits) {
    SearchResult out;
    for (Nat n = start; n <= cap; ++n) {
        HoldsReport report = reference::holds_on(pred, make_window(mode, n, g), limits);
        out.scanned += 1;
        out.checked_pairs += report.checked_pairs;
        if (report.ok) {
            out.found = n;
            out.report = std::move(report);
            return out;
        }
    }
    return out;
}

}  // namespace reference

}  // namespace ratelab
