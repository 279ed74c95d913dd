#include "ratelab/series.hpp"

#include <mutex>
#include <utility>

namespace ratelab {

struct CoefficientSequence::Impl {
    Parts parts;
    mutable std::mutex mutex;
    mutable std::vector<Rational> sums;  // memo for sequences without a closed partial form
};

CoefficientSequence::CoefficientSequence(Parts parts) : impl_(std::make_shared<Impl>()) {
    if (!parts.term) throw config_error("coefficient sequence needs a term function");
    impl_->parts = std::move(parts);
}

Rational CoefficientSequence::term(const Nat& i) const {
    if (i < 0) throw domain_error("term: negative index");
    Rational a = impl_->parts.term(i);
    const auto& bound = impl_->parts.coeff_bound;
    if (bound && rat_abs(a) > *bound)
        throw config_error("sequence '" + impl_->parts.label + "': declared coefficient bound " +
                           format_rational(*bound) + " violated at index " + i.str() + " (|a_i| = " +
                           format_rational(rat_abs(a)) + ")");
    return a;
}

Rational CoefficientSequence::partial_sum(const Nat& n, const ResourceLimits& limits) const {
    if (n < 0) throw domain_error("partial_sum: negative index");
    limits.check_span(n + 1, "partial_sum");
    Rational s;
    if (impl_->parts.closed_partial) {
        s = impl_->parts.closed_partial(n);
    } else {
        std::scoped_lock lock(impl_->mutex);
        auto& sums = impl_->sums;
        std::size_t want = (n + 1).convert_to<std::size_t>();
        while (sums.size() < want) {
            Nat i(sums.size());
            Rational prev = sums.empty() ? Rational(0) : sums.back();
            sums.push_back(prev + term(i));
        }
        s = sums[want - 1];
    }
    const auto& bound = impl_->parts.partial_sum_bound;
    if (bound && rat_abs(s) > *bound)
        throw config_error("sequence '" + impl_->parts.label + "': declared partial-sum bound " +
                           format_rational(*bound) + " violated at index " + n.str() + " (|s_n| = " +
                           format_rational(rat_abs(s)) + ")");
    return s;
}

std::vector<Rational> CoefficientSequence::partial_sum_range(const Nat& lo, const Nat& hi,
                                                             const ResourceLimits& limits) const {
    std::vector<Rational> out;
    if (hi < lo) return out;
    limits.check_span(hi - lo + 1, "partial_sum_range");
    out.reserve((hi - lo + 1).convert_to<std::size_t>());
    if (!impl_->parts.closed_partial) partial_sum(hi, limits);  // one memo fill, then cheap reads
    for (Nat n = lo; n <= hi; ++n) out.push_back(partial_sum(n, limits));
    return out;
}

const std::optional<Rational>& CoefficientSequence::coeff_bound() const {
    return impl_->parts.coeff_bound;
}
const std::optional<Rational>& CoefficientSequence::partial_sum_bound() const {
    return impl_->parts.partial_sum_bound;
}
const std::optional<Nat>& CoefficientSequence::support_cutoff() const {
    return impl_->parts.support_cutoff;
}
const std::string& CoefficientSequence::label() const { return impl_->parts.label; }

bool CoefficientSequence::has_closed_form() const {
    return static_cast<bool>(impl_->parts.closed_form);
}

Rational CoefficientSequence::closed_form(const Rational& x) const {
    if (!has_closed_form())
        throw config_error("sequence '" + impl_->parts.label + "' has no exact sum form");
    if (x < 0 || x >= 1) throw domain_error("closed_form: x must lie in [0, 1)");
    return impl_->parts.closed_form(x);
}

bool CoefficientSequence::serializable() const { return !impl_->parts.descriptor.is_null(); }

nlohmann::json CoefficientSequence::descriptor() const {
    if (!serializable())
        throw config_error("sequence '" + impl_->parts.label + "' is not serializable");
    return impl_->parts.descriptor;
}

CoefficientSequence CoefficientSequence::without_closed_form() const {
    Parts parts = impl_->parts;
    parts.closed_form = nullptr;
    parts.descriptor = nlohmann::json();
    parts.label += " (certified route)";
    return CoefficientSequence(std::move(parts));
}

CoefficientSequence geometric_sequence(const Rational& ratio) {
    if (ratio <= 0 || ratio >= 1) throw config_error("geometric: ratio must lie in (0, 1)");
    CoefficientSequence::Parts parts;
    parts.term = [ratio](const Nat& i) { return pow_rat(ratio, i); };
    parts.coeff_bound = Rational(1);
    parts.partial_sum_bound = Rational(1) / (Rational(1) - ratio);
    parts.closed_form = [ratio](const Rational& x) { return Rational(1) / (Rational(1) - ratio * x); };
    parts.closed_partial = [ratio](const Nat& n) {
        return (Rational(1) - pow_rat(ratio, n + 1)) / (Rational(1) - ratio);
    };
    parts.label = "geometric(" + format_rational(ratio) + ")";
    parts.descriptor = {{"kind", "geometric"}, {"ratio", format_rational(ratio)}};
    return CoefficientSequence(std::move(parts));
}

CoefficientSequence alternating_harmonic_sequence() {
    CoefficientSequence::Parts parts;
    parts.term = [](const Nat& i) {
        Rational a(Int(1), Int(i + 1));
        return (i & 1) != 0 ? Rational(-a) : a;
    };
    parts.coeff_bound = Rational(1);
    parts.partial_sum_bound = Rational(1);
    parts.label = "alternating_harmonic";
    parts.descriptor = {{"kind", "alternating_harmonic"}};
    return CoefficientSequence(std::move(parts));
}

CoefficientSequence power_sequence(unsigned k) {
    if (k < 1) throw config_error("power: exponent must be >= 1");
    CoefficientSequence::Parts parts;
    parts.term = [k](const Nat& i) {
        if (i == 0) return Rational(1);
        return Rational(Int(1), boost::multiprecision::pow(Int(i), k));
    };
    parts.coeff_bound = Rational(1);
    if (k >= 2) parts.partial_sum_bound = Rational(2) + Rational(Int(1), Int(k - 1));
    parts.label = "power(" + std::to_string(k) + ")";
    parts.descriptor = {{"kind", "power"}, {"k", k}};
    return CoefficientSequence(std::move(parts));
}

CoefficientSequence zero_sequence() {
    CoefficientSequence::Parts parts;
    parts.term = [](const Nat&) { return Rational(0); };
    parts.coeff_bound = Rational(1);
    parts.partial_sum_bound = Rational(1);
    parts.support_cutoff = Nat(0);
    parts.closed_form = [](const Rational&) { return Rational(0); };
    parts.closed_partial = [](const Nat&) { return Rational(0); };
    parts.label = "zero";
    parts.descriptor = {{"kind", "zero"}};
    return CoefficientSequence(std::move(parts));
}

CoefficientSequence constant_sequence(const Rational& c) {
    CoefficientSequence::Parts parts;
    parts.term = [c](const Nat&) { return c; };
    parts.coeff_bound = c == 0 ? Rational(1) : rat_abs(c);
    if (c == 0) parts.partial_sum_bound = Rational(1);
    parts.closed_form = [c](const Rational& x) { return c / (Rational(1) - x); };
    parts.closed_partial = [c](const Nat& n) { return c * Rational(Int(n + 1)); };
    parts.label = "constant(" + format_rational(c) + ")";
    parts.descriptor = {{"kind", "constant"}, {"c", format_rational(c)}};
    return CoefficientSequence(std::move(parts));
}

CoefficientSequence table_sequence(std::vector<Rational> terms) {
    if (terms.empty()) terms.push_back(Rational(0));
    std::vector<Rational> prefix;
    prefix.reserve(terms.size());
    Rational acc(0), max_abs_term(0), max_abs_sum(0);
    for (const auto& a : terms) {
        acc += a;
        prefix.push_back(acc);
        if (rat_abs(a) > max_abs_term) max_abs_term = rat_abs(a);
        if (rat_abs(acc) > max_abs_sum) max_abs_sum = rat_abs(acc);
    }
    auto shared_terms = std::make_shared<const std::vector<Rational>>(std::move(terms));
    auto shared_prefix = std::make_shared<const std::vector<Rational>>(std::move(prefix));

    CoefficientSequence::Parts parts;
    parts.term = [shared_terms](const Nat& i) {
        if (i < Nat(shared_terms->size())) return (*shared_terms)[i.convert_to<std::size_t>()];
        return Rational(0);
    };
    parts.coeff_bound = max_abs_term == 0 ? Rational(1) : max_abs_term;
    parts.partial_sum_bound = max_abs_sum == 0 ? Rational(1) : max_abs_sum;
    parts.support_cutoff = Nat(shared_terms->size() - 1);
    parts.closed_form = [shared_terms](const Rational& x) {
        Rational acc(0), xpow(1);
        for (const auto& a : *shared_terms) {
            acc += a * xpow;
            xpow *= x;
        }
        return acc;
    };
    parts.closed_partial = [shared_prefix](const Nat& n) {
        if (n < Nat(shared_prefix->size())) return (*shared_prefix)[n.convert_to<std::size_t>()];
        return shared_prefix->back();
    };
    parts.label = "table[" + std::to_string(shared_terms->size()) + "]";
    return CoefficientSequence(std::move(parts));
}

CoefficientSequence sequence_from_function(std::function<Rational(const Nat&)> term,
                                           std::optional<Rational> coeff_bound,
                                           std::optional<Rational> partial_sum_bound,
                                           std::string label) {
    CoefficientSequence::Parts parts;
    parts.term = std::move(term);
    parts.coeff_bound = std::move(coeff_bound);
    parts.partial_sum_bound = std::move(partial_sum_bound);
    parts.label = std::move(label);
    return CoefficientSequence(std::move(parts));
}

EvalPoint::EvalPoint(Rational x_, Nat p_) : x(std::move(x_)), p(std::move(p_)) {
    if (p < 1) throw domain_error("EvalPoint: p must be >= 1");
    if (x < 0 || x > Rational(1) - Rational(Int(1), Int(p)))
        throw domain_error("EvalPoint: x must lie in [0, 1 - 1/p]");
}

Rational eval_truncated(const CoefficientSequence& seq, const Rational& x, const Nat& l,
                        const ResourceLimits& limits) {
    if (l < 0) throw domain_error("eval_truncated: negative truncation index");
    Nat stop = l;
    const auto& cutoff = seq.support_cutoff();
    if (cutoff && *cutoff < stop) stop = *cutoff;  // trailing terms are exactly zero
    limits.check_span(stop + 1, "eval_truncated");
    Rational acc(0), xpow(1);
    for (Nat i = 0; i <= stop; ++i) {
        acc += seq.term(i) * xpow;
        if (i < stop) xpow *= x;
    }
    return acc;
}

CertifiedValue eval_certified(const CoefficientSequence& seq, const EvalPoint& pt,
                              const Rational& eps, const ResourceLimits& limits,
                              const std::optional<Rational>& bound_override) {
    if (eps <= 0) throw domain_error("eval_certified: eps must be positive");
    std::optional<Rational> bound = bound_override ? bound_override : seq.coeff_bound();
    if (!bound)
        throw config_error("eval_certified: sequence '" + seq.label() +
                           "' has no coefficient bound");
    if (*bound <= 0) throw config_error("eval_certified: coefficient bound must be positive");
    Nat l = omega(eps / (*bound * Rational(Int(pt.p))), pt.p);
    CertifiedValue out{Rational(0), l, eps};
    const auto& cutoff = seq.support_cutoff();
    if (cutoff && *cutoff < l) {
        out.l_used = *cutoff;
        out.accuracy = Rational(0);  // truncation beyond the support is exact
    }
    out.value = eval_truncated(seq, pt.x, out.l_used, limits);
    return out;
}

std::pair<Rational, Rational> summation_by_parts(const CoefficientSequence& seq, const Rational& x,
                                                 const Nat& l, const ResourceLimits& limits) {
    Rational lhs = eval_truncated(seq, x, l, limits);
    limits.check_span(l + 1, "summation_by_parts");
    Rational tail(0), xpow(1);
    for (Nat i = 0; i < l; ++i) {
        tail += seq.partial_sum(i, limits) * xpow;
        xpow *= x;
    }
    // xpow is now x^l
    Rational rhs = seq.partial_sum(l, limits) * xpow + (Rational(1) - x) * tail;
    return {lhs, rhs};
}

}  // namespace ratelab
