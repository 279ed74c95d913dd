#include "ratelab/specker.hpp"

#include <utility>

namespace ratelab {

struct BaseSequence::Impl {
    std::function<Rational(const Nat&)> fn;
    Rational bound;
    std::optional<Nat> settles_after;
    std::string label;
    nlohmann::json descriptor;
};

BaseSequence::BaseSequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

BaseSequence BaseSequence::dyadic_approach() {
    auto impl = std::make_shared<Impl>();
    impl->fn = [](const Nat& n) { return Rational(1) - Rational(Int(1), Int(pow2_nat(n))); };
    impl->bound = 1;
    impl->label = "dyadic_approach";
    impl->descriptor = {{"kind", "dyadic_approach"}};
    return BaseSequence(std::move(impl));
}

BaseSequence BaseSequence::rational_approach() {
    auto impl = std::make_shared<Impl>();
    impl->fn = [](const Nat& n) { return Rational(Int(n), Int(n + 1)); };
    impl->bound = 1;
    impl->label = "rational_approach";
    impl->descriptor = {{"kind", "rational_approach"}};
    return BaseSequence(std::move(impl));
}

BaseSequence BaseSequence::table(std::vector<Rational> values) {
    if (values.empty()) throw config_error("base table must not be empty");
    Rational max_abs(0);
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i] > values[i + 1])
            throw config_error("base table not monotone at index " + std::to_string(i) + ": " +
                               format_rational(values[i]) + " > " +
                               format_rational(values[i + 1]));
    for (const auto& q : values)
        if (rat_abs(q) > max_abs) max_abs = rat_abs(q);
    auto shared = std::make_shared<const std::vector<Rational>>(std::move(values));
    auto impl = std::make_shared<Impl>();
    impl->fn = [shared](const Nat& n) {
        if (n < Nat(shared->size())) return (*shared)[n.convert_to<std::size_t>()];
        return shared->back();
    };
    impl->bound = max_abs == 0 ? Rational(1) : max_abs;
    impl->settles_after = Nat(shared->size() - 1);
    impl->label = "base_table[" + std::to_string(shared->size()) + "]";
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& q : *shared) vals.push_back(format_rational(q));
    impl->descriptor = {{"kind", "table"}, {"values", vals}};
    return BaseSequence(std::move(impl));
}

BaseSequence BaseSequence::from_function(std::function<Rational(const Nat&)> fn, Rational bound,
                                         std::string label) {
    if (bound <= 0) throw config_error("base sequence bound must be positive");
    auto impl = std::make_shared<Impl>();
    impl->fn = std::move(fn);
    impl->bound = std::move(bound);
    impl->label = std::move(label);
    return BaseSequence(std::move(impl));
}

Rational BaseSequence::value(const Nat& n) const {
    if (n < 0) throw domain_error("base sequence: negative index");
    Rational q = impl_->fn(n);
    if (rat_abs(q) > impl_->bound)
        throw config_error("base '" + impl_->label + "': declared bound " +
                           format_rational(impl_->bound) + " violated at index " + n.str() +
                           " (|q| = " + format_rational(rat_abs(q)) + ")");
    return q;
}

const Rational& BaseSequence::bound() const { return impl_->bound; }
const std::optional<Nat>& BaseSequence::settles_after() const { return impl_->settles_after; }
const std::string& BaseSequence::label() const { return impl_->label; }
bool BaseSequence::serializable() const { return !impl_->descriptor.is_null(); }

nlohmann::json BaseSequence::descriptor() const {
    if (!serializable())
        throw config_error("base '" + impl_->label + "' is not serializable");
    return impl_->descriptor;
}

namespace {

Rational monotone_step(const BaseSequence& base, const Nat& lower) {
    Rational diff = base.value(lower + 1) - base.value(lower);
    if (diff < 0)
        throw config_error("base '" + base.label() + "' not monotone at index " + lower.str());
    return diff;
}

// Finite support makes the generating function a plain polynomial.
std::function<Rational(const Rational&)> polynomial_form(
    const std::function<Rational(const Nat&)>& term, const Nat& cutoff) {
    return [term, cutoff](const Rational& x) {
        Rational acc(0), xpow(1);
        for (Nat i = 0; i <= cutoff; ++i) {
            acc += term(i) * xpow;
            xpow *= x;
        }
        return acc;
    };
}

Rational positive_or_one(const Rational& q) { return q > 0 ? q : Rational(1); }

}  // namespace

Nat spread_block_exponent(const Nat& n) {
    if (n < 2) throw domain_error("spread_block_exponent: needs n >= 2");
    Int m = ceil_log2(Rational(Int(n)));
    return Nat(m);
}

CoefficientSequence difference_transform(const BaseSequence& base) {
    CoefficientSequence::Parts parts;
    parts.term = [base](const Nat& i) {
        if (i == 0) return base.value(0);
        return monotone_step(base, i - 1);
    };
    parts.coeff_bound = positive_or_one(2 * base.bound());
    parts.partial_sum_bound = positive_or_one(base.bound());
    parts.closed_partial = [base](const Nat& n) { return base.value(n); };
    if (base.settles_after()) {
        parts.support_cutoff = *base.settles_after();
        parts.closed_form = polynomial_form(parts.term, *parts.support_cutoff);
    }
    parts.label = "specker_31(" + base.label() + ")";
    if (base.serializable())
        parts.descriptor = {{"kind", "specker_31"}, {"base", base.descriptor()}};
    return CoefficientSequence(std::move(parts));
}

CoefficientSequence spread_transform(const BaseSequence& base) {
    CoefficientSequence::Parts parts;
    parts.term = [base](const Nat& i) {
        if (i == 0) return base.value(0);
        if (i == 1) return monotone_step(base, 0);
        Nat m = spread_block_exponent(i);
        return monotone_step(base, m) / Rational(Int(pow2_nat(m - 1)));
    };
    parts.coeff_bound = positive_or_one(2 * base.bound());
    parts.partial_sum_bound = positive_or_one(base.bound());
    parts.closed_partial = [base](const Nat& n) {
        if (n == 0) return base.value(0);
        if (n == 1) return base.value(1);
        Nat m = spread_block_exponent(n);
        Nat block_start = pow2_nat(m - 1);
        Rational step = monotone_step(base, m);
        return base.value(m) + Rational(Int(n - block_start)) * step / Rational(Int(block_start));
    };
    if (base.settles_after()) {
        const Nat& s = *base.settles_after();
        parts.support_cutoff = s >= 1 ? pow2_nat(s - 1) : Nat(0);
        parts.closed_form = polynomial_form(parts.term, *parts.support_cutoff);
    }
    parts.label = "specker_32(" + base.label() + ")";
    if (base.serializable())
        parts.descriptor = {{"kind", "specker_32"}, {"base", base.descriptor()}};
    return CoefficientSequence(std::move(parts));
}

}  // namespace ratelab
