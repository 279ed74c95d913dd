#include <doctest.h>

#include "ratelab/series.hpp"

using namespace ratelab;

namespace {

Rational Q(const char* text) { return parse_rational(text); }

// Independent oracle: literal term-by-term accumulation.
Rational brute_partial(const CoefficientSequence& seq, unsigned n) {
    Rational acc(0);
    for (unsigned i = 0; i <= n; ++i) acc += seq.term(Nat(i));
    return acc;
}

Rational brute_truncated(const CoefficientSequence& seq, const Rational& x, unsigned l) {
    Rational acc(0), xpow(1);
    for (unsigned i = 0; i <= l; ++i) {
        acc += seq.term(Nat(i)) * xpow;
        xpow *= x;
    }
    return acc;
}

}  // namespace

TEST_CASE("geometric sequence: terms, closed partial sums, closed form") {
    auto seq = geometric_sequence(Q("1/2"));
    CHECK(seq.term(Nat(0)) == 1);
    CHECK(seq.term(Nat(4)) == Q("1/16"));
    CHECK(seq.closed_form(Q("1/2")) == Q("4/3"));
    CHECK(seq.closed_form(Q("0")) == 1);
    for (unsigned n : {0u, 1u, 5u, 12u}) CHECK(seq.partial_sum(Nat(n)) == brute_partial(seq, n));
    CHECK(*seq.coeff_bound() == 1);
    CHECK(*seq.partial_sum_bound() == 2);
    CHECK(seq.has_closed_form());

    CHECK_THROWS_AS(geometric_sequence(Q("1")), config_error);
    CHECK_THROWS_AS(geometric_sequence(Q("0")), config_error);
    CHECK_THROWS_AS(seq.closed_form(Q("1")), domain_error);
    CHECK_THROWS_AS(seq.closed_form(Q("-1/2")), domain_error);
}

TEST_CASE("built-in families against the brute-force accumulator") {
    auto alt = alternating_harmonic_sequence();
    CHECK(alt.term(Nat(0)) == 1);
    CHECK(alt.term(Nat(1)) == Q("-1/2"));
    CHECK(alt.term(Nat(2)) == Q("1/3"));
    for (unsigned n : {0u, 3u, 10u}) CHECK(alt.partial_sum(Nat(n)) == brute_partial(alt, n));
    CHECK_FALSE(alt.has_closed_form());

    auto pw = power_sequence(2);
    CHECK(pw.term(Nat(0)) == 1);
    CHECK(pw.term(Nat(3)) == Q("1/9"));
    for (unsigned n : {0u, 4u, 9u}) CHECK(pw.partial_sum(Nat(n)) == brute_partial(pw, n));

    auto z = zero_sequence();
    CHECK(z.partial_sum(Nat(1000)) == 0);
    CHECK(z.closed_form(Q("9/10")) == 0);

    auto cst = constant_sequence(Q("1/3"));
    CHECK(cst.partial_sum(Nat(5)) == 2);
    CHECK(cst.closed_form(Q("1/2")) == Q("2/3"));
}

TEST_CASE("table sequence is finitely supported with exact prefix data") {
    auto seq = table_sequence({Q("1"), Q("-1/2"), Q("1/4")});
    CHECK(seq.term(Nat(1)) == Q("-1/2"));
    CHECK(seq.term(Nat(3)) == 0);
    CHECK(seq.term(Nat(100)) == 0);
    CHECK(*seq.support_cutoff() == 2);
    CHECK(seq.partial_sum(Nat(2)) == Q("3/4"));
    CHECK(seq.partial_sum(Nat(50)) == Q("3/4"));
    CHECK(*seq.coeff_bound() == 1);
    CHECK(*seq.partial_sum_bound() == 1);
    // F is the polynomial itself
    CHECK(seq.closed_form(Q("1/2")) == Q("1") + Q("-1/2") * Q("1/2") + Q("1/4") * Q("1/4"));
    CHECK_FALSE(seq.serializable());
}

TEST_CASE("declared bounds are re-checked on access") {
    auto lying_term = sequence_from_function([](const Nat&) { return Rational(5); }, Q("1"), {},
                                             "liar");
    CHECK_THROWS_AS(lying_term.term(Nat(0)), config_error);

    auto lying_sums = sequence_from_function([](const Nat&) { return Rational(1); }, {}, Q("2"),
                                             "liar2");
    CHECK(lying_sums.partial_sum(Nat(1)) == 2);
    CHECK_THROWS_AS(lying_sums.partial_sum(Nat(5)), config_error);
}

TEST_CASE("partial_sum_range matches pointwise sums and handles empty ranges") {
    auto alt = alternating_harmonic_sequence();
    auto range = alt.partial_sum_range(Nat(3), Nat(7));
    CHECK(range.size() == 5);
    for (unsigned i = 0; i < 5; ++i) CHECK(range[i] == alt.partial_sum(Nat(3 + i)));
    CHECK(alt.partial_sum_range(Nat(5), Nat(4)).empty());
}

TEST_CASE("truncated evaluation stops at the support cutoff") {
    auto tab = table_sequence({Q("1"), Q("1/2")});
    CHECK(eval_truncated(tab, Q("1/3"), Nat(1000)) == Q("1") + Q("1/2") * Q("1/3"));
    auto geo = geometric_sequence(Q("1/3"));
    for (unsigned l : {0u, 1u, 7u})
        CHECK(eval_truncated(geo, Q("1/2"), Nat(l)) == brute_truncated(geo, Q("1/2"), l));
}

TEST_CASE("eval point domain") {
    CHECK_THROWS_AS(EvalPoint(Q("1/2"), Nat(0)), domain_error);
    CHECK_THROWS_AS(EvalPoint(Q("3/4"), Nat(2)), domain_error);  // 3/4 > 1 - 1/2
    CHECK_THROWS_AS(EvalPoint(Q("-1/4"), Nat(2)), domain_error);
    EvalPoint ok(Q("1/2"), Nat(2));
    CHECK(ok.x == Q("1/2"));
}

TEST_CASE("certified evaluation: the worked example, exactly") {
    auto seq = geometric_sequence(Q("1/2"));
    CertifiedValue cv = eval_certified(seq, EvalPoint(Q("1/2"), Nat(2)), Q("1/100"));
    // l = omega((1/100)/(1*2), 2) = 2 * ceil_log2(200) = 16
    CHECK(cv.l_used == 16);
    CHECK(cv.accuracy == Q("1/100"));
    // The true truncation error is the geometric tail past index 16:
    // F(1/2) - F_16(1/2) = sum_{i>=17} 4^-i = (4/3) * 4^-17.
    Rational err = seq.closed_form(Q("1/2")) - cv.value;
    CHECK(err == Q("4/3") * pow_rat(Q("1/4"), Nat(17)));
    CHECK(rat_abs(err) <= cv.accuracy);
}

TEST_CASE("certified evaluation respects finite support and bound overrides") {
    auto tab = table_sequence({Q("1"), Q("-1/2"), Q("1/4")});
    CertifiedValue cv = eval_certified(tab, EvalPoint(Q("1/2"), Nat(2)), Q("1/1000000"));
    CHECK(cv.l_used == 2);
    CHECK(cv.accuracy == 0);
    CHECK(cv.value == tab.closed_form(Q("1/2")));

    auto no_bound = sequence_from_function([](const Nat& i) { return pow_rat(Q("1/2"), i); }, {},
                                           {}, "anon");
    CHECK_THROWS_AS(eval_certified(no_bound, EvalPoint(Q("1/2"), Nat(2)), Q("1/10")),
                    config_error);
    // An explicit (true) bound unblocks it; a looser bound only lengthens l.
    CertifiedValue cv2 =
        eval_certified(no_bound, EvalPoint(Q("1/2"), Nat(2)), Q("1/10"), {}, Q("1"));
    auto geo = geometric_sequence(Q("1/2"));
    CHECK(rat_abs(geo.closed_form(Q("1/2")) - cv2.value) <= Q("1/10"));

    CHECK_THROWS_AS(eval_certified(geo, EvalPoint(Q("1/2"), Nat(2)), Q("0")), domain_error);
    CHECK_THROWS_AS(eval_certified(geo, EvalPoint(Q("1/2"), Nat(2)), Q("1/10"), {}, Q("0")),
                    config_error);
}

TEST_CASE("certified route tolerates sequences slower than any closed form") {
    // Certified accuracy must hold whatever the stream is, as long as the
    // bound is honest. Compare against the exact geometric value.
    auto geo = geometric_sequence(Q("2/3"));
    auto hidden = geo.without_closed_form();
    CHECK_FALSE(hidden.has_closed_form());
    CHECK(hidden.label() != geo.label());
    for (const char* etext : {"1/4", "1/19", "1/256"}) {
        Rational eps = Q(etext);
        CertifiedValue cv = eval_certified(hidden, EvalPoint(Q("3/4"), Nat(4)), eps);
        CHECK(rat_abs(geo.closed_form(Q("3/4")) - cv.value) <= eps);
    }
}

TEST_CASE("summation by parts: both routes agree exactly") {
    auto geo = geometric_sequence(Q("1/2"));
    auto alt = alternating_harmonic_sequence();
    auto tab = table_sequence({Q("2"), Q("-3/2"), Q("0"), Q("5/7")});
    for (const auto& seq : {geo, alt, tab}) {
        for (const char* xtext : {"0", "1/2", "3/5", "9/10"}) {
            for (unsigned l : {0u, 1u, 2u, 13u}) {
                auto [lhs, rhs] = summation_by_parts(seq, Q(xtext), Nat(l));
                CHECK(lhs == rhs);
            }
        }
    }
    // l = 0 degenerates to the bare first partial sum
    auto [lhs0, rhs0] = summation_by_parts(alt, Q("1/2"), Nat(0));
    CHECK(lhs0 == alt.partial_sum(Nat(0)));
    CHECK(rhs0 == lhs0);
}

TEST_CASE("wire descriptors round-trip and reject floats") {
    for (nlohmann::json desc :
         {nlohmann::json{{"kind", "geometric"}, {"ratio", "2/3"}},
          nlohmann::json{{"kind", "alternating_harmonic"}},
          nlohmann::json{{"kind", "power"}, {"k", 3}},
          nlohmann::json{{"kind", "zero"}},
          nlohmann::json{{"kind", "constant"}, {"c", "-1/2"}}}) {
        CoefficientSequence seq = sequence_from_json(desc);
        CHECK(seq.serializable());
        CoefficientSequence again = sequence_from_json(seq.descriptor());
        CHECK(again.descriptor() == seq.descriptor());
        for (unsigned i : {0u, 1u, 5u}) CHECK(again.term(Nat(i)) == seq.term(Nat(i)));
    }

    CHECK_THROWS_AS(sequence_from_json({{"kind", "geometric"}, {"ratio", 0.5}}), config_error);
    CHECK_THROWS_AS(sequence_from_json({{"kind", "geometric"}}), config_error);
    CHECK_THROWS_AS(sequence_from_json({{"kind", "power"}, {"k", 0}}), config_error);
    CHECK_THROWS_AS(sequence_from_json({{"kind", "mystery"}}), config_error);
    CHECK_THROWS_AS(sequence_from_json(nlohmann::json("geometric")), config_error);

    auto tab = table_sequence({Q("1")});
    CHECK_THROWS_AS(tab.descriptor(), config_error);
}

TEST_CASE("resource limits stop runaway prefix fills") {
    ResourceLimits tight;
    tight.max_span = 10;
    auto alt = alternating_harmonic_sequence();
    CHECK_THROWS_AS(alt.partial_sum(Nat(50), tight), resource_error);
    CHECK_THROWS_AS(eval_truncated(alt, Q("1/2"), Nat(50), tight), resource_error);
}
