#include <doctest.h>

#include "ratelab/finitary.hpp"

using namespace ratelab;

namespace {

Rational Q(const char* text) { return parse_rational(text); }

CoefficientSequence flip_flop() {
    return sequence_from_function(
        [](const Nat& i) {
            if (i == 0) return Rational(1);
            return (i & 1) != 0 ? Rational(-1) : Rational(1);
        },
        Q("1"), Q("1"), "flip_flop");
}

}  // namespace

TEST_CASE("abel instance geometry, on the zero series") {
    AbelInstance inst(zero_sequence(), PointFamily::v(), Q("1"), Q("1/4"),
                      GapFunction::constant(Nat(5)), Nat(1), Nat(32), Nat(37));
    CHECK(inst.big_n() == 32);
    CHECK(inst.window_end() == 37);
    CHECK(inst.decay_length() == 37 * 11);
    CHECK(inst.sums_window().lo == 1);
    CHECK(inst.sums_window().hi == 407);
    CHECK(inst.points_window().lo == 32);
    CHECK(inst.points_window().hi == 37);
    CHECK(inst.conclusion_window().lo == 32);
    CHECK(inst.conclusion_window().hi == 37);

    CheckReport premise = check_abel_premise(inst);
    CHECK(premise.ok);
    REQUIRE(premise.clauses.size() == 3);
    CHECK(premise.clauses[0].name == "partial_sums_cauchy");
    CHECK(premise.clauses[1].name == "points_within_p");
    CHECK(premise.clauses[1].holds.checked_pairs == 6);
    CHECK(premise.clauses[2].name == "points_near_1");
    CHECK(premise.first_failure() == nullptr);

    CheckReport conclusion = check_abel_conclusion(inst);
    CHECK(conclusion.ok);
    CHECK(conclusion.clauses.front().name == "joint_conclusion");
}

TEST_CASE("abel premise pins the closeness scale exactly") {
    // Same instance with p = 36: v_37 = 36/37 exceeds 1 - 1/36.
    AbelInstance inst(zero_sequence(), PointFamily::v(), Q("1"), Q("1/4"),
                      GapFunction::constant(Nat(5)), Nat(1), Nat(32), Nat(36));
    CheckReport premise = check_abel_premise(inst);
    CHECK_FALSE(premise.ok);
    const ClauseReport* bad = premise.first_failure();
    REQUIRE(bad != nullptr);
    CHECK(bad->name == "points_within_p");
    CHECK(*bad->holds.witness_i == 37);
    CHECK(bad->holds.lhs == Q("36/37"));
    CHECK(bad->holds.threshold == Q("35/36"));
}

TEST_CASE("abel soundness on a geometric instance, both evaluation routes") {
    AbelInstance inst(geometric_sequence(Q("1/2")), PointFamily::v(), Q("2"), Q("1/2"),
                      GapFunction::constant(Nat(3)), Nat(3), Nat(96), Nat(99));
    CHECK(inst.big_n() == 96);
    CHECK(inst.window_end() == 99);
    CHECK(inst.decay_length() == 99 * 12);

    CHECK(check_abel_premise(inst).ok);
    CHECK(check_abel_conclusion(inst).ok);

    ConclusionOptions certified;
    certified.force_certified = true;
    CHECK(check_abel_conclusion(inst, certified).ok);

    // The certified verdict is honest: the exact statement holds as well.
    for (Nat m = inst.big_n(); m <= inst.window_end(); ++m) {
        Rational f = inst.seq.closed_form(PointFamily::v().point(m));
        for (Nat n = inst.big_n(); n <= inst.window_end(); ++n) {
            CHECK(rat_abs(f - inst.seq.partial_sum(n)) <= inst.eps);
        }
    }

    // delta = eps/4 leaves no margin at all: eps - 2*delta = 0.
    ConclusionOptions no_margin;
    no_margin.force_certified = true;
    no_margin.delta = Q("1/4");
    CHECK_THROWS_AS(check_abel_conclusion(inst, no_margin), config_error);
}

TEST_CASE("a sequence with no closed form is conclusion-checked by certified sums") {
    AbelInstance inst(zero_sequence().without_closed_form(), PointFamily::v(), Q("1"), Q("1/4"),
                      GapFunction::constant(Nat(5)), Nat(1), Nat(32), Nat(37));
    CheckReport conclusion = check_abel_conclusion(inst);
    CHECK(conclusion.ok);
    CHECK(conclusion.clauses.front().holds.threshold == Q("1/4") - 2 * Q("1/32"));
}

TEST_CASE("lying bounds reject the instance instead of judging the theorem") {
    // Partial sums of geometric(1/2) reach 3/2 > 1 already at index 1.
    AbelInstance small_L(geometric_sequence(Q("1/2")), PointFamily::v(), Q("1"), Q("1/2"),
                         GapFunction::constant(Nat(3)), Nat(3), Nat(96), Nat(99));
    CHECK_THROWS_AS(check_abel_premise(small_L), config_error);

    // Sums sit within L on the conclusion window, but a coefficient breaks
    // the derived 2L bound the certified route enumerates.
    AbelInstance spike(table_sequence({Q("1"), Q("-3"), Q("2")}), PointFamily::v(), Q("1"),
                       Q("1"), GapFunction::constant(Nat(0)), Nat(2), Nat(2), Nat(2));
    CHECK(check_abel_conclusion(spike).ok);  // exact route never enumerates
    ConclusionOptions certified;
    certified.force_certified = true;
    CHECK_THROWS_AS(check_abel_conclusion(spike, certified), config_error);
}

TEST_CASE("abel instance guards") {
    auto make = [](Rational L, Rational eps, Nat n1, Nat p) {
        return AbelInstance(zero_sequence(), PointFamily::v(), std::move(L), std::move(eps),
                            GapFunction::constant(Nat(1)), std::move(n1), Nat(1), std::move(p));
    };
    CHECK_THROWS_AS(make(Q("1"), Q("0"), Nat(1), Nat(1)), domain_error);
    CHECK_THROWS_AS(make(Q("1"), Q("-1/2"), Nat(1), Nat(1)), domain_error);
    CHECK_THROWS_AS(make(Q("0"), Q("1"), Nat(1), Nat(1)), domain_error);
    CHECK_THROWS_AS(make(Q("1"), Q("1"), Nat(0), Nat(1)), config_error);
    CHECK_THROWS_AS(make(Q("1"), Q("1"), Nat(1), Nat(0)), config_error);
}

TEST_CASE("an oscillating premise fails on its cauchy clause") {
    AbelInstance inst(flip_flop(), PointFamily::v(), Q("1"), Q("1/2"),
                      GapFunction::constant(Nat(3)), Nat(1), Nat(32), Nat(37));
    CheckReport premise = check_abel_premise(inst);
    CHECK_FALSE(premise.ok);
    const ClauseReport* bad = premise.first_failure();
    REQUIRE(bad != nullptr);
    CHECK(bad->name == "partial_sums_cauchy");
    CHECK(bad->holds.lhs == 1);

    nlohmann::json j = check_report_json(premise);
    CHECK(j.at("ok") == false);
    REQUIRE(j.at("clauses").size() == 3);
    CHECK(j.at("clauses")[0].at("name") == "partial_sums_cauchy");
    CHECK(j.at("clauses")[0].at("ok") == false);
    CHECK(j.at("clauses")[1].at("ok") == true);
}

TEST_CASE("tauber instance geometry and soundness on geometric(1/2)") {
    TauberInstance inst(geometric_sequence(Q("1/2")), Q("1"), Q("1/2"),
                        GapFunction::constant(Nat(3)), Nat(7), Nat(15));
    CHECK(inst.big_n() == 196);
    CHECK(inst.window_end() == 199);
    CHECK(inst.decay_length() == 199 * 11);
    CHECK(inst.tail_window().lo == 7);
    CHECK(inst.tail_window().hi == 2189);
    CHECK(inst.f_window().lo == 15);
    CHECK(inst.f_window().hi == 199);

    CheckReport premise = check_tauber_premise(inst);
    CHECK(premise.ok);
    REQUIRE(premise.clauses.size() == 2);
    CHECK(premise.clauses[0].name == "small_tail");
    CHECK(premise.clauses[1].name == "f_values_cauchy");

    CheckReport conclusion = check_tauber_conclusion(inst);
    CHECK(conclusion.ok);
    CHECK(conclusion.clauses.front().name == "partial_sums_cauchy");
}

TEST_CASE("tauber tail clause is sharp in n1") {
    TauberInstance inst(geometric_sequence(Q("1/2")), Q("1"), Q("1/2"),
                        GapFunction::constant(Nat(3)), Nat(6), Nat(15));
    CHECK(inst.big_n() == 144);
    CHECK(inst.decay_length() == 147 * 11);
    CheckReport premise = check_tauber_premise(inst);
    CHECK_FALSE(premise.ok);
    const ClauseReport* bad = premise.first_failure();
    REQUIRE(bad != nullptr);
    CHECK(bad->name == "small_tail");
    CHECK(*bad->holds.witness_i == 6);
    CHECK(bad->holds.lhs == Q("3/32"));
    CHECK(bad->holds.threshold == Q("1/16"));
}

TEST_CASE("the certified margin is conservative, never unsound") {
    // Exact route: sup over [15; 199] of |F(v_m) - F(v_n)| is 23/200 <= 1/8.
    // Certified route tightens the threshold to 3/32 < 23/200, so the same
    // instance fails, first at (15, 63): the true gap there is exactly 3/32,
    // and the truncated values sit a hair above it.
    TauberInstance inst(geometric_sequence(Q("1/2")), Q("1"), Q("1/2"),
                        GapFunction::constant(Nat(3)), Nat(7), Nat(15));
    ConclusionOptions certified;
    certified.force_certified = true;
    CheckReport report = check_tauber_premise(inst, certified);
    CHECK_FALSE(report.ok);
    const ClauseReport* bad = report.first_failure();
    REQUIRE(bad != nullptr);
    CHECK(bad->name == "f_values_cauchy");
    CHECK(bad->holds.threshold == Q("3/32"));
    CHECK(*bad->holds.witness_i == 15);
    CHECK(*bad->holds.witness_j == 63);
    CHECK(bad->holds.lhs > bad->holds.threshold);

    // Pushing n2 past the guaranteed-margin point makes the certified route
    // pass as well: 2/(n2+1) <= threshold - 2*delta needs n2 >= 31.
    TauberInstance wide(geometric_sequence(Q("1/2")), Q("1"), Q("1/2"),
                        GapFunction::constant(Nat(3)), Nat(7), Nat(31));
    CHECK(check_tauber_premise(wide, certified).ok);
    CHECK(check_tauber_premise(wide).ok);
}

TEST_CASE("tauber coefficient spot-check and guards") {
    TauberInstance spike(table_sequence({Q("0"), Q("0"), Q("5"), Q("0")}), Q("1"), Q("1"),
                         GapFunction::constant(Nat(0)), Nat(2), Nat(1));
    CHECK_THROWS_AS(check_tauber_premise(spike), config_error);

    CHECK_THROWS_AS(TauberInstance(zero_sequence(), Q("1"), Q("0"), GapFunction::constant(Nat(0)),
                                   Nat(1), Nat(1)),
                    domain_error);
    CHECK_THROWS_AS(TauberInstance(zero_sequence(), Q("-1"), Q("1"), GapFunction::constant(Nat(0)),
                                   Nat(1), Nat(1)),
                    domain_error);
    CHECK_THROWS_AS(TauberInstance(zero_sequence(), Q("1"), Q("1"), GapFunction::constant(Nat(0)),
                                   Nat(1), Nat(0)),
                    config_error);
}
