#include <doctest.h>

#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ratelab/metastability.hpp"

using namespace ratelab;

namespace {

Rational Q(const char* text) { return parse_rational(text); }

// s_n alternates 1, 0, 1, 0, ...: metastable for no window of size >= 2.
CoefficientSequence flip_flop() {
    return sequence_from_function(
        [](const Nat& i) {
            if (i == 0) return Rational(1);
            return (i & 1) != 0 ? Rational(-1) : Rational(1);
        },
        Q("1"), Q("1"), "flip_flop");
}

// s_n = 1/(n+1), strictly decreasing to 0.
CoefficientSequence telescoping() {
    return sequence_from_function(
        [](const Nat& i) {
            if (i == 0) return Rational(1);
            return Rational(Int(1), Int(i + 1)) - Rational(Int(1), Int(i));
        },
        Q("1"), Q("1"), "telescoping");
}

// A found-or-not, where-found comparison. Diagnostics accounting is allowed
// to differ between the kernel and the reference (they bail at different
// points of a failing window), so it is checked separately via witnesses.
void check_search_agrees(const WindowPredicate& pred, const GapFunction& g, WindowMode mode,
                         const Nat& start, const Nat& cap) {
    SearchResult a = least_metastable_n(pred, g, mode, start, cap);
    SearchResult b = reference::least_metastable_n(pred, g, mode, start, cap);
    REQUIRE(a.found.has_value() == b.found.has_value());
    if (a.found) {
        CHECK(*a.found == *b.found);
        CHECK(a.report->ok);
        CHECK(b.report->ok);
    }
    CHECK(a.scanned == b.scanned);
}

// A failing report must carry a witness that re-violates the threshold when
// recomputed straight from the predicate.
void check_witness_valid(const WindowPredicate& pred, const HoldsReport& r) {
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.witness_i.has_value());
    if (pred.joint()) {
        REQUIRE(r.witness_j.has_value());
        CHECK(rat_abs(pred.value(*r.witness_i) - pred.joint_value(*r.witness_j)) == r.lhs);
    } else if (pred.pairwise()) {
        REQUIRE(r.witness_j.has_value());
        CHECK(rat_abs(pred.value(*r.witness_i) - pred.value(*r.witness_j)) == r.lhs);
    } else {
        CHECK(pred.value(*r.witness_i) == r.lhs);
    }
    CHECK(r.lhs > r.threshold);
}

}  // namespace

TEST_CASE("windows of an oscillating sum fail exactly when they can pair up") {
    auto pred = WindowPredicate::cauchy_partial_sums(flip_flop(), Q("1/2"));
    HoldsReport bad = holds_on(pred, Window{Nat(3), Nat(5)});
    CHECK_FALSE(bad.ok);
    check_witness_valid(pred, bad);
    CHECK(bad.lhs == 1);

    HoldsReport single = holds_on(pred, Window{Nat(4), Nat(4)});
    CHECK(single.ok);
    CHECK(single.checked_pairs == 1);

    HoldsReport empty = holds_on(pred, Window{Nat(5), Nat(3)});
    CHECK(empty.ok);
    CHECK(empty.checked_pairs == 0);
}

TEST_CASE("least metastable start of the telescoping sums, by hand") {
    // s_n = 1/(n+1) on [N; 3N+2]: the extreme pair is the endpoints, with
    // difference 2/(3(N+1)) <= 1/10 iff N >= 17/3.
    auto pred = WindowPredicate::cauchy_partial_sums(telescoping(), Q("1/10"));
    GapFunction g = GapFunction::linear(Nat(2), Nat(2));
    SearchResult r = least_metastable_n(pred, g, WindowMode::anchored, Nat(0), Nat(50));
    REQUIRE(r.found.has_value());
    CHECK(*r.found == 6);
    CHECK(r.scanned == 7);
    CHECK(r.report->ok);
    CHECK(r.report->checked_pairs == Nat(15) * 16 / 2);  // 15 sums on [6; 20]

    SearchResult ref = reference::least_metastable_n(pred, g, WindowMode::anchored, Nat(0), Nat(50));
    REQUIRE(ref.found.has_value());
    CHECK(*ref.found == 6);
}

TEST_CASE("direct windows below the diagonal hold vacuously") {
    auto pred = WindowPredicate::cauchy_partial_sums(flip_flop(), Q("1/2"));
    GapFunction g = GapFunction::constant(Nat(3));
    // [4; 3] is empty, so n = 4 passes even though the sums never settle.
    SearchResult r = least_metastable_n(pred, g, WindowMode::direct, Nat(4), Nat(10));
    REQUIRE(r.found.has_value());
    CHECK(*r.found == 4);
    CHECK(r.report->checked_pairs == 0);
}

TEST_CASE("point-family clipping: the joint check skips indices outside the family") {
    auto pred = WindowPredicate::joint_abel(geometric_sequence(Q("1/2")), PointFamily::v(),
                                            Q("1/100"));
    // v starts at 1, so the points side of [0; 0] is empty: vacuous pass.
    HoldsReport r = holds_on(pred, Window{Nat(0), Nat(0)});
    CHECK(r.ok);
    CHECK(r.checked_pairs == 0);

    auto near = WindowPredicate::points_near_1(
        PointFamily::explicit_list({Q("0"), Q("1/2"), Q("3/4")}), Q("1/2"));
    CHECK_THROWS_AS(holds_on(near, Window{Nat(0), Nat(5)}), config_error);
}

TEST_CASE("kernel and reference agree across randomized predicates and windows") {
    std::mt19937 rng(20240817);
    std::vector<CoefficientSequence> seqs = {
        geometric_sequence(Q("2/3")),
        alternating_harmonic_sequence(),
        table_sequence({Q("1"), Q("-1/2"), Q("1/4"), Q("-1/8")}),
        telescoping(),
        flip_flop(),
    };
    std::vector<Rational> epss = {Q("1/3"), Q("1/7"), Q("1/20"), Q("2")};
    std::uniform_int_distribution<unsigned> lo_d(0, 40), span_d(0, 30), pick(0, 4), epick(0, 3),
        kind_d(0, 3);

    int checked_fail = 0;
    for (int it = 0; it < 150; ++it) {
        const auto& seq = seqs[pick(rng)];
        const Rational& eps = epss[epick(rng)];
        WindowPredicate pred = [&] {
            switch (kind_d(rng)) {
                case 0: return WindowPredicate::cauchy_partial_sums(seq, eps);
                case 1: return WindowPredicate::small_tail(seq, eps);
                case 2:
                    return WindowPredicate::cauchy_f(geometric_sequence(Q("1/2")),
                                                     PointFamily::v(), eps);
                default:
                    return WindowPredicate::joint_abel(geometric_sequence(Q("1/2")),
                                                       PointFamily::v(), eps);
            }
        }();
        Nat lo(lo_d(rng));
        // Every seventh window is empty on purpose.
        Window w = it % 7 == 0 ? Window{lo + 5, lo} : Window{lo, lo + span_d(rng)};
        HoldsReport a = holds_on(pred, w);
        HoldsReport b = reference::holds_on(pred, w);
        CHECK(a.ok == b.ok);
        if (!a.ok) {
            check_witness_valid(pred, a);
            check_witness_valid(pred, b);
            ++checked_fail;
        }
    }
    CHECK(checked_fail > 20);  // the mix must actually exercise failures
}

TEST_CASE("kernel and reference find the same least start") {
    auto geo_pred = WindowPredicate::cauchy_partial_sums(geometric_sequence(Q("1/2")), Q("1/32"));
    check_search_agrees(geo_pred, GapFunction::linear(Nat(1), Nat(4)), WindowMode::anchored,
                        Nat(0), Nat(60));
    check_search_agrees(geo_pred, GapFunction::constant(Nat(25)), WindowMode::direct, Nat(0),
                        Nat(40));

    auto alt_pred = WindowPredicate::cauchy_partial_sums(alternating_harmonic_sequence(),
                                                         Q("1/10"));
    check_search_agrees(alt_pred, GapFunction::linear(Nat(1), Nat(0)), WindowMode::anchored,
                        Nat(0), Nat(30));

    auto never = WindowPredicate::cauchy_partial_sums(flip_flop(), Q("1/2"));
    check_search_agrees(never, GapFunction::linear(Nat(1), Nat(1)), WindowMode::anchored, Nat(0),
                        Nat(25));  // exhausts

    auto tail = WindowPredicate::small_tail(geometric_sequence(Q("1/2")), Q("1/16"));
    check_search_agrees(tail, GapFunction::linear(Nat(1), Nat(3)), WindowMode::direct, Nat(0),
                        Nat(40));
}

TEST_CASE("search counts windows, not thread blocks") {
    auto pred = WindowPredicate::cauchy_partial_sums(telescoping(), Q("1/10"));
    GapFunction g = GapFunction::linear(Nat(2), Nat(2));
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    SearchResult one = least_metastable_n(pred, g, WindowMode::anchored, Nat(0), Nat(50));
    omp_set_num_threads(4);
    SearchResult four = least_metastable_n(pred, g, WindowMode::anchored, Nat(0), Nat(50));
    omp_set_num_threads(saved);
    REQUIRE(one.found.has_value());
    REQUIRE(four.found.has_value());
    CHECK(*one.found == *four.found);
    CHECK(one.scanned == four.scanned);
    CHECK(one.checked_pairs == four.checked_pairs);
#else
    SearchResult a = least_metastable_n(pred, g, WindowMode::anchored, Nat(0), Nat(50));
    SearchResult b = least_metastable_n(pred, g, WindowMode::anchored, Nat(0), Nat(50));
    REQUIRE(a.found.has_value());
    CHECK(*a.found == *b.found);
    CHECK(a.checked_pairs == b.checked_pairs);
#endif
}

TEST_CASE("a defeating challenge exists iff the sums keep oscillating") {
    auto restless = WindowPredicate::cauchy_partial_sums(flip_flop(), Q("1/2"));
    auto gap = counterexample_gap(restless, Nat(12), Nat(30));
    REQUIRE(gap.has_value());
    for (unsigned n = 0; n <= 12; ++n) {
        HoldsReport r = holds_on(restless, direct_window(Nat(n), *gap));
        CHECK_FALSE(r.ok);
    }

    // Threshold 3 can never be beaten by sums confined to {0, 1}.
    auto calm = WindowPredicate::cauchy_partial_sums(flip_flop(), Q("3"));
    CHECK_FALSE(counterexample_gap(calm, Nat(5), Nat(40)).has_value());

    // 1 - v_m = 1/m drops below 1/10 from m = 10 on: no defeat past that.
    auto near = WindowPredicate::points_near_1(PointFamily::v(), Q("1/10"));
    CHECK_FALSE(counterexample_gap(near, Nat(15), Nat(60)).has_value());
}

TEST_CASE("span limits surface as resource errors, not verdicts") {
    auto pred = WindowPredicate::cauchy_partial_sums(geometric_sequence(Q("1/2")), Q("1/4"));
    CHECK_THROWS_AS(holds_on(pred, Window{Nat(0), Nat(6'000'000)}), resource_error);
    ResourceLimits tight;
    tight.max_span = 8;
    CHECK_THROWS_AS(holds_on(pred, Window{Nat(0), Nat(20)}, tight), resource_error);
    CHECK_THROWS_AS(reference::holds_on(pred, Window{Nat(0), Nat(20)}, tight), resource_error);
    CHECK_THROWS_AS(
        least_metastable_n(pred, GapFunction::constant(Nat(20)), WindowMode::anchored, Nat(0),
                           Nat(5), tight),
        resource_error);
}

TEST_CASE("holds_report_json carries witnesses only on failure") {
    auto pred = WindowPredicate::cauchy_partial_sums(flip_flop(), Q("1/2"));
    nlohmann::json ok = holds_report_json(holds_on(pred, Window{Nat(2), Nat(2)}));
    CHECK(ok.at("ok") == true);
    CHECK_FALSE(ok.contains("witness_i"));
    CHECK_FALSE(ok.contains("lhs"));

    nlohmann::json bad = holds_report_json(holds_on(pred, Window{Nat(2), Nat(4)}));
    CHECK(bad.at("ok") == false);
    CHECK(bad.contains("witness_i"));
    CHECK(bad.contains("witness_j"));
    CHECK(bad.at("lhs") == "1");
}
