// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "critickit/errors.hpp"
#include "critickit/harness.hpp"
#include "critickit/io.hpp"
#include "support.hpp"

using namespace critickit;
using testing::make_pref_tuple;

namespace {

Judge constant_judge(std::string text) {
    return [text = std::move(text)](const JudgeRequest&) { return text; };
}

double brute_chi_square(double a, double b, double c, double d) {
    const double obs[2][2] = {{a, b}, {c, d}};
    const double n = a + b + c + d;
    double chi = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double row = obs[i][0] + obs[i][1];
            const double col = obs[0][j] + obs[1][j];
            const double e = row * col / n;
            chi += (obs[i][j] - e) * (obs[i][j] - e) / e;
        }
    return chi;
}

} // namespace

TEST_CASE("judge_pair examples") {
    const auto t = make_pref_tuple("t", "x", "y", Preference::A);
    const Judge first = oracle_judge(parse_oracle_spec("always_first"));
    const auto straight = judge_pair(t, first, false);
    CHECK(straight.verdict == Verdict::A);
    CHECK(straight.correct == 1);
    const auto swapped = judge_pair(t, first, true);
    CHECK(swapped.verdict == Verdict::B);
    CHECK(swapped.correct == 0);
    const auto mute = judge_pair(t, constant_judge("I cannot decide."), false);
    CHECK(mute.verdict == Verdict::undecided);
    CHECK(mute.correct == 0);
}

TEST_CASE("judge sees the swapped order") {
    const auto t = make_pref_tuple("t", "alpha", "beta", Preference::A);
    std::string first_seen;
    const Judge spy = [&](const JudgeRequest& r) {
        first_seen = r.first.text();
        return std::string("\\boxed{Response 1 is better}");
    };
    judge_pair(t, spy, true);
    CHECK(first_seen == "beta");
}

TEST_CASE("transport failures") {
    const std::vector<PreferenceTuple> tuples = {make_pref_tuple("a", "x", "y", Preference::A),
                                                 make_pref_tuple("b", "unreachable", "y", Preference::B)};
    const Judge flaky = [](const JudgeRequest& r) -> std::string {
        if (r.first.text() == "unreachable") throw TransportError("boom", 503, 4);
        return "\\boxed{Response 1 is better}";
    };
    EvalConfig lenient;
    const auto e = evaluate_benchmark(tuples, flaky, lenient);
    CHECK(e.report.num_failed == 1);
    CHECK(e.report.overall_accuracy == 1.0);
    CHECK(e.records[1].failed);
    CHECK(e.records[1].failure_reason.find("boom") != std::string::npos);

    EvalConfig strict;
    strict.strict = true;
    const Judge dead = [](const JudgeRequest&) -> std::string { throw TransportError("down", 0, 1); };
    CHECK_THROWS_AS(evaluate_benchmark(tuples, dead, strict), TransportError);
    CHECK_THROWS_AS(evaluate_benchmark(tuples, dead, lenient), ConfigError);
}

TEST_CASE("aggregate examples") {
    const Judge first = oracle_judge(parse_oracle_spec("always_first"));
    SUBCASE("three tuples, two right") {
        const std::vector<PreferenceTuple> t = {make_pref_tuple("1", "x", "y", Preference::A),
                                                make_pref_tuple("2", "x", "y", Preference::A),
                                                make_pref_tuple("3", "x", "y", Preference::B)};
        const auto r = evaluate_benchmark(t, first, {}).report;
        CHECK(r.overall_accuracy == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
        CHECK(r.counts.at(kUntaggedSubset) == 3);
        CHECK_FALSE(r.swap_consistency);
    }
    SUBCASE("micro and macro differ") {
        const std::vector<PreferenceTuple> t = {make_pref_tuple("x1", "p", "q", Preference::A, "X"),
                                                make_pref_tuple("y1", "p", "q", Preference::B, "Y"),
                                                make_pref_tuple("y2", "p", "q", Preference::B, "Y"),
                                                make_pref_tuple("y3", "p", "q", Preference::B, "Y")};
        const auto r = evaluate_benchmark(t, first, {}).report;
        CHECK(r.per_subset.at("X") == 1.0);
        CHECK(r.per_subset.at("Y") == 0.0);
        CHECK(r.overall_accuracy == 0.25);
        CHECK(r.macro_accuracy == 0.5);
        CHECK(r.counts.at("Y") == 3);
    }
    SUBCASE("position-biased judge with both orders") {
        const std::vector<PreferenceTuple> t = {make_pref_tuple("1", "x", "y", Preference::A),
                                                make_pref_tuple("2", "x", "y", Preference::B)};
        EvalConfig cfg;
        cfg.swap_both_orders = true;
        const auto e = evaluate_benchmark(t, first, cfg);
        CHECK(e.records.size() == 4);
        REQUIRE(e.report.swap_consistency);
        CHECK(*e.report.swap_consistency == 0.0);
        CHECK(e.report.overall_accuracy == 0.5);
    }
    SUBCASE("consistent judge with both orders") {
        const std::vector<PreferenceTuple> t = {make_pref_tuple("1", "short", "a much longer answer", Preference::B)};
        EvalConfig cfg;
        cfg.swap_both_orders = true;
        const auto r = evaluate_benchmark(t, oracle_judge(parse_oracle_spec("prefer_longer")), cfg).report;
        CHECK(*r.swap_consistency == 1.0);
        CHECK(r.overall_accuracy == 1.0);
    }
    CHECK_THROWS_AS(evaluate_benchmark({}, first, {}), ConfigError);
}

TEST_CASE("property: accuracy bounds and order independence") {
    std::mt19937_64 rng(73);
    const Judge judge = oracle_judge(parse_oracle_spec("prefer_lexicographic"));
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PreferenceTuple> t;
        const int n = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i)
            t.push_back(make_pref_tuple("id" + std::to_string(i), "r" + std::to_string(rng() % 5) + " a",
                                   "r" + std::to_string(5 + rng() % 5) + " b", rng() % 2 ? Preference::A : Preference::B,
                                   "S" + std::to_string(rng() % 3)));
        EvalConfig cfg;
        cfg.swap_both_orders = rng() % 2;
        const auto e = evaluate_benchmark(t, judge, cfg);
        double lo = 1, hi = 0;
        for (const auto& [s, acc] : e.report.per_subset) {
            CHECK(acc >= 0.0);
            CHECK(acc <= 1.0);
            lo = std::min(lo, acc);
            hi = std::max(hi, acc);
        }
        CHECK(e.report.macro_accuracy >= lo - 1e-15);
        CHECK(e.report.macro_accuracy <= hi + 1e-15);

        auto shuffled = e.records;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(to_json(aggregate(shuffled, cfg.swap_both_orders)) == to_json(e.report));

        cfg.parallelism = 4;
        const auto parallel = evaluate_benchmark(t, judge, cfg);
        CHECK(dump_compact(to_json(parallel.report)) == dump_compact(to_json(e.report)));
    }
}

TEST_CASE("property: label-swap symmetry") {
    std::mt19937_64 rng(79);
    for (const char* spec : {"always_first", "prefer_longer", "prefer_lexicographic", "keyword_match:C"}) {
        const Judge judge = oracle_judge(parse_oracle_spec(spec));
        std::vector<PreferenceTuple> t, flipped;
        for (int i = 0; i < 40; ++i) {
            std::string a = "answer " + std::string(1 + rng() % 6, 'a') + (rng() % 2 ? " \\boxed{C}" : "");
            std::string b = "answer " + std::string(1 + rng() % 6, 'b') + (rng() % 2 ? " \\boxed{C}" : "");
            t.push_back(make_pref_tuple("t" + std::to_string(i), a, b, rng() % 2 ? Preference::A : Preference::B,
                                   "S" + std::to_string(rng() % 2), "C"));
            flipped.push_back(relabeled(t.back()));
        }
        EvalConfig cfg;
        EvalConfig swapped_cfg;
        swapped_cfg.present_swapped = true;
        CAPTURE(spec);
        CHECK(dump_compact(to_json(evaluate_benchmark(t, judge, cfg).report)) ==
              dump_compact(to_json(evaluate_benchmark(flipped, judge, swapped_cfg).report)));
    }
}

TEST_CASE("chi-square examples") {
    const auto a = chi_square({30, 10, 10, 30});
    CHECK(a.chi2 == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(a.band == SignificanceBand::p_lt_0_001);
    CHECK(chi_square({25, 25, 25, 25}).chi2 == 0.0);
    CHECK(chi_square({25, 25, 25, 25}).band == SignificanceBand::not_significant);
    CHECK(chi_square({10, 0, 0, 10}).chi2 == doctest::Approx(20.0).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(chi_square({0, 0, 5, 5}), doctest::Contains("degenerate margin"), ConfigError);
    CHECK_THROWS_WITH_AS(chi_square({3, 0, 5, 0}), doctest::Contains("degenerate margin"), ConfigError);
}

TEST_CASE("significance bands") {
    CHECK(significance_band(161.76) == SignificanceBand::p_lt_0_001);
    CHECK(significance_band(10.0) == SignificanceBand::p_lt_0_01);
    CHECK(significance_band(5.0) == SignificanceBand::p_lt_0_05);
    CHECK(significance_band(3.0) == SignificanceBand::not_significant);
}

TEST_CASE("property: chi-square agrees with brute force and is symmetric") {
    std::mt19937_64 rng(83);
    for (int i = 0; i < 500; ++i) {
        const long a = 1 + rng() % 60, b = rng() % 60, c = rng() % 60, d = 1 + rng() % 60;
        const double chi = chi_square({a, b, c, d}).chi2;
        CHECK(std::abs(chi - brute_chi_square(a, b, c, d)) < 1e-9);
        // Swap rows and columns together.
        CHECK(std::abs(chi - chi_square({d, c, b, a}).chi2) < 1e-9);
    }
}

TEST_CASE("self-prediction contingency table") {
    const std::vector<PreferenceTuple> t = {
        make_pref_tuple("1", "x", "y", Preference::A, std::nullopt, "C"),
        make_pref_tuple("2", "x", "y", Preference::B, std::nullopt, "C"),
        make_pref_tuple("3", "x", "y", Preference::A, std::nullopt, "D"),
        make_pref_tuple("4", "x", "y", Preference::B, std::nullopt, "D"),
    };
    // Predicts C and always picks Response 1.
    const Judge judge = [](const JudgeRequest&) {
        return make_critic_output("p", "C", "t", "Response 1 is better");
    };
    const auto r = evaluate_benchmark(t, judge, {}).report;
    REQUIRE(r.self_prediction);
    CHECK(*r.self_prediction == Contingency2x2{1, 1, 1, 1});
    REQUIRE(r.self_prediction_chi2);
    CHECK(r.self_prediction_chi2->chi2 == 0.0);
}

TEST_CASE("records serialize without latency by default") {
    const auto rec = judge_pair(make_pref_tuple("t", "x", "y", Preference::A), oracle_judge({}), false);
    CHECK_FALSE(to_json(rec).contains("latency_ms"));
    CHECK(to_json(rec, true).contains("latency_ms"));
}
