// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "critickit/errors.hpp"
#include "critickit/pairs.hpp"
#include "support.hpp"

using namespace critickit;

namespace {

std::string words(std::size_t n, const std::string& w = "w") {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + w + std::to_string(i);
    return s;
}

ScoredResponse scored(std::string text, int correct) {
    return ScoredResponse{CandidateResponse(std::move(text)), correct, "", "test"};
}

std::vector<ResponseGroup> synthetic_corpus(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ResponseGroup> groups;
    for (std::size_t g = 0; g < n; ++g) {
        ResponseGroup group{"p" + std::to_string(g), Prompt{"Q" + std::to_string(g), {}, {}}, "C", {}};
        const std::size_t k = 2 + rng() % 7;
        for (std::size_t i = 0; i < k; ++i) {
            const int correct = static_cast<int>(rng() % 2);
            const std::string answer = correct ? "\\boxed{C}" : "\\boxed{" + std::string(1, "ABDEF"[rng() % 5]) + "}";
            group.responses.push_back(scored(words(5 + rng() % 200, "g" + std::to_string(i) + "t") + " " + answer,
                                             correct));
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

} // namespace

TEST_CASE("build_preference_tuples examples") {
    ResponseGroup ok{"p", Prompt{"Q", {}, {}}, "C", {scored(words(100, "c"), 1), scored(words(104, "i"), 0)}};
    const auto a = build_preference_tuples({ok}, 2.0, 0);
    REQUIRE(a.tuples.size() == 1);
    const auto& t = a.tuples[0];
    CHECK(t.preferred().token_length() == 100);
    CHECK((t.preference == Preference::A ? t.response_b : t.response_a).token_length() == 104);
    CHECK(a.skipped.empty());

    ResponseGroup far{"q", Prompt{"Q", {}, {}}, "C", {scored(words(30, "c"), 1), scored(words(300, "i"), 0)}};
    const auto b = build_preference_tuples({far}, 2.0, 0);
    CHECK(b.tuples.empty());
    REQUIRE(b.skipped.size() == 1);
    CHECK(b.skipped[0].prompt_id == "q");

    ResponseGroup all_right{"r", Prompt{"Q", {}, {}}, "C", {scored("x", 1), scored("y", 1)}};
    ResponseGroup all_wrong{"s", Prompt{"Q", {}, {}}, "C", {scored("x", 0), scored("y", 0)}};
    const auto c = build_preference_tuples({all_right, all_wrong}, 2.0, 0);
    CHECK(c.tuples.empty());
    REQUIRE(c.skipped.size() == 2);
    CHECK(c.skipped[0].reason == "no incorrect response");
    CHECK(c.skipped[1].reason == "no correct response");
}

TEST_CASE("closest length ratio wins") {
    ResponseGroup g{"p", Prompt{"Q", {}, {}}, "C",
                    {scored(words(10, "c"), 1), scored(words(50, "i"), 0), scored(words(12, "j"), 0),
                     scored(words(40, "d"), 1)}};
    const auto r = build_preference_tuples({g}, 2.0, 0);
    REQUIRE(r.tuples.size() == 1);
    const auto& t = r.tuples[0];
    const auto& rejected = t.preference == Preference::A ? t.response_b : t.response_a;
    CHECK(t.preferred().token_length() == 10);
    CHECK(rejected.token_length() == 12);
}

TEST_CASE("property: every tuple pairs one correct with one incorrect response") {
    const auto groups = synthetic_corpus(400, 5);
    const auto r = build_preference_tuples(groups, 2.0, 99);
    CHECK(r.tuples.size() + r.skipped.size() == groups.size());
    for (const auto& t : r.tuples) {
        const auto& rejected = t.preference == Preference::A ? t.response_b : t.response_a;
        // Re-verify with the deterministic matcher.
        CHECK(verify_deterministic(t.preferred().text(), "C") == 1);
        CHECK(verify_deterministic(rejected.text(), "C") == 0);
        const double lo = std::min(t.response_a.token_length(), t.response_b.token_length());
        const double hi = std::max(t.response_a.token_length(), t.response_b.token_length());
        CHECK(hi / lo <= 2.0);
    }
}

TEST_CASE("property: the seed moves slots, never pair membership") {
    const auto groups = synthetic_corpus(300, 8);
    const auto base = build_preference_tuples(groups, 2.0, 0);
    auto members = [](const PairBuildResult& r) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& t : r.tuples) {
            const auto& rejected = t.preference == Preference::A ? t.response_b : t.response_a;
            out.emplace_back(t.id, t.preferred().text(), rejected.text());
        }
        return out;
    };
    bool any_slot_changed = false;
    for (std::uint64_t seed = 1; seed < 6; ++seed) {
        const auto other = build_preference_tuples(groups, 2.0, seed);
        CHECK(members(other) == members(base));
        for (std::size_t i = 0; i < base.tuples.size(); ++i)
            any_slot_changed |= base.tuples[i].preference != other.tuples[i].preference;
    }
    CHECK(any_slot_changed);
    CHECK(members(build_preference_tuples(groups, 2.0, 0)) == members(base));
}

TEST_CASE("slot balance over 1000 groups") {
    const auto r = build_preference_tuples(synthetic_corpus(1000, 13), 2.0, 0);
    const auto a = std::count_if(r.tuples.begin(), r.tuples.end(), [](auto& t) { return t.preference == Preference::A; });
    const double frac = static_cast<double>(a) / r.tuples.size();
    CHECK(frac >= 0.45);
    CHECK(frac <= 0.55);
}

TEST_CASE("score_all_ordered_pairs examples") {
    const Prompt p{"Q", {}, {}};
    const std::vector<CandidateResponse> two = {CandidateResponse(std::string(10, 'x')),
                                                CandidateResponse(std::string(50, 'y'))};
    CHECK(score_all_ordered_pairs(two, p, oracle_judge(parse_oracle_spec("prefer_longer"))).wins() ==
          std::vector<int>{0, 2});

    const std::vector<CandidateResponse> three = {CandidateResponse("cherry"), CandidateResponse("apple"),
                                                  CandidateResponse("banana")};
    const auto lex = score_all_ordered_pairs(three, p, oracle_judge(parse_oracle_spec("prefer_lexicographic")));
    // apple beats both others in both orders; banana beats cherry in both orders.
    CHECK(lex.wins() == std::vector<int>{0, 4, 2});
    CHECK(lex(1, 0) == 2);
    CHECK(lex(2, 0) == 2);

    const Judge mute = [](const JudgeRequest&) { return std::string("no idea"); };
    CHECK(score_all_ordered_pairs(two, p, mute).wins() == std::vector<int>{0, 0});
    CHECK_THROWS_AS(score_all_ordered_pairs({two[0]}, p, mute), ConfigError);
}

TEST_CASE("property: transitive oracles realize their order in win counts") {
    std::mt19937_64 rng(89);
    const Prompt p{"Q", {}, {}};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<CandidateResponse> rs;
        const std::size_t n = 2 + rng() % 6;
        std::vector<std::size_t> lengths(n);
        std::iota(lengths.begin(), lengths.end(), 1);
        std::shuffle(lengths.begin(), lengths.end(), rng);
        for (auto len : lengths) rs.emplace_back(std::string(len, 'z'));
        const auto wins = score_all_ordered_pairs(rs, p, oracle_judge(parse_oracle_spec("prefer_longer")), 3).wins();
        for (std::size_t i = 0; i < n; ++i) CHECK(wins[i] == static_cast<int>(2 * (lengths[i] - 1)));
    }
}

TEST_CASE("extract_dpo_pair examples") {
    const std::vector<CandidateResponse> rs = {CandidateResponse("r0"), CandidateResponse("r1"),
                                               CandidateResponse("r2")};
    const auto a = extract_dpo_pair({4, 1, 0}, rs, "p");
    REQUIRE(a);
    CHECK(a->chosen_index == 0);
    CHECK(a->rejected_index == 2);
    CHECK(a->chosen.text() == "r0");
    CHECK_FALSE(extract_dpo_pair({2, 2, 2}, rs));
    const auto c = extract_dpo_pair({3, 3, 0}, rs);
    REQUIRE(c);
    CHECK(c->chosen_index == 0);
    CHECK(c->rejected_index == 2);
}

TEST_CASE("property: DPO pairs always have more chosen wins") {
    std::mt19937_64 rng(97);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<CandidateResponse> rs;
        std::vector<int> wins;
        for (std::size_t k = 0; k < n; ++k) {
            rs.emplace_back("r" + std::to_string(k));
            wins.push_back(static_cast<int>(rng() % 5));
        }
        if (auto pair = extract_dpo_pair(wins, rs)) {
            CHECK(pair->wins_chosen > pair->wins_rejected);
            CHECK(pair->chosen_index != pair->rejected_index);
        } else {
            CHECK(std::adjacent_find(wins.begin(), wins.end(), std::not_equal_to<>()) == wins.end());
        }
    }
}

TEST_CASE("load_response_groups labels and groups records") {
    testing::TempDir dir;
    const auto path = dir.write("r.jsonl",
                                R"({"prompt_id":"p1","prompt":{"question":"Q1"},"gold_answer":"C","response":{"text":"so \\boxed{C}"}})"
                                "\n"
                                R"({"prompt_id":"p2","prompt":{"question":"Q2"},"response":{"text":"x"},"is_correct":1})"
                                "\n"
                                R"({"prompt_id":"p1","prompt":{"question":"Q1"},"response":{"text":"<answer>b</answer>"}})"
                                "\n");
    const auto groups = load_response_groups(path);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].prompt_id == "p1");
    REQUIRE(groups[0].responses.size() == 2);
    CHECK(groups[0].responses[0].is_correct == 1);
    CHECK(groups[0].responses[0].verifier == "deterministic-matcher");
    CHECK(groups[0].responses[1].is_correct == 0);
    CHECK(groups[1].responses[0].verifier == "provided");

    LabelPolicy custom;
    custom.verifier = [](const Prompt&, const std::string&, const std::string&) { return 1; };
    custom.verifier_name = "always-yes";
    const auto relabeled = load_response_groups(path, custom);
    CHECK(relabeled[0].responses[1].is_correct == 1);
    CHECK(relabeled[0].responses[1].verifier == "always-yes");

    const auto unlabeled = dir.write("u.jsonl", R"({"prompt_id":"p","prompt":{"question":"Q"},"response":{"text":"x"}})"
                                                "\n");
    CHECK_THROWS_AS(load_response_groups(unlabeled), SchemaError);
    LabelPolicy lax;
    lax.require_labels = false;
    CHECK(load_response_groups(unlabeled, lax).size() == 1);
}

TEST_CASE("final answer extraction") {
    CHECK(final_answer_text("a \\boxed{1} b \\boxed{2}") == "2");
    CHECK(final_answer_text("<answer> B </answer>") == " B ");
    CHECK(final_answer_text("just text") == "just text");
    CHECK(verify_deterministic("Therefore \\boxed{b}.", "B") == 1);
    CHECK(verify_deterministic("Therefore \\boxed{ It Falls }", "it falls") == 1);
}
