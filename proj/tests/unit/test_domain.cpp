// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "critickit/config.hpp"
#include "critickit/errors.hpp"
#include "critickit/io.hpp"
#include "critickit/types.hpp"
#include "support.hpp"

using namespace critickit;

namespace {

std::string tuple_line(const std::string& id, const std::string& pref = "A") {
    return R"({"id":")" + id + R"(","prompt":{"question":"Q?"},"response_a":{"text":"x"},"response_b":{"text":"y"},)" +
           R"("preference":")" + pref + "\"}";
}

} // namespace

TEST_CASE("load_tuples keeps file order") {
    testing::TempDir dir;
    const auto path = dir.write("t.jsonl", tuple_line("c") + "\n" + tuple_line("a", "B") + "\n" + tuple_line("b") + "\n");
    const auto tuples = load_tuples(path);
    REQUIRE(tuples.size() == 3);
    CHECK(tuples[0].id == "c");
    CHECK(tuples[1].id == "a");
    CHECK(tuples[1].preference == Preference::B);
    CHECK(tuples[2].id == "b");
}

TEST_CASE("load_tuples on an empty file") {
    testing::TempDir dir;
    CHECK(load_tuples(dir.write("empty.jsonl", "")).empty());
}

TEST_CASE("missing preference names line and field") {
    testing::TempDir dir;
    const auto path =
        dir.write("bad.jsonl", R"({"id":"t1","prompt":{"question":"Q?"},"response_a":{"text":"x"},"response_b":{"text":"y"}})"
                               "\n");
    try {
        load_tuples(path);
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.line() == 1);
        CHECK(e.field() == "preference");
    }
}

TEST_CASE("preference outside {A,B} is rejected at parse time") {
    testing::TempDir dir;
    for (const std::string bad : {"a", "C", "", "AB"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(load_tuples(dir.write("p.jsonl", tuple_line("t", bad) + "\n")), SchemaError);
    }
}

TEST_CASE("schema violations") {
    testing::TempDir dir;
    SUBCASE("identical responses") {
        const auto p = dir.write("s.jsonl", R"({"id":"t","prompt":{"question":"Q"},"response_a":{"text":"x"},)"
                                            R"("response_b":{"text":"x"},"preference":"A"})"
                                            "\n");
        CHECK_THROWS_AS(load_tuples(p), SchemaError);
    }
    SUBCASE("blank question") {
        const auto p = dir.write("s.jsonl", R"({"id":"t","prompt":{"question":"  "},"response_a":{"text":"x"},)"
                                            R"("response_b":{"text":"y"},"preference":"A"})"
                                            "\n");
        CHECK_THROWS_AS(load_tuples(p), SchemaError);
    }
    SUBCASE("whitespace-only response") {
        const auto p = dir.write("s.jsonl", R"({"id":"t","prompt":{"question":"Q"},"response_a":{"text":" \n"},)"
                                            R"("response_b":{"text":"y"},"preference":"A"})"
                                            "\n");
        CHECK_THROWS_AS(load_tuples(p), SchemaError);
    }
    SUBCASE("token_length disagreeing with the text") {
        const auto p = dir.write("s.jsonl", R"({"id":"t","prompt":{"question":"Q"},"response_a":{"text":"x y","token_length":3},)"
                                            R"("response_b":{"text":"y"},"preference":"A"})"
                                            "\n");
        CHECK_THROWS_AS(load_tuples(p), SchemaError);
    }
    SUBCASE("duplicate ids") {
        const auto p = dir.write("s.jsonl", tuple_line("t") + "\n" + tuple_line("t") + "\n");
        try {
            load_tuples(p);
            FAIL("expected a schema error");
        } catch (const SchemaError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("invalid JSON reports its line") {
        const auto p = dir.write("s.jsonl", tuple_line("t") + "\n\n{not json\n");
        try {
            load_tuples(p);
            FAIL("expected a schema error");
        } catch (const SchemaError& e) {
            CHECK(e.line() == 3);
        }
    }
}

TEST_CASE("missing file is an IO error carrying the path") {
    try {
        load_tuples("/nonexistent/tuples.jsonl");
        FAIL("expected an IO error");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/tuples.jsonl") != std::string::npos);
    }
}

TEST_CASE("token length counts whitespace-separated tokens") {
    CHECK(count_tokens("") == 0);
    CHECK(count_tokens("  \t\n") == 0);
    CHECK(count_tokens("one") == 1);
    CHECK(count_tokens("  one two\tthree\nfour ") == 4);
    CHECK(CandidateResponse("a b c").token_length() == 3);
    CHECK_THROWS_AS(CandidateResponse("   "), ConfigError);
}

TEST_CASE("QAItem validation") {
    testing::TempDir dir;
    const auto ok = dir.write(
        "q.jsonl", R"({"id":"q1","prompt":{"question":"Q"},"gold_answer":"C","answer_kind":"multiple_choice"})"
                   "\n"
                   R"({"id":"q2","prompt":{"question":"Q"},"gold_answer":"a ball"})"
                   "\n");
    const auto items = load_qa_items(ok);
    REQUIRE(items.size() == 2);
    CHECK(items[0].answer_kind == AnswerKind::multiple_choice);
    CHECK(items[1].answer_kind == AnswerKind::free_text);

    const auto bad = dir.write(
        "b.jsonl", R"({"id":"q1","prompt":{"question":"Q"},"gold_answer":"G","answer_kind":"multiple_choice"})"
                   "\n");
    CHECK_THROWS_AS(load_qa_items(bad), SchemaError);
}

TEST_CASE("config defaults") {
    const ResolvedConfig c = resolve_config(json::object());
    CHECK(c.weights.alpha_sp == 0.2);
    CHECK(c.weights.alpha_crit == 0.7);
    CHECK(c.weights.alpha_form == 0.1);
    CHECK(c.grpo.kl_coefficient == 0.01);
    CHECK(c.grpo.clip_epsilon == 0.2);
    CHECK(c.grpo.group_size == 8);
    CHECK(c.grpo.std_floor == 1e-8);
    CHECK(c.sampling.num_samples == 8);
    CHECK(c.endpoints.empty());

    const ValidatedConfig v = validate_config(RewardWeights{}, GrpoConfig{});
    CHECK(v.weights == RewardWeights{});
    CHECK(v.grpo == GrpoConfig{});
}

TEST_CASE("config range errors") {
    CHECK_THROWS_AS(validate_config(RewardWeights{1.5, 0.7, 0.1}, GrpoConfig{}), ConfigError);
    CHECK_THROWS_AS(validate_config(RewardWeights{0.2, -0.1, 0.1}, GrpoConfig{}), ConfigError);
    GrpoConfig g;
    g.group_size = 1;
    CHECK_THROWS_AS(validate_config(RewardWeights{}, g), ConfigError);
    g = GrpoConfig{};
    g.clip_epsilon = 0.0;
    CHECK_THROWS_AS(validate_config(RewardWeights{}, g), ConfigError);
    g = GrpoConfig{};
    g.std_floor = 0.0;
    CHECK_THROWS_AS(validate_config(RewardWeights{}, g), ConfigError);
    SamplingConfig s;
    s.num_samples = 0;
    CHECK_THROWS_AS(validate(s), ConfigError);
    CHECK_THROWS_AS(resolve_config(json{{"reward_weights", {{"alpha_sp", 1.5}}}}), ConfigError);
    CHECK_THROWS_AS(resolve_config(json{{"unknown_section", 1}}), ConfigError);
}

TEST_CASE("config file with endpoints") {
    testing::TempDir dir;
    const auto path = dir.write("c.json", R"({
        "reward_weights": {"alpha_sp": 0.3},
        "grpo": {"group_size": 4},
        "endpoints": {"judge": {"base_url": "http://localhost:8000/v1", "model_name": "m", "max_retries": 2}}
    })");
    const ResolvedConfig c = load_config(path);
    CHECK(c.weights.alpha_sp == 0.3);
    CHECK(c.weights.alpha_crit == 0.7);
    CHECK(c.grpo.group_size == 4);
    REQUIRE(c.endpoints.count("judge") == 1);
    CHECK(c.endpoints.at("judge").max_retries == 2);
    CHECK(c.endpoints.at("judge").timeout_s == 120.0);

    const auto bad_url = dir.write("u.json", R"({"endpoints": {"j": {"base_url": "localhost", "model_name": "m"}}})");
    CHECK_THROWS_AS(load_config(bad_url), ConfigError);
}

TEST_CASE("property: serialization round-trips") {
    std::mt19937_64 rng(11);
    auto word = [&](int max_words) {
        static const char* kWords[] = {"alpha", "β-ray", "ball", "{x}", "\"quoted\"", "line\nbreak", "tab\there", "7"};
        std::uniform_int_distribution<int> n(1, max_words), pick(0, 7);
        std::string s;
        const int count = n(rng);
        for (int i = 0; i < count; ++i) s += (i ? " " : "") + std::string(kWords[pick(rng)]);
        return s;
    };
    for (int i = 0; i < 200; ++i) {
        Prompt prompt{word(6), {}, std::nullopt};
        if (rng() % 2) prompt.media = {"file:///v/" + std::to_string(i) + ".mp4", "https://x/img.png"};
        if (rng() % 2) prompt.subset_tag = "subset" + std::to_string(rng() % 3);
        std::string a = word(8), b = word(8);
        if (a == b) b += " extra";
        std::optional<std::string> source;
        if (rng() % 2) source = "model-" + std::to_string(rng() % 5);
        PreferenceTuple t{"id" + std::to_string(i), prompt, CandidateResponse(a, source), CandidateResponse(b),
                          rng() % 2 ? std::optional<std::string>("D") : std::nullopt,
                          rng() % 2 ? Preference::A : Preference::B};
        CHECK(tuple_from_json(json::parse(dump_compact(to_json(t))), 1) == t);

        QAItem q{"q" + std::to_string(i), prompt, rng() % 2 ? "B" : word(3), AnswerKind::free_text};
        q.answer_kind = infer_answer_kind(q.gold_answer);
        CHECK(qa_item_from_json(json::parse(dump_compact(to_json(q))), 1) == q);

        RewardWeights w{static_cast<double>(rng() % 11) / 10.0, 0.5, 0.25};
        GrpoConfig g;
        g.group_size = 2 + rng() % 10;
        const ResolvedConfig rc = resolve_config(json{{"reward_weights", to_json(w)}, {"grpo", to_json(g)}});
        CHECK(rc.weights == w);
        CHECK(rc.grpo == g);
        CHECK(to_json(resolve_config(to_json(rc))) == to_json(rc));
    }
}

TEST_CASE("relabeled swaps responses and preference") {
    const auto t = testing::make_pref_tuple("t", "x", "y", Preference::A, "s");
    const auto r = relabeled(t);
    CHECK(r.response_a.text() == "y");
    CHECK(r.response_b.text() == "x");
    CHECK(r.preference == Preference::B);
    CHECK(r.preferred() == t.preferred());
    CHECK(relabeled(r) == t);
}
