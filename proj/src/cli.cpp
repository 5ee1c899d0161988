// SPDX-License-Identifier: Apache-2.0

#include "critickit/cli.hpp"

#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>

#include "critickit/config.hpp"
#include "critickit/errors.hpp"
#include "critickit/gateway.hpp"
#include "critickit/grpo.hpp"
#include "critickit/harness.hpp"
#include "critickit/io.hpp"
#include "critickit/judge.hpp"
#include "critickit/manifest.hpp"
#include "critickit/pairs.hpp"
#include "critickit/reward.hpp"
#include "critickit/tournament.hpp"
#include "critickit/trace.hpp"
#include "json_fields.hpp"

namespace critickit::cli {

namespace {

struct Options {
    std::string config_path;
    std::string manifest_path;

    struct {
        std::string tuples, endpoint, oracle, report, records;
        bool swap_both_orders = false, strict = false, record_latency = false;
        std::size_t parallelism = 1;
    } eval;

    struct {
        std::string traces, tuples, out;
        std::optional<double> alpha_sp, alpha_crit, alpha_form;
    } score;

    struct {
        std::string scored, out, skipped, verifier_endpoint;
        double length_ratio_max = 2.0;
        std::uint64_t seed = 0;
    } build_pairs;

    struct {
        std::string responses, endpoint, oracle, out;
        std::size_t parallelism = 1;
        bool strict = false;
    } dpo;

    struct {
        std::string prompts, policy_endpoint, judge_endpoint, oracle, log;
        std::optional<std::size_t> n;
        std::optional<double> temperature;
        bool swap_slots = false, compare_majority = false, strict = false;
    } bon;

    struct {
        std::size_t steps = 500, group_size = 8, outcomes = 5, rewarded_outcome = 0;
        std::uint64_t seed = 0;
        double learning_rate = 0.5, clip_epsilon = 0.2, kl_coefficient = 0.01;
        std::string out;
    } grpo;
};

/// Everything a subcommand needs besides its own options.
struct Context {
    const Options& opts;
    ResolvedConfig config;
    RunManifest manifest;
    nlohmann::json options_json;
    std::istream& in;
    std::ostream& out;
    std::ostream& err;

    void add_input(const std::string& path) { manifest.input_digests[path] = file_sha256(path); }
};

struct Registered {
    CLI::App* eval;
    CLI::App* score;
    CLI::App* build_pairs;
    CLI::App* dpo_pairs;
    CLI::App* bon;
    CLI::App* grpo_demo;
    CLI::App* parse_trace;
};

Registered register_commands(CLI::App& app, Options& o) {
    app.require_subcommand(1);
    app.add_option("--config", o.config_path, "JSON config with reward_weights, grpo, sampling and endpoints");
    app.add_option("--manifest", o.manifest_path, "Where to write the run manifest (default: next to the main output)");

    Registered r{};
    r.eval = app.add_subcommand("eval", "Evaluate a pairwise judge on preference tuples");
    r.eval->add_option("--tuples", o.eval.tuples, "Preference tuples (JSON lines)")->required();
    auto* ep = r.eval->add_option("--endpoint", o.eval.endpoint, "Judge endpoint name from the config, or a URL");
    auto* orc = r.eval->add_option("--oracle", o.eval.oracle,
                                   "Local oracle judge: always_first | prefer_longer | prefer_lexicographic | "
                                   "keyword_match:<gold>");
    ep->excludes(orc);
    r.eval->add_flag("--swap-both-orders", o.eval.swap_both_orders, "Judge every tuple in both response orders");
    r.eval->add_flag("--strict", o.eval.strict, "Abort on the first judge transport failure");
    r.eval->add_option("--parallelism", o.eval.parallelism, "Concurrent judge calls")->check(CLI::PositiveNumber);
    r.eval->add_option("--report", o.eval.report, "Output report (JSON)")->required();
    r.eval->add_option("--records", o.eval.records, "Per-item records (JSON lines; default <report>.records.jsonl)");
    r.eval->add_flag("--record-latency", o.eval.record_latency, "Include judge latency in records (not reproducible)");

    r.score = app.add_subcommand("score", "Compute stage-2 rewards for critic outputs");
    r.score->add_option("--traces", o.score.traces, "Critic outputs (JSON lines: tuple_id, raw)")->required();
    r.score->add_option("--tuples", o.score.tuples, "Preference tuples (JSON lines)")->required();
    r.score->add_option("--out", o.score.out, "Output reward lines (default: stdout)");
    r.score->add_option("--alpha-sp", o.score.alpha_sp, "Override the self-prediction weight");
    r.score->add_option("--alpha-crit", o.score.alpha_crit, "Override the critic weight");
    r.score->add_option("--alpha-form", o.score.alpha_form, "Override the format weight");

    r.build_pairs = app.add_subcommand("build-pairs", "Build preference tuples from verified responses");
    r.build_pairs->add_option("--scored", o.build_pairs.scored, "Scored responses (JSON lines)")->required();
    r.build_pairs->add_option("--out", o.build_pairs.out, "Output tuples (JSON lines)")->required();
    r.build_pairs->add_option("--length-ratio-max", o.build_pairs.length_ratio_max,
                              "Maximum token-length ratio inside a pair");
    r.build_pairs->add_option("--seed", o.build_pairs.seed, "Seed for slot assignment");
    r.build_pairs->add_option("--skipped", o.build_pairs.skipped, "Write skipped groups with reasons (JSON lines)");
    r.build_pairs->add_option("--verifier-endpoint", o.build_pairs.verifier_endpoint,
                              "Endpoint that labels unlabeled responses (falls back to the deterministic matcher)");

    r.dpo_pairs = app.add_subcommand("dpo-pairs", "Extract best/worst DPO pairs from all ordered comparisons");
    r.dpo_pairs->add_option("--responses", o.dpo.responses, "Sampled responses (JSON lines)")->required();
    auto* dep = r.dpo_pairs->add_option("--endpoint", o.dpo.endpoint, "Judge endpoint name or URL");
    auto* dor = r.dpo_pairs->add_option("--oracle", o.dpo.oracle, "Local oracle judge");
    dep->excludes(dor);
    r.dpo_pairs->add_option("--out", o.dpo.out, "Output DPO pairs (JSON lines)")->required();
    r.dpo_pairs->add_option("--parallelism", o.dpo.parallelism, "Concurrent judge calls")->check(CLI::PositiveNumber);
    r.dpo_pairs->add_flag("--strict", o.dpo.strict, "Abort on the first judge transport failure");

    r.bon = app.add_subcommand("bon", "Best-of-N selection by pairwise knockout");
    r.bon->add_option("--prompts", o.bon.prompts, "Prompts (JSON lines), optionally with inline candidates")->required();
    r.bon->add_option("--policy-endpoint", o.bon.policy_endpoint, "Endpoint that samples candidates");
    auto* bj = r.bon->add_option("--judge-endpoint", o.bon.judge_endpoint, "Judge endpoint name or URL");
    auto* bo = r.bon->add_option("--oracle", o.bon.oracle, "Local oracle judge");
    bj->excludes(bo);
    r.bon->add_option("--n", o.bon.n, "Candidates per prompt")->check(CLI::PositiveNumber);
    r.bon->add_option("--temperature", o.bon.temperature, "Policy sampling temperature");
    r.bon->add_flag("--swap-slots", o.bon.swap_slots, "Judge both slot orders; challenger must win both");
    r.bon->add_option("--log", o.bon.log, "Per-prompt knockout log (JSON lines)")->required();
    r.bon->add_flag("--compare-majority", o.bon.compare_majority, "Also report majority voting over final answers");
    r.bon->add_flag("--strict", o.bon.strict, "Abort on the first transport failure");

    r.grpo_demo = app.add_subcommand("grpo-demo", "Train a toy softmax policy with GRPO");
    r.grpo_demo->add_option("--steps", o.grpo.steps, "Training steps");
    r.grpo_demo->add_option("--group-size", o.grpo.group_size, "Samples per group");
    r.grpo_demo->add_option("--seed", o.grpo.seed, "Base seed");
    r.grpo_demo->add_option("--outcomes", o.grpo.outcomes, "Size of the outcome alphabet");
    r.grpo_demo->add_option("--rewarded-outcome", o.grpo.rewarded_outcome, "Outcome that earns reward 1");
    r.grpo_demo->add_option("--learning-rate", o.grpo.learning_rate, "Gradient step size");
    r.grpo_demo->add_option("--clip-epsilon", o.grpo.clip_epsilon, "Ratio clip range");
    r.grpo_demo->add_option("--kl-coefficient", o.grpo.kl_coefficient, "KL penalty weight");
    r.grpo_demo->add_option("--out", o.grpo.out, "Per-step log (JSON lines; default: stdout)");

    r.parse_trace = app.add_subcommand("parse-trace", "Parse a critic output read from standard input");
    return r;
}

// File arguments stay out of the config hash: inputs are covered by their digests, and
// output locations do not change results.
bool is_path_flag(const std::string& name) {
    static const std::set<std::string> kPaths = {"--tuples", "--report",    "--records", "--traces", "--out",
                                                 "--scored", "--skipped",   "--responses", "--prompts", "--log"};
    return kPaths.count(name) > 0;
}

nlohmann::json collect_options(const CLI::App& sub) {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help" || is_path_flag(opt->get_name())) continue;
        const auto& results = opt->results();
        j[opt->get_name()] = results.size() == 1 ? nlohmann::json(results.front()) : nlohmann::json(results);
    }
    return j;
}

Judge make_judge(Context& ctx, const std::string& endpoint, const std::string& oracle) {
    if (!oracle.empty()) return oracle_judge(parse_oracle_spec(oracle));
    if (endpoint.empty()) throw ConfigError("a judge is required: pass --oracle or an endpoint");
    return gateway_judge(std::make_shared<ChatClient>(resolve_endpoint(ctx.config, endpoint)));
}

void write_or_print(Context& ctx, const std::string& path, const std::string& contents) {
    if (path.empty()) ctx.out << contents;
    else write_file(path, contents);
}

std::uint64_t seed_of(const nlohmann::json& options, const char* key) {
    if (!options.contains(key)) return 0;
    return std::stoull(options[key].get<std::string>());
}

// ---------------------------------------------------------------------------

std::string cmd_eval(Context& ctx) {
    const auto& o = ctx.opts.eval;
    auto tuples = load_tuples(o.tuples);
    ctx.add_input(o.tuples);
    const Judge judge = make_judge(ctx, o.endpoint, o.oracle);
    EvalConfig cfg;
    cfg.swap_both_orders = o.swap_both_orders;
    cfg.strict = o.strict;
    cfg.parallelism = o.parallelism;
    Evaluation result = evaluate_benchmark(tuples, judge, cfg);

    std::vector<nlohmann::json> lines;
    lines.reserve(result.records.size());
    for (const auto& r : result.records) {
        if (r.failed) ctx.err << "judge failed on " << r.tuple_id << ": " << r.failure_reason << "\n";
        lines.push_back(to_json(r, o.record_latency));
    }
    write_file(o.report, dump_pretty(to_json(result.report)));
    write_file(o.records.empty() ? o.report + ".records.jsonl" : o.records, to_jsonl(lines));
    return o.report;
}

std::string cmd_score(Context& ctx) {
    const auto& o = ctx.opts.score;
    RewardWeights weights = ctx.config.weights;
    if (o.alpha_sp) weights.alpha_sp = *o.alpha_sp;
    if (o.alpha_crit) weights.alpha_crit = *o.alpha_crit;
    if (o.alpha_form) weights.alpha_form = *o.alpha_form;
    validate(weights);

    const auto tuples = load_tuples(o.tuples);
    ctx.add_input(o.tuples);
    std::unordered_map<std::string, const PreferenceTuple*> by_id;
    for (const auto& t : tuples) by_id.emplace(t.id, &t);

    std::vector<nlohmann::json> lines;
    for_each_jsonl(o.traces, [&](const nlohmann::json& j, std::size_t line) {
        detail::require_object(j, line, "");
        const std::string id = detail::require_string(j, "tuple_id", line, "");
        const auto it = by_id.find(id);
        if (it == by_id.end()) throw SchemaError(line, "tuple_id", "no tuple with id \"" + id + "\"");
        if (!it->second->gold_answer) throw SchemaError(line, "tuple_id", "stage-2 reward requires gold answer");
        const CriticTrace trace = parse_trace(detail::require_string(j, "raw", line, ""));
        nlohmann::json out{{"tuple_id", id}};
        out.update(to_json(total_reward(trace, *it->second, weights)));
        lines.push_back(std::move(out));
    });
    ctx.add_input(o.traces);
    write_or_print(ctx, o.out, to_jsonl(lines));
    return o.out;
}

std::string cmd_build_pairs(Context& ctx) {
    const auto& o = ctx.opts.build_pairs;
    LabelPolicy labels;
    std::shared_ptr<ChatClient> verifier_client;
    if (!o.verifier_endpoint.empty()) {
        verifier_client = std::make_shared<ChatClient>(resolve_endpoint(ctx.config, o.verifier_endpoint));
        labels.verifier_name = "gateway:" + verifier_client->config().model_name;
        labels.verifier = [&ctx, verifier_client](const Prompt& p, const std::string& response, const std::string& gold) {
            try {
                return verify_answer(*verifier_client, p.question, response, gold);
            } catch (const UnparseableReply& e) {
                ctx.err << "verifier reply unparseable, using deterministic matcher: " << e.what() << "\n";
                return verify_deterministic(response, gold);
            }
        };
    }
    const auto groups = load_response_groups(o.scored, labels);
    ctx.add_input(o.scored);
    const PairBuildResult built = build_preference_tuples(groups, o.length_ratio_max, o.seed);

    std::vector<nlohmann::json> lines;
    for (const auto& t : built.tuples) lines.push_back(to_json(t));
    write_file(o.out, to_jsonl(lines));

    std::vector<nlohmann::json> skipped;
    for (const auto& s : built.skipped) {
        ctx.err << "skipped " << s.prompt_id << ": " << s.reason << "\n";
        skipped.push_back(nlohmann::json{{"prompt_id", s.prompt_id}, {"reason", s.reason}});
    }
    if (!o.skipped.empty()) write_file(o.skipped, to_jsonl(skipped));
    return o.out;
}

std::string cmd_dpo_pairs(Context& ctx) {
    const auto& o = ctx.opts.dpo;
    LabelPolicy labels;
    labels.require_labels = false;
    const auto groups = load_response_groups(o.responses, labels);
    ctx.add_input(o.responses);
    const Judge judge = make_judge(ctx, o.endpoint, o.oracle);

    std::vector<nlohmann::json> lines;
    for (const auto& g : groups) {
        std::vector<CandidateResponse> responses;
        for (const auto& s : g.responses) responses.push_back(s.response);
        if (responses.size() < 2) {
            ctx.err << "skipped " << g.prompt_id << ": fewer than two responses\n";
            continue;
        }
        const WinMatrix wins = score_all_ordered_pairs(responses, g.prompt, judge, o.parallelism, o.strict);
        if (auto pair = extract_dpo_pair(wins.wins(), responses, g.prompt_id)) {
            lines.push_back(to_json(*pair));
        } else {
            ctx.err << "skipped " << g.prompt_id << ": all responses tied\n";
        }
    }
    write_file(o.out, to_jsonl(lines));
    return o.out;
}

struct BonItem {
    std::string id;
    Prompt prompt;
    std::optional<std::string> gold;
    AnswerKind kind = AnswerKind::free_text;
    std::vector<CandidateResponse> candidates;
};

std::vector<BonItem> load_bon_items(const std::string& path) {
    std::vector<BonItem> items;
    for_each_jsonl(path, [&](const nlohmann::json& j, std::size_t line) {
        detail::require_object(j, line, "");
        BonItem item;
        item.id = detail::require_string(j, "id", line, "");
        item.prompt = prompt_from_json(detail::require_field(j, "prompt", line, ""), line, "prompt");
        item.gold = detail::optional_string(j, "gold_answer", line, "");
        if (auto kind = detail::optional_string(j, "answer_kind", line, "")) {
            auto parsed = answer_kind_from_string(*kind);
            if (!parsed) throw SchemaError(line, "answer_kind", "must be multiple_choice or free_text");
            item.kind = *parsed;
        } else if (item.gold) {
            item.kind = infer_answer_kind(*item.gold);
        }
        if (auto it = j.find("candidates"); it != j.end() && !it->is_null()) {
            if (!it->is_array()) throw SchemaError(line, "candidates", "expected an array");
            for (const auto& c : *it) {
                if (c.is_string()) {
                    if (count_tokens(c.get<std::string>()) == 0)
                        throw SchemaError(line, "candidates", "entries must be non-empty");
                    item.candidates.emplace_back(c.get<std::string>());
                } else {
                    item.candidates.push_back(response_from_json(c, line, "candidates"));
                }
            }
        }
        items.push_back(std::move(item));
    });
    return items;
}

std::string cmd_bon(Context& ctx) {
    const auto& o = ctx.opts.bon;
    auto items = load_bon_items(o.prompts);
    ctx.add_input(o.prompts);
    const Judge judge = make_judge(ctx, o.judge_endpoint, o.oracle);

    std::shared_ptr<ChatClient> policy;
    SamplingConfig sampling = ctx.config.sampling;
    if (o.n) sampling.num_samples = *o.n;
    if (o.temperature) sampling.temperature = *o.temperature;
    validate(sampling);
    if (!o.policy_endpoint.empty())
        policy = std::make_shared<ChatClient>(resolve_endpoint(ctx.config, o.policy_endpoint));

    KnockoutOptions knockout{o.swap_slots, o.strict};
    std::vector<nlohmann::json> lines;
    std::size_t graded = 0, knockout_correct = 0, majority_correct = 0;
    for (auto& item : items) {
        std::vector<CandidateResponse> candidates = item.candidates;
        if (candidates.empty()) {
            if (!policy) throw ConfigError("prompt " + item.id + " has no candidates and no --policy-endpoint was given");
            candidates = sample_candidates(*policy, item.prompt, sampling);
        } else if (o.n) {
            if (candidates.size() < *o.n)
                throw ConfigError("prompt " + item.id + " has fewer inline candidates than --n");
            candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(*o.n), candidates.end());
        }
        const KnockoutResult result = knockout_select(item.prompt, candidates, judge, knockout);

        nlohmann::json line{{"id", item.id},
                            {"num_candidates", candidates.size()},
                            {"winner_index", result.log.final_winner},
                            {"winner", to_json(result.winner)},
                            {"log", to_json(result.log)}};
        if (item.gold) {
            ++graded;
            const int ok = verify_deterministic(result.winner.text(), *item.gold);
            knockout_correct += ok;
            line["winner_correct"] = ok;
        }
        if (o.compare_majority) {
            const auto majority = majority_answer(candidates, item.kind);
            line["majority_answer"] = majority ? nlohmann::json(*majority) : nlohmann::json();
            if (item.gold) {
                const int ok = majority && answers_match(*majority, *item.gold, item.kind) ? 1 : 0;
                majority_correct += ok;
                line["majority_correct"] = ok;
            }
        }
        lines.push_back(std::move(line));
    }
    write_file(o.log, to_jsonl(lines));

    nlohmann::json summary{{"prompts", items.size()}, {"graded", graded}};
    if (graded > 0) {
        summary["knockout_accuracy"] = static_cast<double>(knockout_correct) / static_cast<double>(graded);
        if (o.compare_majority)
            summary["majority_accuracy"] = static_cast<double>(majority_correct) / static_cast<double>(graded);
    }
    ctx.out << dump_compact(summary) << "\n";
    return o.log;
}

std::string cmd_grpo_demo(Context& ctx) {
    const auto& o = ctx.opts.grpo;
    GrpoDemoOptions demo;
    demo.num_outcomes = o.outcomes;
    demo.rewarded_outcome = o.rewarded_outcome;
    demo.steps = o.steps;
    demo.seed = o.seed;
    demo.grpo.group_size = o.group_size;
    demo.grpo.learning_rate = o.learning_rate;
    demo.grpo.clip_epsilon = o.clip_epsilon;
    demo.grpo.kl_coefficient = o.kl_coefficient;
    demo.grpo.std_floor = ctx.config.grpo.std_floor;
    const auto [steps, policy] = run_grpo_demo(demo);
    std::vector<nlohmann::json> lines;
    lines.reserve(steps.size());
    for (const auto& s : steps) lines.push_back(to_json(s));
    write_or_print(ctx, o.out, to_jsonl(lines));
    return o.out;
}

std::string cmd_parse_trace(Context& ctx) {
    std::ostringstream raw;
    raw << ctx.in.rdbuf();
    const CriticTrace trace = parse_trace(raw.str());
    nlohmann::json j = to_json(trace);
    j["format_reward"] = format_reward(trace);
    j["verdict"] = std::string(to_string(parse_verdict(trace)));
    ctx.out << dump_pretty(j);
    return {};
}

int report_error(std::ostream& err, const char* kind, const std::exception& e, int code) {
    err << "error (" << kind << "): " << e.what() << "\n";
    return code;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options opts;
    CLI::App app{"Critic toolkit: reward scoring, GRPO demo, judge evaluation, pair building, best-of-N",
                 "critickit"};
    const Registered cmds = register_commands(app, opts);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto selected = app.get_subcommands();
        err << (selected.empty() ? app.help() : selected.back()->help());
        return kConfigError;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        Context ctx{opts, {}, {}, nlohmann::json::object(), in, out, err};
        ctx.config = opts.config_path.empty() ? resolve_config(nlohmann::json::object()) : load_config(opts.config_path);
        ctx.options_json = collect_options(*sub);
        ctx.manifest.command = sub->get_name();
        ctx.manifest.started_at = utc_timestamp();
        ctx.manifest.config_hash =
            config_digest(nlohmann::json{{"config", to_json(ctx.config)}, {"command", sub->get_name()},
                                         {"options", ctx.options_json}});
        if (!opts.config_path.empty()) ctx.add_input(opts.config_path);
        ctx.manifest.seed = seed_of(ctx.options_json, "--seed");

        std::string primary_output;
        if (sub == cmds.eval) primary_output = cmd_eval(ctx);
        else if (sub == cmds.score) primary_output = cmd_score(ctx);
        else if (sub == cmds.build_pairs) primary_output = cmd_build_pairs(ctx);
        else if (sub == cmds.dpo_pairs) primary_output = cmd_dpo_pairs(ctx);
        else if (sub == cmds.bon) primary_output = cmd_bon(ctx);
        else if (sub == cmds.grpo_demo) primary_output = cmd_grpo_demo(ctx);
        else primary_output = cmd_parse_trace(ctx);

        ctx.manifest.finished_at = utc_timestamp();
        const std::string manifest = dump_pretty(to_json(ctx.manifest));
        if (!opts.manifest_path.empty()) write_file(opts.manifest_path, manifest);
        else if (!primary_output.empty()) write_file(primary_output + ".manifest.json", manifest);
        else err << dump_compact(to_json(ctx.manifest)) << "\n";
        return kOk;
    } catch (const ConfigError& e) {
        return report_error(err, "config", e, kConfigError);
    } catch (const IoError& e) {
        return report_error(err, "io", e, kIoError);
    } catch (const TransportError& e) {
        return report_error(err, "transport", e, kTransportError);
    } catch (const UnparseableReply& e) {
        return report_error(err, "transport", e, kTransportError);
    } catch (const std::exception& e) {
        return report_error(err, "internal", e, kFailure);
    }
}

std::map<std::string, std::vector<std::string>> flag_surface() {
    Options opts;
    CLI::App app{"", "critickit"};
    register_commands(app, opts);
    std::map<std::string, std::vector<std::string>> surface;
    auto collect = [](const CLI::App& a) {
        std::vector<std::string> flags;
        for (const CLI::Option* opt : a.get_options())
            for (const auto& name : opt->get_lnames()) flags.push_back("--" + name);
        return flags;
    };
    surface[""] = collect(app);
    for (const CLI::App* sub : app.get_subcommands({})) surface[sub->get_name()] = collect(*sub);
    return surface;
}

} // namespace critickit::cli
