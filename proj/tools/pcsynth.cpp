// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: parameter synthesis queries (reach, mincost) and
// concrete run replay (simulate) over the textual net format.
//
// Exit codes: 0 complete with a nonempty answer, 3 class budget exhausted,
// 4 complete but no valuation satisfies the query, 2 usage or parse errors,
// 1 runtime guards (marking cap, unbounded cost, geometry limits).
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcsynth/concrete.hpp"
#include "pcsynth/model_format.hpp"
#include "pcsynth/query_text.hpp"
#include "pcsynth/result_io.hpp"
#include "pcsynth/synthesis.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kGuard = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;
constexpr int kEmpty = 4;

struct CommonArgs {
    std::string model_path;
    std::string goal_text;
    bool integer = false;
    std::string param_bounds;
    std::string order = "bfs";
    unsigned long max_classes = 10000;
    unsigned long marking_cap = 4096;
    bool allow_negative_costs = false;
    std::string format = "human";
    bool verbose = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_goal) {
    cmd->add_option("model", args.model_path, "model file")->required();
    if (with_goal) {
        cmd->add_option("--goal", args.goal_text,
                        "goal predicate, e.g. \"p2 >= 1\" (and/or, ==, >=, <=)")
            ->required();
        cmd->add_flag("--integer", args.integer,
                      "restrict parameters to integers (guarantees termination)");
        cmd->add_option("--param-bounds", args.param_bounds,
                        "integer ranges per parameter, e.g. a=0..10 (required with --integer)");
        cmd->add_option("--order", args.order, "exploration order: bfs or dfs")
            ->check(CLI::IsMember({"bfs", "dfs"}));
        cmd->add_option("--max-classes", args.max_classes, "state class budget");
        cmd->add_option("--marking-cap", args.marking_cap, "max tokens per place");
        cmd->add_flag("--assert-cost-lower-bounded", args.allow_negative_costs,
                      "explore nets with negative costs anyway");
        cmd->add_option("--format", args.format, "output format: human or json")
            ->check(CLI::IsMember({"human", "json"}));
        cmd->add_flag("--verbose", args.verbose, "progress diagnostics on stderr");
    }
}

int load_model(const CommonArgs& args, pcsynth::PcTPN& net) {
    std::ifstream in(args.model_path);
    if (!in) {
        std::cerr << "error: cannot open model file '" << args.model_path << "'\n";
        return kUsage;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    auto parsed = pcsynth::parse_model(buffer.str());
    for (const auto& d : parsed.diagnostics)
        std::cerr << args.model_path << ": " << pcsynth::format_diagnostic(d) << "\n";
    if (!parsed.ok()) return kUsage;
    net = std::move(*parsed.net);
    return kOk;
}

int build_config(const CommonArgs& args, const pcsynth::PcTPN& net,
                 pcsynth::ExplorationConfig& cfg) {
    cfg.integer = args.integer;
    cfg.order = args.order == "dfs" ? pcsynth::SearchOrder::DepthFirst
                                    : pcsynth::SearchOrder::BreadthFirst;
    cfg.max_classes = args.max_classes;
    cfg.marking_cap = args.marking_cap;
    cfg.assert_cost_lower_bounded = args.allow_negative_costs;
    if (args.verbose) cfg.diagnostics = &std::cerr;
    if (args.integer) {
        if (args.param_bounds.empty() && !net.params.empty()) {
            std::cerr << "error: --integer needs --param-bounds for every parameter\n";
            return kUsage;
        }
        cfg.param_box = pcsynth::parse_param_bounds(args.param_bounds, net);
    }
    return kOk;
}

int finish(const pcsynth::ResultDocument& doc, const CommonArgs& args) {
    auto format = args.format == "json" ? pcsynth::ResultFormat::Structured
                                        : pcsynth::ResultFormat::Human;
    std::cout << pcsynth::render_result(doc, format);
    if (doc.status == pcsynth::SearchStatus::BudgetExhausted) return kBudget;
    bool any = false;
    for (const auto& region : pcsynth::document_regions(doc)) any = any || !region.is_empty();
    return any ? kOk : kEmpty;
}

int run_reach(const CommonArgs& args, const std::string& cost_max) {
    pcsynth::PcTPN net;
    if (int rc = load_model(args, net); rc != kOk) return rc;
    auto bound = pcsynth::rat_from_string(cost_max);
    if (!bound || *bound < 0) {
        std::cerr << "error: --cost-max '" << cost_max << "' is not a nonnegative rational\n";
        return kUsage;
    }
    auto goal = pcsynth::parse_goal(args.goal_text, net);
    pcsynth::ExplorationConfig cfg;
    if (int rc = build_config(args, net, cfg); rc != kOk) return rc;
    auto result = args.integer ? pcsynth::int_bounded_synth(net, goal, *bound, cfg)
                               : pcsynth::bounded_synth(net, goal, *bound, cfg);
    return finish(pcsynth::make_document(net, goal.text, result), args);
}

int run_mincost(const CommonArgs& args) {
    pcsynth::PcTPN net;
    if (int rc = load_model(args, net); rc != kOk) return rc;
    auto goal = pcsynth::parse_goal(args.goal_text, net);
    pcsynth::ExplorationConfig cfg;
    if (int rc = build_config(args, net, cfg); rc != kOk) return rc;
    auto result = args.integer ? pcsynth::int_inf_synth(net, goal, cfg)
                               : pcsynth::inf_synth(net, goal, cfg);
    return finish(pcsynth::make_document(net, goal.text, result), args);
}

std::string show_marking(const pcsynth::PcTPN& net, const pcsynth::Marking& m) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << ", ";
        os << net.places[i] << ":" << m[i];
        first = false;
    }
    os << "}";
    return os.str();
}

int run_simulate(const CommonArgs& args, const std::string& valuation_text,
                 const std::string& word_text) {
    pcsynth::PcTPN net;
    if (int rc = load_model(args, net); rc != kOk) return rc;
    auto valuation = pcsynth::parse_valuation(valuation_text, net);
    auto word = pcsynth::parse_timed_word(word_text);
    if (!word) {
        std::cerr << "error: malformed timed word '" << word_text << "'\n";
        return kUsage;
    }
    auto state = pcsynth::initial_state(net, valuation);
    std::cout << "initial marking: " << show_marking(net, state.marking)
              << ", cost: " << pcsynth::rat_to_string(state.cost) << "\n";
    for (const auto& step : *word) {
        auto it = net.transition_index(step.transition);
        if (!it) {
            std::cerr << "error: unknown transition '" << step.transition << "'\n";
            return kUsage;
        }
        state = pcsynth::fire(net, pcsynth::delay(net, state, step.delay), *it);
        std::cout << "after " << step.transition << "@" << pcsynth::rat_to_string(step.delay)
                  << ": marking " << show_marking(net, state.marking)
                  << ", cost: " << pcsynth::rat_to_string(state.cost) << "\n";
    }
    std::cout << "final marking: " << show_marking(net, state.marking) << "\n";
    std::cout << "total cost: " << pcsynth::rat_to_string(state.cost) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parameter synthesis for time Petri nets with parametric intervals and costs"};
    app.require_subcommand(1);

    CommonArgs reach_args, mincost_args, sim_args;
    std::string cost_max, valuation_text, word_text;

    auto* reach = app.add_subcommand(
        "reach", "valuations reaching the goal within a cost bound");
    add_common(reach, reach_args, true);
    reach->add_option("--cost-max", cost_max, "cost bound (exact rational)")->required();

    auto* mincost = app.add_subcommand(
        "mincost", "minimum goal cost and the valuations attaining it");
    add_common(mincost, mincost_args, true);

    auto* simulate = app.add_subcommand("simulate", "replay a timed word under a valuation");
    add_common(simulate, sim_args, false);
    simulate->add_option("--valuation", valuation_text, "parameter values, e.g. a=2")
        ->required();
    simulate->add_option("--word", word_text, "timed word, e.g. \"t0@2 t1@0.2\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (reach->parsed()) return run_reach(reach_args, cost_max);
        if (mincost->parsed()) return run_mincost(mincost_args);
        return run_simulate(sim_args, valuation_text, word_text);
    } catch (const pcsynth::QueryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kGuard;
    }
}
