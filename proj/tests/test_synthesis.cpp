// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "pcsynth/concrete.hpp"
#include "pcsynth/synthesis.hpp"

using namespace pcsynth;
using namespace pcsynth::testing;

namespace {

ExplorationConfig continuous_cfg(unsigned long budget = 10000) {
    ExplorationConfig cfg;
    cfg.max_classes = budget;
    return cfg;
}

ExplorationConfig integer_cfg(long lo, long hi, unsigned long budget = 10000) {
    ExplorationConfig cfg;
    cfg.integer = true;
    cfg.param_box = {{"a", {lo, hi}}};
    cfg.max_classes = budget;
    return cfg;
}

bool covers(const std::vector<Polyhedron>& members, const Rat& a) {
    for (const auto& m : members)
        if (m.contains_point({{kA, a}})) return true;
    return false;
}

std::set<long> integer_points(const std::vector<Polyhedron>& members, long lo, long hi) {
    std::set<long> out;
    for (long v = lo; v <= hi; ++v)
        if (covers(members, make_rat(v))) out.insert(v);
    return out;
}

std::set<long> expected_range(long lo, long hi) {
    std::set<long> out;
    for (long v = lo; v <= hi; ++v) out.insert(v);
    return out;
}

// Single transition p0 -> p1 with interval [1,2]; exploration is finite.
PcTPN one_shot_net() {
    PcTPN net;
    net.name = "one-shot";
    net.places = {"p0", "p1"};
    net.initial = {1, 0};
    net.rate_coeffs = {1, 0};
    Transition t0;
    t0.id = "t0";
    t0.pre = {1, 0};
    t0.post = {0, 1};
    t0.interval = {ParamBound::constant(1), ParamBound::constant(2)};
    t0.discrete_cost = 1;
    net.transitions = {t0};
    return net;
}

// Every firing adds a token, so markings grow without bound.
PcTPN growing_net() {
    PcTPN net;
    net.name = "grower";
    net.places = {"p0"};
    net.initial = {1};
    net.rate_coeffs = {0};
    Transition t0;
    t0.id = "t0";
    t0.pre = {1};
    t0.post = {2};
    t0.interval = {ParamBound::constant(1), ParamBound::constant(1)};
    t0.discrete_cost = 0;
    net.transitions = {t0};
    return net;
}

GoalPredicate place_at_least(size_t place, unsigned long n, const std::string& text) {
    GoalPredicate g;
    g.disjuncts = {{GoalAtom{place, GoalAtom::Op::Ge, n}}};
    g.text = text;
    return g;
}

}  // namespace

TEST_CASE("integer bounded synthesis on the loop net") {
    auto net = make_loop_net();
    auto goal = goal_p2_marked();

    SUBCASE("cost bound 5 is unreachable for every integer parameter") {
        auto res = int_bounded_synth(net, goal, make_rat(5), integer_cfg(0, 10));
        CHECK(res.status == SearchStatus::Complete);
        CHECK(res.params.empty());
        CHECK(res.stats.goal_hits == 0);
        CHECK(res.stats.subsumed > 0);
    }

    SUBCASE("cost bound 6 selects parameters 2 through 10") {
        auto res = int_bounded_synth(net, goal, make_rat(6), integer_cfg(0, 10));
        CHECK(res.status == SearchStatus::Complete);
        CHECK(integer_points(res.params, 0, 12) == expected_range(2, 10));
    }

    SUBCASE("cost bound 8 also admits parameter 1") {
        auto res = int_bounded_synth(net, goal, make_rat(8), integer_cfg(0, 10));
        CHECK(res.status == SearchStatus::Complete);
        CHECK(integer_points(res.params, 0, 12) == expected_range(1, 10));
        CHECK(!res.goal_records.empty());
        CHECK(res.cost_bound == make_rat(8));
    }

    SUBCASE("results grow with the cost bound") {
        auto r5 = int_bounded_synth(net, goal, make_rat(5), integer_cfg(0, 10));
        auto r6 = int_bounded_synth(net, goal, make_rat(6), integer_cfg(0, 10));
        auto r8 = int_bounded_synth(net, goal, make_rat(8), integer_cfg(0, 10));
        auto p5 = integer_points(r5.params, 0, 10);
        auto p6 = integer_points(r6.params, 0, 10);
        auto p8 = integer_points(r8.params, 0, 10);
        CHECK(std::includes(p6.begin(), p6.end(), p5.begin(), p5.end()));
        CHECK(std::includes(p8.begin(), p8.end(), p6.begin(), p6.end()));
    }

    SUBCASE("breadth-first and depth-first agree") {
        auto cfg_dfs = integer_cfg(0, 10);
        cfg_dfs.order = SearchOrder::DepthFirst;
        auto bfs = int_bounded_synth(net, goal, make_rat(8), integer_cfg(0, 10));
        auto dfs = int_bounded_synth(net, goal, make_rat(8), cfg_dfs);
        CHECK(bfs.status == SearchStatus::Complete);
        CHECK(dfs.status == SearchStatus::Complete);
        CHECK(integer_points(bfs.params, 0, 12) == integer_points(dfs.params, 0, 12));
    }
}

TEST_CASE("integer minimum-cost synthesis on the loop net") {
    auto net = make_loop_net();
    auto goal = goal_p2_marked();

    SUBCASE("box 0..10 minimizes at 6 over parameters 2 through 10") {
        auto res = int_inf_synth(net, goal, integer_cfg(0, 10));
        CHECK(res.status == SearchStatus::Complete);
        REQUIRE(res.cost.has_value());
        CHECK(*res.cost == make_rat(6));
        CHECK(integer_points(res.params, 0, 12) == expected_range(2, 10));
        REQUIRE(res.witness.has_value());
        CHECK(*res.witness == std::vector<size_t>{1});
    }

    SUBCASE("box 0..1 forces one loop first: minimum 8 at parameter 1") {
        auto res = int_inf_synth(net, goal, integer_cfg(0, 1));
        CHECK(res.status == SearchStatus::Complete);
        REQUIRE(res.cost.has_value());
        CHECK(*res.cost == make_rat(8));
        CHECK(covers(res.params, make_rat(1)));
        CHECK(!covers(res.params, make_rat(0)));
        REQUIRE(res.witness.has_value());
        CHECK(*res.witness == std::vector<size_t>{0, 1});
    }
}

TEST_CASE("continuous synthesis runs to its class budget on the loop net") {
    auto net = make_loop_net();
    auto goal = goal_p2_marked();

    SUBCASE("bounded cost 8 covers the known valuations before exhausting") {
        auto res = bounded_synth(net, goal, make_rat(8), continuous_cfg(200));
        CHECK(res.status == SearchStatus::BudgetExhausted);
        CHECK(covers(res.params, make_rat(1)));
        CHECK(covers(res.params, make_rat(2)));
        CHECK(covers(res.params, make_rat(7)));
        CHECK(covers(res.params, make_rat(3, 2)));
        CHECK(!covers(res.params, make_rat(1, 2)));
        CHECK(!covers(res.params, make_rat(0)));
    }

    SUBCASE("minimum cost is 6 exactly on parameters at least 2") {
        auto res = inf_synth(net, goal, continuous_cfg(300));
        CHECK(res.status == SearchStatus::BudgetExhausted);
        REQUIRE(res.cost.has_value());
        CHECK(*res.cost == make_rat(6));
        REQUIRE(res.params.size() == 1);
        auto expected = Polyhedron::from_constraints(
            VariableSpace({kA}),
            {Constraint::ge(LinearExpr::of(kA), LinearExpr::of(make_rat(2)))});
        CHECK(res.params.front().equals(expected));
        REQUIRE(res.witness.has_value());
        CHECK(*res.witness == std::vector<size_t>{1});
    }
}

TEST_CASE("goals satisfied by the initial marking cost nothing") {
    auto net = make_loop_net();
    auto goal = place_at_least(0, 1, "p0 >= 1");

    auto res = inf_synth(net, goal, continuous_cfg(50));
    REQUIRE(res.cost.has_value());
    CHECK(*res.cost == make_rat(0));
    CHECK(covers(res.params, make_rat(0)));
    CHECK(covers(res.params, make_rat(5)));
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->empty());

    auto word = explore_trace(net, res, {{"a", make_rat(0)}});
    CHECK(word.empty());
}

TEST_CASE("unreachable goals give empty complete answers") {
    auto net = make_loop_net();
    auto goal = place_at_least(2, 5, "p2 >= 5");

    SUBCASE("integer mode terminates by subsumption") {
        auto bounded = int_bounded_synth(net, goal, make_rat(100), integer_cfg(0, 10));
        CHECK(bounded.status == SearchStatus::Complete);
        CHECK(bounded.params.empty());

        auto opt = int_inf_synth(net, goal, integer_cfg(0, 10));
        CHECK(opt.status == SearchStatus::Complete);
        CHECK(!opt.cost.has_value());
        CHECK(opt.params.empty());
        CHECK(!opt.witness.has_value());
        CHECK_THROWS_AS(explore_trace(net, opt, {{"a", make_rat(2)}}), SynthesisError);
    }

    SUBCASE("a finite net terminates in the continuous semantics too") {
        auto small = one_shot_net();
        auto res = bounded_synth(small, place_at_least(0, 2, "p0 >= 2"), make_rat(100),
                                 continuous_cfg());
        CHECK(res.status == SearchStatus::Complete);
        CHECK(res.params.empty());
        CHECK(res.stats.explored == 2);
    }
}

TEST_CASE("parameter-free synthesis works end to end") {
    auto net = one_shot_net();
    auto goal = place_at_least(1, 1, "p1 >= 1");

    auto res = inf_synth(net, goal, continuous_cfg());
    CHECK(res.status == SearchStatus::Complete);
    REQUIRE(res.cost.has_value());
    CHECK(*res.cost == make_rat(2));  // wait at rate 1 for at least 1, plus cost 1
    REQUIRE(res.params.size() == 1);
    CHECK(res.params.front().space().size() == 0);
    CHECK(!res.params.front().is_empty());

    auto word = explore_trace(net, res, {});
    REQUIRE(word.size() == 1);
    auto end = replay(net, {}, word);
    CHECK(end.cost == make_rat(2));
}

TEST_CASE("synthesis agrees with the concrete oracle on integer valuations") {
    auto net = make_loop_net();
    auto goal = goal_p2_marked();
    for (long bound : {5L, 6L, 8L}) {
        auto res = int_bounded_synth(net, goal, make_rat(bound), integer_cfg(0, 3));
        REQUIRE(res.status == SearchStatus::Complete);
        for (long a = 0; a <= 3; ++a) {
            auto best = oracle_min_cost(net, {{"a", make_rat(a)}}, goal, 8);
            bool oracle_in = best.has_value() && *best <= make_rat(bound);
            CHECK_MESSAGE(covers(res.params, make_rat(a)) == oracle_in,
                          "bound ", bound, " parameter ", a);
        }
    }
}

TEST_CASE("witness traces replay to the promised cost") {
    auto net = make_loop_net();
    auto goal = goal_p2_marked();

    SUBCASE("a minimum-cost trace at parameter 2") {
        auto res = int_inf_synth(net, goal, integer_cfg(0, 10));
        ParamValuation v{{"a", make_rat(2)}};
        auto word = explore_trace(net, res, v);
        auto end = replay(net, v, word);
        CHECK(end.cost == make_rat(6));
        CHECK(goal.holds(end.marking));
        CHECK(format_timed_word(word) == "t1@2");
    }

    SUBCASE("large parameters still realize the minimum") {
        auto res = int_inf_synth(net, goal, integer_cfg(0, 10));
        ParamValuation v{{"a", make_rat(7)}};
        auto word = explore_trace(net, res, v);
        auto end = replay(net, v, word);
        CHECK(end.cost == make_rat(6));
        CHECK(goal.holds(end.marking));
    }

    SUBCASE("a bounded-cost trace at parameter 1 takes the loop once") {
        auto res = int_bounded_synth(net, goal, make_rat(8), integer_cfg(0, 10));
        ParamValuation v{{"a", make_rat(1)}};
        auto word = explore_trace(net, res, v);
        auto end = replay(net, v, word);
        CHECK(end.cost <= make_rat(8));
        CHECK(goal.holds(end.marking));
        CHECK(format_timed_word(word) == "t0@1 t1@1");
    }

    SUBCASE("valuations outside the answer are rejected") {
        auto res = int_bounded_synth(net, goal, make_rat(8), integer_cfg(0, 10));
        CHECK_THROWS_AS(explore_trace(net, res, {{"a", make_rat(0)}}), SynthesisError);
    }
}

TEST_CASE("exploration guards") {
    auto net = make_loop_net();
    auto goal = goal_p2_marked();

    SUBCASE("entry points check the semantics they implement") {
        auto cfg = integer_cfg(0, 10);
        CHECK_THROWS_AS(bounded_synth(net, goal, make_rat(5), cfg), SynthesisError);
        CHECK_THROWS_AS(inf_synth(net, goal, cfg), SynthesisError);
    }

    SUBCASE("integer mode requires a box for every parameter") {
        ExplorationConfig cfg;
        cfg.integer = true;
        CHECK_THROWS_AS(int_bounded_synth(net, goal, make_rat(5), cfg), SynthesisError);
    }

    SUBCASE("a zero class budget is rejected") {
        auto cfg = continuous_cfg(0);
        CHECK_THROWS_AS(bounded_synth(net, goal, make_rat(5), cfg), SynthesisError);
    }

    SUBCASE("a tiny class budget reports exhaustion, not an answer") {
        auto res = bounded_synth(net, goal, make_rat(8), continuous_cfg(1));
        CHECK(res.status == SearchStatus::BudgetExhausted);
        CHECK(res.params.empty());
        CHECK(res.stats.explored == 1);
    }

    SUBCASE("negative costs need an explicit assertion") {
        auto bad = net;
        bad.transitions[0].discrete_cost = -1;
        CHECK_THROWS_AS(bounded_synth(bad, goal, make_rat(8), continuous_cfg(30)),
                        SynthesisError);
        auto cfg = continuous_cfg(30);
        cfg.assert_cost_lower_bounded = true;
        auto res = bounded_synth(bad, goal, make_rat(8), cfg);
        CHECK(res.status == SearchStatus::BudgetExhausted);
    }

    SUBCASE("growing markings hit the marking cap") {
        auto grower = growing_net();
        auto cfg = continuous_cfg();
        cfg.marking_cap = 8;
        CHECK_THROWS_AS(
            bounded_synth(grower, place_at_least(0, 50, "p0 >= 50"), make_rat(100), cfg),
            MarkingCapExceeded);
    }

    SUBCASE("diagnostics go to the configured stream") {
        std::ostringstream diag;
        auto cfg = integer_cfg(0, 10);
        cfg.diagnostics = &diag;
        int_inf_synth(net, goal, cfg);
        CHECK(diag.str().find("done: explored") != std::string::npos);
        CHECK(diag.str().find("improved cost bound to 6") != std::string::npos);
    }
}
