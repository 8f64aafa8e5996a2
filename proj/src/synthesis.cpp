// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <ostream>

#include "pcsynth/simplex.hpp"

namespace pcsynth {

namespace {

std::vector<Variable> param_vars(const PcTPN& net) {
    std::vector<Variable> out;
    out.reserve(net.params.size());
    for (const auto& p : net.params) out.push_back(Variable::param(p));
    return out;
}

// Nets that can bill negatively must be explicitly acknowledged: the
// exploration has no negative-cycle detection, so an unbounded-below cost
// would otherwise surface as a confusing budget exhaustion or a cost error.
void precheck_costs(const PcTPN& net, const ExplorationConfig& cfg) {
    if (cfg.assert_cost_lower_bounded) return;
    bool negative = net.rate_constant < 0;
    for (long c : net.rate_coeffs) negative = negative || c < 0;
    for (const auto& t : net.transitions) negative = negative || t.discrete_cost < 0;
    if (negative)
        throw SynthesisError(
            "net has negative costs; set assert_cost_lower_bounded to explore anyway");
}

void check_box(const PcTPN& net, const ExplorationConfig& cfg) {
    if (cfg.max_classes == 0) throw SynthesisError("max_classes must be positive");
    if (!cfg.integer) return;
    for (const auto& p : net.params)
        if (!cfg.param_box.count(p))
            throw SynthesisError("integer mode requires bounds for parameter " + p);
}

// Keeps the union small: drops members covered by an existing one and
// existing members covered by the newcomer.
void add_param_poly(std::vector<Polyhedron>& members, Polyhedron p) {
    if (p.is_empty()) return;
    for (const auto& q : members)
        if (q.includes(p)) return;
    members.erase(std::remove_if(members.begin(), members.end(),
                                 [&](const Polyhedron& q) { return p.includes(q); }),
                  members.end());
    members.push_back(std::move(p));
}

struct Engine {
    const PcTPN& net;
    const GoalPredicate& goal;
    const ExplorationConfig& cfg;
    bool optimize;
    std::optional<Rat> cmax;  // bounded mode only

    std::vector<Polyhedron> params;
    std::vector<GoalRecord> records;
    std::optional<Rat> best;
    std::optional<std::vector<size_t>> witness;
    SynthesisStats stats;
    SearchStatus status = SearchStatus::Complete;

    struct Node {
        StateClass cls;
        std::vector<size_t> seq;
    };
    std::deque<Node> waiting;
    struct PassedEntry {
        Marking marking;
        Polyhedron relaxed;  // cost-relaxed effective domain
    };
    std::vector<PassedEntry> passed;

    void note(const std::string& line) {
        if (cfg.diagnostics) *cfg.diagnostics << line << "\n";
    }

    void collect(const Node& node, const Polyhedron& eff) {
        const LinearExpr cost_var = LinearExpr::of(Variable::cost());
        auto project = [&](const Polyhedron& d) { return d.project_onto(param_vars(net)); };
        if (optimize) {
            auto ext = eff.minimize(cost_var);
            if (!ext.bounded) throw CostUnbounded("goal class cost is unbounded below");
            if (best && ext.value > *best) return;
            if (!best || ext.value < *best) {
                best = ext.value;
                params.clear();
                records.clear();
                witness = node.seq;
                note("improved cost bound to " + rat_to_string(ext.value) + " at depth " +
                     std::to_string(node.seq.size()));
            }
            auto slice = eff.with_constraints(
                {Constraint::eq(cost_var, LinearExpr::of(*best))});
            ++stats.goal_hits;
            add_param_poly(params, project(slice));
            records.push_back({node.seq, eff});
        } else {
            auto cut = eff.with_constraints({Constraint::le(cost_var, LinearExpr::of(*cmax))});
            if (cut.is_empty()) return;
            ++stats.goal_hits;
            add_param_poly(params, project(cut));
            records.push_back({node.seq, eff});
        }
    }

    void run() {
        try {
            waiting.push_back({initial_class(net), {}});
        } catch (const ClassError&) {
            note("no parameter valuation admits the initial state");
            return;  // empty answer, complete: the net has no runs at all
        }
        while (!waiting.empty()) {
            if (stats.explored >= cfg.max_classes) {
                status = SearchStatus::BudgetExhausted;
                note("class budget exhausted with " + std::to_string(waiting.size()) +
                     " classes still waiting");
                break;
            }
            const bool bfs = cfg.order == SearchOrder::BreadthFirst;
            Node node = std::move(bfs ? waiting.front() : waiting.back());
            if (bfs)
                waiting.pop_front();
            else
                waiting.pop_back();

            ++stats.explored;
            stats.max_depth = std::max(stats.max_depth, (unsigned long)node.seq.size());
            if (cfg.diagnostics && stats.explored % 100 == 0)
                note("explored " + std::to_string(stats.explored) + " classes, " +
                     std::to_string(waiting.size()) + " waiting");

            Polyhedron eff =
                cfg.integer ? node.cls.domain.integer_hull(cfg.param_box) : node.cls.domain;
            if (eff.is_empty()) {  // no integer parameter point reaches this class
                ++stats.subsumed;
                continue;
            }

            if (goal.holds(node.cls.marking)) collect(node, eff);

            Polyhedron relaxed = cost_relaxed(eff);
            bool covered = false;
            for (const auto& pe : passed)
                if (pe.marking == node.cls.marking && pe.relaxed.includes(relaxed)) {
                    covered = true;
                    break;
                }
            if (covered) {
                ++stats.subsumed;
                continue;
            }
            passed.push_back({node.cls.marking, std::move(relaxed)});

            auto fires = cfg.integer ? firable(net, StateClass{node.cls.marking, eff})
                                     : firable(net, node.cls);
            for (size_t tf : fires) {
                StateClass succ = next(net, node.cls, tf);
                for (size_t p = 0; p < net.places.size(); ++p)
                    if (succ.marking[p] > cfg.marking_cap)
                        throw MarkingCapExceeded(
                            "place " + net.places[p] + " exceeds " +
                            std::to_string(cfg.marking_cap) +
                            " tokens; the net looks unbounded under this cap");
                auto seq = node.seq;
                seq.push_back(tf);
                waiting.push_back({std::move(succ), std::move(seq)});
            }
        }
        note("done: explored " + std::to_string(stats.explored) + ", subsumed " +
             std::to_string(stats.subsumed) + ", goal hits " + std::to_string(stats.goal_hits));
    }
};

struct Realized {
    TimedWord word;
    Rat cost;
};

// Minimum-cost delay assignment for a fixed firing sequence under a fixed
// valuation: one variable per step delay, window constraints keeping every
// enabled transition inside its instantiated interval, objective the rate-
// weighted delays. The date system of a run, solved exactly.
std::optional<Realized> realize(const PcTPN& net, const ParamValuation& v,
                                const std::vector<size_t>& seq) {
    PcTPN inst = net.instantiate(v);
    const size_t k = seq.size();
    std::vector<lp::Row> rows;
    std::vector<Rat> obj(k, 0);
    Rat fixed_cost = 0;

    Marking m = inst.initial;
    std::vector<size_t> enab(inst.transitions.size(), 0);  // step at which the clock restarted
    for (size_t j = 0; j < k; ++j) {
        std::vector<Rat> nonneg(k, 0);
        nonneg[j] = -1;
        rows.push_back({std::move(nonneg), Rat(0), false});
    }
    for (size_t i = 1; i <= k; ++i) {
        size_t tf = seq[i - 1];
        if (tf >= inst.transitions.size() || !inst.enabled(m, tf)) return std::nullopt;
        auto window = [&](size_t t) {
            std::vector<Rat> a(k, 0);
            for (size_t j = enab[t]; j < i; ++j) a[j] = 1;
            return a;
        };
        for (size_t t : inst.enabled_set(m)) {
            const StaticInterval& iv = inst.transitions[t].interval;
            if (t == tf) {
                auto a = window(t);
                for (auto& x : a) x = -x;
                rows.push_back({std::move(a), Rat(-iv.left.value), false});
            }
            if (iv.right.kind != ParamBound::Kind::Infinity)
                rows.push_back({window(t), iv.right.value, false});
        }
        obj[i - 1] = make_rat(static_cast<long>(inst.rate_at(m)));
        fixed_cost += make_rat(inst.transitions[tf].discrete_cost);

        auto newly = inst.newly_enabled(m, tf);
        m = inst.fire_marking(m, tf);
        for (size_t t : newly) enab[t] = i;
    }

    if (k == 0) return Realized{{}, fixed_cost};
    auto sol = lp::minimize(rows, obj);
    if (sol.status != lp::Status::Optimal) return std::nullopt;
    TimedWord word;
    for (size_t i = 0; i < k; ++i) word.push_back({net.transitions[seq[i]].id, sol.point[i]});
    return Realized{std::move(word), Rat(sol.value + fixed_cost)};
}

TimedWord trace_from_records(const PcTPN& net, const std::vector<GoalRecord>& records,
                             const ParamValuation& v, const std::optional<Rat>& at_most,
                             const std::optional<Rat>& exactly) {
    for (const auto& record : records) {
        std::optional<Realized> r;
        try {
            r = realize(net, v, record.sequence);
        } catch (const NetError&) {
            break;  // valuation infeasible for the net itself
        }
        if (!r) continue;
        if (exactly && r->cost != *exactly) continue;
        if (at_most && r->cost > *at_most) continue;
        return r->word;
    }
    throw SynthesisError("valuation is not covered by the synthesis result");
}

}  // namespace

SynthesisResult bounded_synth(const PcTPN& net, const GoalPredicate& goal, const Rat& c_max,
                              const ExplorationConfig& cfg) {
    if (cfg.integer)
        throw SynthesisError("bounded_synth runs the continuous semantics; use int_bounded_synth");
    precheck_costs(net, cfg);
    check_box(net, cfg);
    Engine e{net, goal, cfg, false, c_max};
    e.run();
    return {std::move(e.params), e.status, e.stats, std::move(e.records), c_max};
}

OptResult inf_synth(const PcTPN& net, const GoalPredicate& goal, const ExplorationConfig& cfg) {
    if (cfg.integer)
        throw SynthesisError("inf_synth runs the continuous semantics; use int_inf_synth");
    precheck_costs(net, cfg);
    check_box(net, cfg);
    Engine e{net, goal, cfg, true, std::nullopt};
    e.run();
    return {e.best, std::move(e.params), e.status, e.stats, std::move(e.records),
            std::move(e.witness)};
}

SynthesisResult int_bounded_synth(const PcTPN& net, const GoalPredicate& goal, const Rat& c_max,
                                  const ExplorationConfig& cfg) {
    ExplorationConfig c2 = cfg;
    c2.integer = true;
    precheck_costs(net, c2);
    check_box(net, c2);
    Engine e{net, goal, c2, false, c_max};
    e.run();
    return {std::move(e.params), e.status, e.stats, std::move(e.records), c_max};
}

OptResult int_inf_synth(const PcTPN& net, const GoalPredicate& goal,
                        const ExplorationConfig& cfg) {
    ExplorationConfig c2 = cfg;
    c2.integer = true;
    precheck_costs(net, c2);
    check_box(net, c2);
    Engine e{net, goal, c2, true, std::nullopt};
    e.run();
    return {e.best, std::move(e.params), e.status, e.stats, std::move(e.records),
            std::move(e.witness)};
}

TimedWord explore_trace(const PcTPN& net, const SynthesisResult& result,
                        const ParamValuation& v) {
    return trace_from_records(net, result.goal_records, v, result.cost_bound, std::nullopt);
}

TimedWord explore_trace(const PcTPN& net, const OptResult& result, const ParamValuation& v) {
    if (!result.cost) throw SynthesisError("the goal is unreachable; no trace exists");
    return trace_from_records(net, result.goal_records, v, std::nullopt, result.cost);
}

}  // namespace pcsynth
