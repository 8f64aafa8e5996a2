// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/state_class.hpp"

#include <algorithm>

namespace pcsynth {

namespace {

LinearExpr bound_expr(const ParamBound& b) {
    switch (b.kind) {
        case ParamBound::Kind::Constant: return LinearExpr::of(b.value);
        case ParamBound::Kind::Parameter: return LinearExpr::of(Variable::param(b.name));
        case ParamBound::Kind::Infinity: break;
    }
    throw ClassError("open bound used as a linear expression");
}

Variable clock_of(const PcTPN& net, size_t t) { return Variable::clock(net.transitions[t].id); }

// Fresh names for the post-firing coordinates; renamed away before the
// successor is returned. Transition ids cannot contain a quote, so these
// never collide with real clocks.
Variable primed_clock(const PcTPN& net, size_t t) {
    return Variable::clock(net.transitions[t].id + "'");
}
const Variable kPrimedCost = Variable::clock("c'");
const Variable kRelaxCost = Variable::clock("c~");

// The race constraints: tf's clock is minimal among enabled clocks.
std::vector<Constraint> wins_race(const PcTPN& net, const Marking& m, size_t tf) {
    std::vector<Constraint> cs;
    for (size_t i : net.enabled_set(m))
        if (i != tf)
            cs.push_back(Constraint::le(LinearExpr::of(clock_of(net, tf)),
                                        LinearExpr::of(clock_of(net, i))));
    return cs;
}

}  // namespace

VariableSpace class_space(const PcTPN& net, const Marking& m) {
    VariableSpace space;
    for (size_t t : net.enabled_set(m)) space.append(clock_of(net, t));
    space.append(Variable::cost());
    for (const auto& p : net.params) space.append(Variable::param(p));
    return space;
}

StateClass initial_class(const PcTPN& net) {
    std::vector<Constraint> cs;
    for (size_t t : net.enabled_set(net.initial)) {
        const StaticInterval& iv = net.transitions[t].interval;
        cs.push_back(Constraint::ge(LinearExpr::of(clock_of(net, t)), bound_expr(iv.left)));
        if (iv.right.kind != ParamBound::Kind::Infinity)
            cs.push_back(Constraint::le(LinearExpr::of(clock_of(net, t)), bound_expr(iv.right)));
    }
    // Every static interval must be non-empty, enabled or not: a valuation
    // emptying any interval is outside the model's state space.
    for (const auto& t : net.transitions)
        if (t.interval.right.kind != ParamBound::Kind::Infinity)
            cs.push_back(Constraint::le(bound_expr(t.interval.left), bound_expr(t.interval.right)));
    cs.push_back(Constraint::eq(LinearExpr::of(Variable::cost()), LinearExpr::of(Rat(0))));
    for (const auto& p : net.params)
        cs.push_back(Constraint::ge(LinearExpr::of(Variable::param(p)), LinearExpr::of(Rat(0))));

    StateClass c{net.initial, Polyhedron::from_constraints(class_space(net, net.initial), cs)};
    if (c.domain.is_empty()) throw ClassError("no feasible parameter valuation");
    return c;
}

std::vector<size_t> firable(const PcTPN& net, const StateClass& c) {
    std::vector<size_t> out;
    for (size_t t : net.enabled_set(c.marking))
        if (!c.domain.with_constraints(wins_race(net, c.marking, t)).is_empty())
            out.push_back(t);
    return out;
}

StateClass next(const PcTPN& net, const StateClass& c, size_t tf) {
    if (!net.enabled(c.marking, tf))
        throw ClassError("transition " + net.transitions.at(tf).id + " is not enabled");
    const Variable theta_f = clock_of(net, tf);

    Polyhedron d = c.domain.with_constraints(wins_race(net, c.marking, tf));
    if (d.is_empty())
        throw ClassError("transition " + net.transitions[tf].id + " is not firable");

    // Persistent transitions: enabled while tf's input tokens are removed.
    Marking intermediate = c.marking;
    for (size_t p = 0; p < net.places.size(); ++p) intermediate[p] -= net.transitions[tf].pre[p];
    std::vector<size_t> persistent;
    for (size_t i : net.enabled_set(intermediate))
        if (i != tf) persistent.push_back(i);

    // New coordinates: rebased persistent clocks and the updated cost.
    std::vector<Variable> fresh;
    std::vector<Constraint> link;
    for (size_t i : persistent) {
        fresh.push_back(primed_clock(net, i));
        link.push_back(Constraint::eq(
            LinearExpr::of(primed_clock(net, i)),
            LinearExpr::of(clock_of(net, i)) - LinearExpr::of(theta_f)));
    }
    fresh.push_back(kPrimedCost);
    link.push_back(Constraint::eq(
        LinearExpr::of(kPrimedCost),
        LinearExpr::of(Variable::cost()) +
            make_rat(static_cast<long>(net.rate_at(c.marking))) * LinearExpr::of(theta_f) +
            LinearExpr::of(make_rat(net.transitions[tf].discrete_cost))));
    d = d.add_variables(fresh).with_constraints(link);

    // Drop every pre-firing coordinate.
    std::vector<Variable> victims;
    for (size_t i : net.enabled_set(c.marking)) victims.push_back(clock_of(net, i));
    victims.push_back(Variable::cost());
    d = d.project_out(victims);

    // Newly enabled transitions start inside their static intervals.
    auto newly = net.newly_enabled(c.marking, tf);
    std::vector<Variable> born;
    std::vector<Constraint> init;
    for (size_t j : newly) {
        const StaticInterval& iv = net.transitions[j].interval;
        born.push_back(primed_clock(net, j));
        init.push_back(Constraint::ge(LinearExpr::of(primed_clock(net, j)), bound_expr(iv.left)));
        if (iv.right.kind != ParamBound::Kind::Infinity)
            init.push_back(
                Constraint::le(LinearExpr::of(primed_clock(net, j)), bound_expr(iv.right)));
    }
    d = d.add_variables(born).with_constraints(init);

    // Rename primes away and rebuild over the canonical successor space.
    Marking m2 = net.fire_marking(c.marking, tf);
    std::map<Variable, Variable> ren{{kPrimedCost, Variable::cost()}};
    for (size_t i : net.enabled_set(m2)) ren.emplace(primed_clock(net, i), clock_of(net, i));
    std::vector<Constraint> cs;
    cs.reserve(d.constraints().size());
    for (const auto& cons : d.constraints()) cs.push_back(rename_variables(cons, ren));
    StateClass out{m2, Polyhedron::from_constraints(class_space(net, m2), cs)};
    if (out.domain.is_empty())
        throw ClassError("transition " + net.transitions[tf].id + " is not firable");
    return out;
}

Rat class_cost(const StateClass& c, const SubsumptionMode& mode) {
    Polyhedron d = mode.integer ? c.domain.integer_hull(mode.box) : c.domain;
    if (d.is_empty()) throw ClassError("cost of an empty class");
    auto ext = d.minimize(LinearExpr::of(Variable::cost()));
    if (!ext.bounded) throw CostUnbounded("class cost is unbounded below");
    return ext.value;
}

Polyhedron cost_relaxed(const Polyhedron& domain) {
    const Variable c = Variable::cost();
    auto lifted = domain.add_variables({kRelaxCost})
                      .with_constraints({Constraint::ge(LinearExpr::of(kRelaxCost),
                                                        LinearExpr::of(c))})
                      .project_out({c});
    std::vector<Constraint> cs;
    cs.reserve(lifted.constraints().size());
    for (const auto& cons : lifted.constraints())
        cs.push_back(rename_variables(cons, {{kRelaxCost, c}}));
    return Polyhedron::from_constraints(domain.space(), cs);
}

Polyhedron cost_relaxed_via_generators(const Polyhedron& domain) {
    if (domain.is_empty()) return domain;
    Generators gens = domain.generators();
    std::vector<Rat> up(domain.space().size(), 0);
    up[domain.space().index_of(Variable::cost())] = 1;
    gens.rays.push_back(std::move(up));
    return Polyhedron::from_generators(domain.space(), gens);
}

bool subsumes(const StateClass& c, const StateClass& cp, const SubsumptionMode& mode) {
    if (c.marking != cp.marking) return false;
    Polyhedron d = c.domain, dp = cp.domain;
    if (mode.integer) {
        d = d.integer_hull(mode.box);
        dp = dp.integer_hull(mode.box);
    }
    if (d.is_empty()) return true;
    if (dp.is_empty()) return false;
    return cost_relaxed(dp).includes(cost_relaxed(d));
}

StateClass ih(const StateClass& c, const ParamBox& box) {
    return {c.marking, c.domain.integer_hull(box)};
}

std::vector<size_t> int_firable(const PcTPN& net, const StateClass& c, const ParamBox& box) {
    StateClass hull = ih(c, box);
    if (hull.domain.is_empty()) return {};
    return firable(net, hull);
}

StateClass next_ih(const PcTPN& net, const StateClass& c, size_t tf, const ParamBox& box) {
    return ih(next(net, ih(c, box), tf), box);
}

std::string render_class(const PcTPN& net, const StateClass& c) {
    std::string out = "{";
    bool first = true;
    for (size_t p = 0; p < net.places.size(); ++p) {
        if (c.marking.at(p) == 0) continue;
        if (!first) out += ", ";
        first = false;
        out += net.places[p] + ":" + std::to_string(c.marking[p]);
    }
    out += "} | " + render(c.domain);
    return out;
}

}  // namespace pcsynth
