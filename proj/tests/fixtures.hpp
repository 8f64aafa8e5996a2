// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared golden values for the two-transition loop net used across the test
// suite: a loop transition t0 with firing interval [a,a] and discrete cost 2,
// a one-shot transition t1 with interval [2,5], and a marking-dependent cost
// rate of 3 before t1 fires and 2 afterwards.

#include <vector>

#include "pcsynth/net.hpp"
#include "pcsynth/polyhedron.hpp"

namespace pcsynth::testing {

// The loop net behind every golden value below: t0 loops on p0 with interval
// [a,a] and discrete cost 2; t1 moves p1 to p2 within [2,5]; rate 2*p0 + p1.
inline PcTPN make_loop_net() {
    PcTPN net;
    net.name = "parametric-loop";
    net.places = {"p0", "p1", "p2"};
    net.params = {"a"};
    net.initial = {1, 1, 0};
    net.rate_coeffs = {2, 1, 0};
    net.rate_constant = 0;
    Transition t0;
    t0.id = "t0";
    t0.pre = {1, 0, 0};
    t0.post = {1, 0, 0};
    t0.interval = {ParamBound::parameter("a"), ParamBound::parameter("a")};
    t0.discrete_cost = 2;
    Transition t1;
    t1.id = "t1";
    t1.pre = {0, 1, 0};
    t1.post = {0, 0, 1};
    t1.interval = {ParamBound::constant(2), ParamBound::constant(5)};
    t1.discrete_cost = 0;
    net.transitions = {t0, t1};
    return net;
}

inline GoalPredicate goal_p2_marked() {
    GoalPredicate g;
    g.disjuncts = {{GoalAtom{2, GoalAtom::Op::Ge, 1}}};
    g.text = "p2 >= 1";
    return g;
}

inline const Variable kT0 = Variable::clock("t0");
inline const Variable kT1 = Variable::clock("t1");
inline const Variable kCost = Variable::cost();
inline const Variable kA = Variable::param("a");

// Canonical class space while both transitions are enabled, and after the
// one-shot transition has fired (only the loop clock remains).
inline VariableSpace space_both() { return VariableSpace({kT0, kT1, kCost, kA}); }
inline VariableSpace space_loop_only() { return VariableSpace({kT0, kCost, kA}); }

inline LinearExpr ex(const Variable& v) { return LinearExpr::of(v); }
inline LinearExpr num(long n) { return LinearExpr::of(make_rat(n)); }

// Class domain before any firing: the loop clock equals a, the one-shot clock
// ranges over [2,5], no cost accumulated yet.
inline Polyhedron golden_initial() {
    return Polyhedron::from_constraints(space_both(), {
                                                          Constraint::eq(ex(kT0), ex(kA)),
                                                          Constraint::ge(ex(kT1), num(2)),
                                                          Constraint::le(ex(kT1), num(5)),
                                                          Constraint::eq(ex(kCost), num(0)),
                                                          Constraint::ge(ex(kA), num(0)),
                                                      });
}

// Domain after firing the loop n >= 1 times: the one-shot window shifts down
// by n*a and the accumulated cost is n*(2+3a).
inline Polyhedron golden_loop(long n) {
    LinearExpr na = make_rat(n) * ex(kA);
    return Polyhedron::from_constraints(
        space_both(),
        {
            Constraint::eq(ex(kT0), ex(kA)),
            Constraint::ge(ex(kT1), num(0)),
            Constraint::ge(ex(kT1), num(2) - na),
            Constraint::le(ex(kT1), num(5) - na),
            Constraint::eq(ex(kCost), make_rat(n) * (num(2) + make_rat(3) * ex(kA))),
            Constraint::ge(ex(kA), num(0)),
        });
}

// Domain after n loop firings followed by the one-shot transition. The loop
// clock was reduced by the firing delay a - t0, billed at rate 3.
inline Polyhedron golden_after_oneshot(long n) {
    LinearExpr n1a = make_rat(n + 1) * ex(kA);
    return Polyhedron::from_constraints(
        space_loop_only(),
        {
            Constraint::ge(ex(kT0), num(0)),
            Constraint::le(ex(kT0), ex(kA)),
            Constraint::ge(ex(kT0), n1a - num(5)),
            Constraint::le(ex(kT0), n1a - num(2)),
            Constraint::eq(ex(kCost), make_rat(n) * (num(2) + make_rat(3) * ex(kA)) +
                                          make_rat(3) * (ex(kA) - ex(kT0))),
            Constraint::ge(ex(kA), num(0)),
        });
}

// Integer-slice hull of golden_loop(n) over the box a in [0,10].
//   n = 2:       slices a in {0,1,2}; both one-shot bounds tilt with slope -2.
//   n in {3..5}: slices a in {0,1}; lower bound slope -2, upper keeps -n.
//   n >= 6:      only the a = 0 slice survives.
inline Polyhedron golden_loop_hull(long n) {
    if (n >= 6)
        return Polyhedron::from_constraints(space_both(),
                                            {
                                                Constraint::eq(ex(kT0), num(0)),
                                                Constraint::ge(ex(kT1), num(2)),
                                                Constraint::le(ex(kT1), num(5)),
                                                Constraint::eq(ex(kCost), num(2 * n)),
                                                Constraint::eq(ex(kA), num(0)),
                                            });
    long amax = n == 2 ? 2 : 1;
    LinearExpr na = make_rat(n) * ex(kA);
    LinearExpr two_a = make_rat(2) * ex(kA);
    return Polyhedron::from_constraints(
        space_both(),
        {
            Constraint::eq(ex(kT0), ex(kA)),
            Constraint::ge(ex(kT1), num(0)),
            Constraint::ge(ex(kT1), num(2) - two_a),
            Constraint::le(ex(kT1), num(5) - (n == 2 ? two_a : na)),
            Constraint::eq(ex(kCost), make_rat(n) * (num(2) + make_rat(3) * ex(kA))),
            Constraint::ge(ex(kA), num(0)),
            Constraint::le(ex(kA), num(amax)),
        });
}

}  // namespace pcsynth::testing
