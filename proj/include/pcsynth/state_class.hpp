// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pcsynth/net.hpp"
#include "pcsynth/polyhedron.hpp"

namespace pcsynth {

struct ClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A class whose cost coordinate has no lower bound; violates the assumption
// that run costs are uniformly bounded below, so it is surfaced, not hidden.
struct CostUnbounded : ClassError {
    using ClassError::ClassError;
};

// Finite integer bounds per parameter name; required by every integer-hull
// operation.
using ParamBox = std::map<std::string, std::pair<long long, long long>>;

struct SubsumptionMode {
    bool integer = false;
    ParamBox box;  // used in integer mode only

    static SubsumptionMode continuous() { return {false, {}}; }
    static SubsumptionMode integer_box(ParamBox b) { return {true, std::move(b)}; }
};

// Symbolic state: a marking plus a firing domain constraining the clocks of
// the enabled transitions, the accumulated cost, and the parameters.
struct StateClass {
    Marking marking;
    Polyhedron domain;
};

// Canonical domain space for a marking: one clock per enabled transition in
// net transition order, then the cost variable, then the parameters in
// declaration order.
VariableSpace class_space(const PcTPN& net, const Marking& m);

// Initial class: enabled clocks sit in their static intervals, every static
// interval is required to be non-empty (also for disabled transitions), cost
// is 0, parameters are non-negative. Throws when no valuation is feasible.
StateClass initial_class(const PcTPN& net);

// Transitions that can fire first from C: enabled t whose clock can reach the
// minimum of all enabled clocks inside the domain.
std::vector<size_t> firable(const PcTPN& net, const StateClass& c);

// Successor class by firing t_f: restrict to t_f winning the race, rebase the
// persistent clocks by the firing delay, bill rate(m) * delay plus the
// discrete cost, drop the old coordinates, and give newly enabled transitions
// fresh static intervals. Throws ClassError when t_f is not firable.
StateClass next(const PcTPN& net, const StateClass& c, size_t tf);

// Minimum accumulated cost inside the class. Integer mode measures the
// integer-slice hull instead. Throws CostUnbounded when c has no lower bound.
Rat class_cost(const StateClass& c, const SubsumptionMode& mode = SubsumptionMode::continuous());

// The domain with its cost upper bounds forgotten: every point at or above a
// member's cost belongs to the result. Computed by eliminating the cost
// coordinate behind a fresh one constrained from below — dropping rows that
// syntactically mention c would be wrong when c is linked to other variables
// (e.g. {c = t, c <= 1} also bounds t).
Polyhedron cost_relaxed(const Polyhedron& domain);
// Same set through the generator route (adds the +cost ray); cross-check.
Polyhedron cost_relaxed_via_generators(const Polyhedron& domain);

// True iff c is subsumed by cp: equal markings, clock/parameter projection
// included, and pointwise minimum cost no better. Implemented as inclusion of
// cost-relaxed domains; integer mode compares the integer-slice hulls.
bool subsumes(const StateClass& c, const StateClass& cp, const SubsumptionMode& mode);

// Marking kept, domain replaced by its integer-slice hull over the box.
StateClass ih(const StateClass& c, const ParamBox& box);

// Transitions firable from ih(c, box): firability restricted to integer
// parameter valuations.
std::vector<size_t> int_firable(const PcTPN& net, const StateClass& c, const ParamBox& box);

// Eager integer-hull successor ih(next(ih(c), tf)); agrees with the lazy
// ih(next(c, tf)) image.
StateClass next_ih(const PcTPN& net, const StateClass& c, size_t tf, const ParamBox& box);

// Debug form "{p0:1, p1:1} | { ... }" used by golden tests and diagnostics.
std::string render_class(const PcTPN& net, const StateClass& c);

}  // namespace pcsynth
