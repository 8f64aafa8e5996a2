// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcsynth/net.hpp"

namespace pcsynth {

struct SemanticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OracleBudgetError : SemanticsError {
    using SemanticsError::SemanticsError;
};

// Closed rational interval, right end possibly open to infinity.
struct RatInterval {
    Rat lo;
    bool unbounded = false;
    Rat hi;  // meaningful when !unbounded

    bool operator==(const RatInterval&) const = default;
};

// Ground state of a net under a fixed valuation: marking, one dynamic firing
// interval per enabled transition, and the cost accumulated so far.
struct ConcreteState {
    Marking marking;
    std::map<size_t, RatInterval> intervals;  // keyed by enabled transition index
    Rat cost;
    ParamValuation valuation;

    bool operator==(const ConcreteState&) const = default;
};

// One step of a run: wait, then fire. Transition referenced by name so words
// can be parsed without a net at hand.
struct TimedStep {
    std::string transition;
    Rat delay;

    bool operator==(const TimedStep&) const = default;
};
using TimedWord = std::vector<TimedStep>;

// Textual form: whitespace-separated "t@d" steps, d a non-negative rational
// (fraction or decimal). Returns nothing on malformed input.
std::optional<TimedWord> parse_timed_word(const std::string& text);
std::string format_timed_word(const TimedWord& word);

ConcreteState initial_state(const PcTPN& net, const ParamValuation& v);

// Lets d time units pass: shifts every dynamic interval down (clamped at 0)
// and bills rate(marking) * d. Throws when d overshoots a deadline.
ConcreteState delay(const PcTPN& net, const ConcreteState& s, const Rat& d);

// Fires an enabled transition whose interval has reached its left end 0;
// newly enabled transitions get fresh static intervals under the valuation,
// persistent ones keep their shifted intervals.
ConcreteState fire(const PcTPN& net, const ConcreteState& s, size_t t);

// Folds delay/fire over the word from the initial state. Errors carry the
// offending step index.
ConcreteState replay(const PcTPN& net, const ParamValuation& v, const TimedWord& word);

// Exhaustive minimum-cost search over integer-delay schedules of at most
// max_firings firings. Sound for nets whose instantiated interval constants
// are integers: optima are then attained at integer firing dates. Returns
// nothing when the goal is not reachable within the budget.
std::optional<Rat> oracle_min_cost(const PcTPN& net, const ParamValuation& v,
                                   const GoalPredicate& goal, unsigned max_firings,
                                   unsigned long node_cap = 1u << 20);

}  // namespace pcsynth
