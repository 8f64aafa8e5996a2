// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

#include "pcsynth/net.hpp"
#include "pcsynth/state_class.hpp"

namespace pcsynth {

// Malformed query text: goal predicates, valuations, parameter bounds.
struct QueryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Comparisons `<place> <op> <nat>` with op in {==, >=, <=}, combined with
// `and` and `or`; `and` binds tighter. Place names must exist in the net.
GoalPredicate parse_goal(const std::string& text, const PcTPN& net);

// Comma-separated `<param>=<rational>` assignments, e.g. "a=2,b=1/2".
ParamValuation parse_valuation(const std::string& text, const PcTPN& net);

// Comma-separated `<param>=<nat>..<nat>` ranges, e.g. "a=0..10". Every
// parameter of the net must receive a range.
ParamBox parse_param_bounds(const std::string& text, const PcTPN& net);

}  // namespace pcsynth
