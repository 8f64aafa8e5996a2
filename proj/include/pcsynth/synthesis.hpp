// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "pcsynth/concrete.hpp"
#include "pcsynth/state_class.hpp"

namespace pcsynth {

struct SynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A marking exceeded the configured token cap: the net is not bounded enough
// for exhaustive class exploration under the given guard.
struct MarkingCapExceeded : SynthesisError {
    using SynthesisError::SynthesisError;
};

enum class SearchOrder { BreadthFirst, DepthFirst };
enum class SearchStatus { Complete, BudgetExhausted };

struct ExplorationConfig {
    bool integer = false;
    ParamBox param_box;  // required (total) in integer mode
    SearchOrder order = SearchOrder::BreadthFirst;
    unsigned long max_classes = 10000;  // classes popped before giving up
    unsigned long marking_cap = 4096;   // per-place token guard
    // Acknowledges that run costs are bounded below. Without it, nets with a
    // negative discrete cost or a possibly negative rate are refused.
    bool assert_cost_lower_bounded = false;
    std::ostream* diagnostics = nullptr;  // optional progress events
};

struct SynthesisStats {
    unsigned long explored = 0;  // classes popped and processed
    unsigned long subsumed = 0;  // classes skipped by subsumption or empty hulls
    unsigned long goal_hits = 0; // classes contributing parameter valuations
    unsigned long max_depth = 0; // longest firing sequence reached
};

// One goal-marking class worth of provenance: the firing sequence that led
// there and the (hulled, in integer mode) domain it contributed from.
struct GoalRecord {
    std::vector<size_t> sequence;
    Polyhedron domain;
};

// Union of parameter polyhedra. In integer mode only the integer points of
// the union are characterized.
struct SynthesisResult {
    std::vector<Polyhedron> params;
    SearchStatus status = SearchStatus::Complete;
    SynthesisStats stats;
    std::vector<GoalRecord> goal_records;
    std::optional<Rat> cost_bound;  // the queried bound, for witness extraction
};

struct OptResult {
    std::optional<Rat> cost;  // empty means the goal is unreachable (+infinity)
    std::vector<Polyhedron> params;
    SearchStatus status = SearchStatus::Complete;
    SynthesisStats stats;
    std::vector<GoalRecord> goal_records;
    std::optional<std::vector<size_t>> witness;  // a cheapest-goal firing sequence
};

// All parameter valuations from which some goal marking is reachable with
// accumulated cost <= c_max.
SynthesisResult bounded_synth(const PcTPN& net, const GoalPredicate& goal, const Rat& c_max,
                              const ExplorationConfig& cfg);

// The infimum reachable cost and the valuations attaining it.
OptResult inf_synth(const PcTPN& net, const GoalPredicate& goal, const ExplorationConfig& cfg);

// Integer-parameter variants: hulls replace domains at every collection,
// subsumption, and firability step, which guarantees termination on bounded
// nets with a finite parameter box.
SynthesisResult int_bounded_synth(const PcTPN& net, const GoalPredicate& goal, const Rat& c_max,
                                  const ExplorationConfig& cfg);
OptResult int_inf_synth(const PcTPN& net, const GoalPredicate& goal,
                        const ExplorationConfig& cfg);

// Extracts a concrete schedule for one valuation inside the result: delays
// solving the run's date system at minimum cost. The word replays to a goal
// marking at the recorded cost. Throws SynthesisError when the valuation is
// not covered by the result.
TimedWord explore_trace(const PcTPN& net, const SynthesisResult& result,
                        const ParamValuation& v);
TimedWord explore_trace(const PcTPN& net, const OptResult& result, const ParamValuation& v);

}  // namespace pcsynth
