// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcsynth/synthesis.hpp"

namespace pcsynth {

struct ResultError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A synthesis answer detached from the engine: the query echo, the outcome,
// and the parameter region as a disjunction of exact linear constraint
// systems over the declared parameters.
struct ResultDocument {
    std::string query;
    std::string mode;  // "reach" or "mincost"
    SearchStatus status = SearchStatus::Complete;
    std::optional<Rat> cost;        // mincost: optimum; empty means unreachable
    std::optional<Rat> cost_bound;  // reach: the queried bound
    std::vector<std::string> params;
    std::vector<std::vector<Constraint>> disjuncts;
    SynthesisStats stats;
};

ResultDocument make_document(const PcTPN& net, const std::string& query,
                             const SynthesisResult& result);
ResultDocument make_document(const PcTPN& net, const std::string& query, const OptResult& result);

enum class ResultFormat { Human, Structured };

// Human: one block per disjunct with per-parameter ranges such as
// "a in [2, 10]" plus the exact inequalities when a range alone is lossy.
// Structured: a JSON document with rationals encoded as "num/den" strings;
// parse_result inverts it exactly.
std::string render_result(const ResultDocument& doc, ResultFormat format);

ResultDocument parse_result(const std::string& structured_text);

// The disjunction as polyhedra over the document's parameter space, for
// semantic comparisons of round-tripped results.
std::vector<Polyhedron> document_regions(const ResultDocument& doc);

}  // namespace pcsynth
