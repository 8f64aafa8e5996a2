// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcsynth/rational.hpp"

namespace pcsynth {

struct NetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A parameter valuation under which some static interval is empty.
struct InfeasibleValuation : NetError {
    using NetError::NetError;
};

// Token counts indexed by place position.
using Marking = std::vector<unsigned long>;

// Parameter name -> non-negative rational value, total over declared params.
using ParamValuation = std::map<std::string, Rat>;

// One end of a static firing interval: a rational constant (naturals at the
// source level, rationals after instantiation), a parameter, or an open right
// end.
struct ParamBound {
    enum class Kind { Constant, Parameter, Infinity };
    Kind kind = Kind::Constant;
    Rat value;         // Kind::Constant
    std::string name;  // Kind::Parameter

    static ParamBound constant(Rat v) { return {Kind::Constant, std::move(v), {}}; }
    static ParamBound parameter(std::string n) { return {Kind::Parameter, 0, std::move(n)}; }
    static ParamBound infinity() { return {Kind::Infinity, 0, {}}; }

    bool operator==(const ParamBound&) const = default;
};

// Closed static interval; the left end is always finite.
struct StaticInterval {
    ParamBound left = ParamBound::constant(0);
    ParamBound right = ParamBound::infinity();

    bool operator==(const StaticInterval&) const = default;
};

struct Transition {
    std::string id;
    Marking pre;   // tokens consumed, indexed by place
    Marking post;  // tokens produced
    StaticInterval interval;
    long discrete_cost = 0;

    bool operator==(const Transition&) const = default;
};

// Linear comparisons over one place's token count, grouped as a disjunction
// of conjunctions ("and" binds tighter than "or").
struct GoalAtom {
    enum class Op { Eq, Ge, Le };
    size_t place = 0;
    Op op = Op::Eq;
    unsigned long bound = 0;

    bool holds(const Marking& m) const {
        unsigned long have = m.at(place);
        switch (op) {
            case Op::Eq: return have == bound;
            case Op::Ge: return have >= bound;
            case Op::Le: return have <= bound;
        }
        return false;
    }
};

struct GoalPredicate {
    std::vector<std::vector<GoalAtom>> disjuncts;
    std::string text;  // query echo for reports

    bool holds(const Marking& m) const {
        for (const auto& conj : disjuncts) {
            bool all = true;
            for (const auto& atom : conj)
                if (!atom.holds(m)) {
                    all = false;
                    break;
                }
            if (all) return true;
        }
        return false;
    }
};

// Parametric cost time Petri net. Immutable after construction; transition
// order is the canonical clock order used by symbolic domains.
struct PcTPN {
    std::string name;
    std::vector<std::string> places;
    std::vector<std::string> params;  // declaration order
    std::vector<Transition> transitions;
    Marking initial;
    // Cost rate, linear in the marking: sum(rate_coeffs[p] * m[p]) + rate_constant.
    std::vector<long> rate_coeffs;
    long rate_constant = 0;

    std::optional<size_t> place_index(const std::string& id) const;
    std::optional<size_t> transition_index(const std::string& id) const;
    bool has_param(const std::string& id) const;

    long long rate_at(const Marking& m) const;

    bool enabled(const Marking& m, size_t t) const;
    std::vector<size_t> enabled_set(const Marking& m) const;

    // m - Pre(t) + Post(t); t must be enabled.
    Marking fire_marking(const Marking& m, size_t t) const;

    // Transitions enabled after firing t that were not enabled by m - Pre(t),
    // plus t itself when it re-enables (intermediate semantics).
    std::vector<size_t> newly_enabled(const Marking& m, size_t t) const;

    // Substitutes the valuation into every parametric bound. The result has
    // no parameters. Throws InfeasibleValuation when an interval empties.
    PcTPN instantiate(const ParamValuation& v) const;

    // Structural well-formedness report; entries starting with "warning:" do
    // not block execution. Empty means fully ok.
    std::vector<std::string> validate() const;
};

inline bool has_errors(const std::vector<std::string>& diagnostics) {
    for (const auto& d : diagnostics)
        if (d.rfind("warning:", 0) != 0) return true;
    return false;
}

}  // namespace pcsynth
