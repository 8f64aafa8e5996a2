// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/concrete.hpp"

#include <algorithm>
#include <sstream>

namespace pcsynth {

namespace {

RatInterval static_interval_at(const PcTPN& net, const Transition& t, const ParamValuation& v) {
    auto resolve = [&](const ParamBound& b) -> Rat {
        if (b.kind == ParamBound::Kind::Parameter) {
            auto it = v.find(b.name);
            if (it == v.end()) throw SemanticsError("valuation misses parameter " + b.name);
            return it->second;
        }
        return b.value;
    };
    RatInterval out;
    out.lo = resolve(t.interval.left);
    out.unbounded = t.interval.right.kind == ParamBound::Kind::Infinity;
    if (!out.unbounded) {
        out.hi = resolve(t.interval.right);
        if (out.lo > out.hi)
            throw InfeasibleValuation("interval of " + t.id + " is empty under the valuation");
    }
    return out;
}

}  // namespace

std::optional<TimedWord> parse_timed_word(const std::string& text) {
    TimedWord word;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        auto at = token.find('@');
        if (at == std::string::npos || at == 0 || at + 1 >= token.size()) return std::nullopt;
        auto delay = rat_from_string(token.substr(at + 1));
        if (!delay || *delay < 0) return std::nullopt;
        word.push_back({token.substr(0, at), *delay});
    }
    return word;
}

std::string format_timed_word(const TimedWord& word) {
    std::string out;
    for (const auto& step : word) {
        if (!out.empty()) out += " ";
        out += step.transition + "@" + rat_to_string(step.delay);
    }
    return out;
}

ConcreteState initial_state(const PcTPN& net, const ParamValuation& v) {
    (void)net.instantiate(v);  // validates totality, sign, and feasibility
    ConcreteState s;
    s.marking = net.initial;
    s.cost = 0;
    s.valuation = v;
    for (size_t t : net.enabled_set(net.initial))
        s.intervals.emplace(t, static_interval_at(net, net.transitions[t], v));
    return s;
}

ConcreteState delay(const PcTPN& net, const ConcreteState& s, const Rat& d) {
    if (d < 0) throw SemanticsError("negative delay");
    ConcreteState out = s;
    for (auto& [t, iv] : out.intervals) {
        if (!iv.unbounded && d > iv.hi)
            throw SemanticsError("deadline violated: waiting " + rat_to_string(d) +
                                 " overshoots " + net.transitions.at(t).id + " due at " +
                                 rat_to_string(iv.hi));
        iv.lo = std::max(Rat(0), Rat(iv.lo - d));
        if (!iv.unbounded) iv.hi -= d;
    }
    out.cost += make_rat(static_cast<long>(net.rate_at(s.marking))) * d;
    return out;
}

ConcreteState fire(const PcTPN& net, const ConcreteState& s, size_t t) {
    auto it = s.intervals.find(t);
    if (it == s.intervals.end())
        throw SemanticsError("transition " + net.transitions.at(t).id + " is not enabled");
    if (it->second.lo != 0)
        throw SemanticsError("transition " + net.transitions.at(t).id +
                             " cannot fire yet: " + rat_to_string(it->second.lo) +
                             " time units remain");
    ConcreteState out;
    out.valuation = s.valuation;
    out.marking = net.fire_marking(s.marking, t);
    out.cost = s.cost + make_rat(net.transitions[t].discrete_cost);
    auto newly = net.newly_enabled(s.marking, t);
    auto is_new = [&](size_t i) {
        return std::find(newly.begin(), newly.end(), i) != newly.end();
    };
    for (size_t i : net.enabled_set(out.marking)) {
        if (is_new(i))
            out.intervals.emplace(i, static_interval_at(net, net.transitions[i], s.valuation));
        else
            out.intervals.emplace(i, s.intervals.at(i));
    }
    return out;
}

ConcreteState replay(const PcTPN& net, const ParamValuation& v, const TimedWord& word) {
    ConcreteState s = initial_state(net, v);
    for (size_t i = 0; i < word.size(); ++i) {
        auto t = net.transition_index(word[i].transition);
        if (!t) throw SemanticsError("step " + std::to_string(i + 1) + ": unknown transition " +
                                     word[i].transition);
        try {
            s = fire(net, delay(net, s, word[i].delay), *t);
        } catch (const SemanticsError& e) {
            throw SemanticsError("step " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return s;
}

std::optional<Rat> oracle_min_cost(const PcTPN& net, const ParamValuation& v,
                                   const GoalPredicate& goal, unsigned max_firings,
                                   unsigned long node_cap) {
    ConcreteState start = initial_state(net, v);
    PcTPN inst = net.instantiate(v);
    for (const auto& t : inst.transitions) {
        bool ok = rat_is_integer(t.interval.left.value) &&
                  (t.interval.right.kind == ParamBound::Kind::Infinity ||
                   rat_is_integer(t.interval.right.value));
        if (!ok) throw SemanticsError("oracle requires integer interval constants");
    }

    // Key: the timing part of a state. Costs are folded to the minimum per
    // key and level; evolution from equal (marking, intervals) is identical,
    // so only the cheapest copy matters.
    using Key = std::pair<Marking, std::map<size_t, RatInterval>>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            if (a.first != b.first) return a.first < b.first;
            auto ai = a.second.begin(), bi = b.second.begin();
            for (; ai != a.second.end() && bi != b.second.end(); ++ai, ++bi) {
                if (ai->first != bi->first) return ai->first < bi->first;
                const RatInterval& x = ai->second;
                const RatInterval& y = bi->second;
                if (x.unbounded != y.unbounded) return x.unbounded < y.unbounded;
                if (x.lo != y.lo) return x.lo < y.lo;
                if (!x.unbounded && x.hi != y.hi) return x.hi < y.hi;
            }
            return a.second.size() < b.second.size();
        }
    };
    std::map<Key, Rat, KeyLess> level{{{start.marking, start.intervals}, start.cost}};

    std::optional<Rat> best;
    auto note_goal = [&](const Marking& m, const Rat& cost) {
        if (goal.holds(m) && (!best || cost < *best)) best = cost;
    };
    note_goal(start.marking, start.cost);

    unsigned long nodes = 0;
    for (unsigned depth = 0; depth < max_firings && !level.empty(); ++depth) {
        std::map<Key, Rat, KeyLess> next_level;
        for (const auto& [key, cost] : level) {
            ConcreteState s;
            s.marking = key.first;
            s.intervals = key.second;
            s.cost = cost;
            s.valuation = v;
            if (s.intervals.empty()) continue;  // dead marking

            // Integer delays up to the earliest deadline; with no deadline,
            // waiting past every lower bound changes nothing for firability.
            std::optional<Rat> cap;
            Rat max_lo = 0;
            for (const auto& [t, iv] : s.intervals) {
                if (!iv.unbounded && (!cap || iv.hi < *cap)) cap = iv.hi;
                max_lo = std::max(max_lo, iv.lo);
            }
            Rat limit = cap ? *cap : max_lo;
            for (Rat d = 0; d <= limit; d += 1) {
                ConcreteState waited = delay(net, s, d);
                for (const auto& [t, iv] : waited.intervals) {
                    if (iv.lo != 0) continue;
                    ConcreteState fired = fire(net, waited, t);
                    if (++nodes > node_cap) throw OracleBudgetError("oracle budget exceeded");
                    note_goal(fired.marking, fired.cost);
                    Key k{fired.marking, fired.intervals};
                    auto [it, inserted] = next_level.emplace(std::move(k), fired.cost);
                    if (!inserted && fired.cost < it->second) it->second = fired.cost;
                }
            }
        }
        level = std::move(next_level);
    }
    return best;
}

}  // namespace pcsynth
