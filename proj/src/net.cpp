// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/net.hpp"

#include <algorithm>

namespace pcsynth {

std::optional<size_t> PcTPN::place_index(const std::string& id) const {
    for (size_t i = 0; i < places.size(); ++i)
        if (places[i] == id) return i;
    return std::nullopt;
}

std::optional<size_t> PcTPN::transition_index(const std::string& id) const {
    for (size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i].id == id) return i;
    return std::nullopt;
}

bool PcTPN::has_param(const std::string& id) const {
    return std::find(params.begin(), params.end(), id) != params.end();
}

long long PcTPN::rate_at(const Marking& m) const {
    long long acc = rate_constant;
    for (size_t p = 0; p < places.size(); ++p)
        acc += static_cast<long long>(rate_coeffs.at(p)) * static_cast<long long>(m.at(p));
    return acc;
}

bool PcTPN::enabled(const Marking& m, size_t t) const {
    const Marking& pre = transitions.at(t).pre;
    for (size_t p = 0; p < places.size(); ++p)
        if (m.at(p) < pre.at(p)) return false;
    return true;
}

std::vector<size_t> PcTPN::enabled_set(const Marking& m) const {
    std::vector<size_t> out;
    for (size_t t = 0; t < transitions.size(); ++t)
        if (enabled(m, t)) out.push_back(t);
    return out;
}

Marking PcTPN::fire_marking(const Marking& m, size_t t) const {
    if (!enabled(m, t)) throw NetError("transition " + transitions.at(t).id + " is not enabled");
    Marking out = m;
    const Transition& tr = transitions[t];
    for (size_t p = 0; p < places.size(); ++p) out[p] = out[p] - tr.pre[p] + tr.post[p];
    return out;
}

std::vector<size_t> PcTPN::newly_enabled(const Marking& m, size_t t) const {
    if (!enabled(m, t)) throw NetError("transition " + transitions.at(t).id + " is not enabled");
    Marking intermediate = m;
    const Transition& tr = transitions[t];
    for (size_t p = 0; p < places.size(); ++p) intermediate[p] -= tr.pre[p];
    Marking after = intermediate;
    for (size_t p = 0; p < places.size(); ++p) after[p] += tr.post[p];

    std::vector<size_t> out;
    for (size_t i = 0; i < transitions.size(); ++i)
        if (enabled(after, i) && (!enabled(intermediate, i) || i == t)) out.push_back(i);
    return out;
}

PcTPN PcTPN::instantiate(const ParamValuation& v) const {
    for (const auto& p : params) {
        auto it = v.find(p);
        if (it == v.end()) throw NetError("valuation misses parameter " + p);
        if (it->second < 0) throw NetError("negative value for parameter " + p);
    }
    auto subst = [&](const ParamBound& b) {
        if (b.kind != ParamBound::Kind::Parameter) return b;
        if (!has_param(b.name)) throw NetError("undeclared parameter " + b.name);
        return ParamBound::constant(v.at(b.name));
    };
    PcTPN out = *this;
    out.params.clear();
    for (auto& t : out.transitions) {
        t.interval.left = subst(t.interval.left);
        t.interval.right = subst(t.interval.right);
        if (t.interval.right.kind == ParamBound::Kind::Constant &&
            t.interval.left.value > t.interval.right.value)
            throw InfeasibleValuation("interval of " + t.id + " is empty under the valuation");
    }
    return out;
}

std::vector<std::string> PcTPN::validate() const {
    std::vector<std::string> diags;
    auto sized = [&](const Marking& m) { return m.size() == places.size(); };

    for (size_t i = 0; i < places.size(); ++i)
        for (size_t j = i + 1; j < places.size(); ++j)
            if (places[i] == places[j]) diags.push_back("duplicate place " + places[i]);
    for (size_t i = 0; i < params.size(); ++i)
        for (size_t j = i + 1; j < params.size(); ++j)
            if (params[i] == params[j]) diags.push_back("duplicate parameter " + params[i]);
    for (size_t i = 0; i < transitions.size(); ++i)
        for (size_t j = i + 1; j < transitions.size(); ++j)
            if (transitions[i].id == transitions[j].id)
                diags.push_back("duplicate transition " + transitions[i].id);

    if (!sized(initial)) diags.push_back("initial marking does not cover every place");
    if (rate_coeffs.size() != places.size())
        diags.push_back("rate coefficients do not cover every place");

    for (const auto& t : transitions) {
        if (!sized(t.pre) || !sized(t.post))
            diags.push_back("arcs of " + t.id + " do not cover every place");
        auto check_bound = [&](const ParamBound& b, const char* side) {
            if (b.kind == ParamBound::Kind::Parameter && !has_param(b.name))
                diags.push_back("undeclared parameter " + b.name + " in " + side +
                                " bound of " + t.id);
            if (b.kind == ParamBound::Kind::Constant && b.value < 0)
                diags.push_back("negative " + std::string(side) + " bound of " + t.id);
        };
        check_bound(t.interval.left, "left");
        check_bound(t.interval.right, "right");
        if (t.interval.left.kind == ParamBound::Kind::Infinity)
            diags.push_back("left bound of " + t.id + " cannot be open");
        if (sized(t.pre) && sized(t.post)) {
            unsigned long consumed = 0, produced = 0;
            for (size_t p = 0; p < places.size(); ++p) {
                consumed += t.pre[p];
                produced += t.post[p];
            }
            if (produced > consumed)
                diags.push_back("warning: " + t.id +
                                " produces more tokens than it consumes; "
                                "the net may be unbounded");
        }
    }
    return diags;
}

}  // namespace pcsynth
