// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/query_text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pcsynth {

namespace {

std::vector<std::string> goal_tokens(const std::string& text) {
    std::vector<std::string> out;
    size_t i = 0;
    auto word_char = [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    };
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (word_char(ch)) {
            size_t start = i;
            while (i < text.size() && word_char(text[i])) ++i;
            out.push_back(text.substr(start, i - start));
            continue;
        }
        if ((ch == '=' || ch == '>' || ch == '<') && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back(text.substr(i, 2));
            i += 2;
            continue;
        }
        throw QueryError("goal predicate: unexpected character '" + std::string(1, ch) + "'");
    }
    return out;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

GoalPredicate parse_goal(const std::string& text, const PcTPN& net) {
    auto toks = goal_tokens(text);
    if (toks.empty()) throw QueryError("goal predicate is empty");

    size_t pos = 0;
    auto take = [&](const std::string& what) {
        if (pos >= toks.size()) throw QueryError("goal predicate: expected " + what + " at end");
        return toks[pos++];
    };
    auto atom = [&] {
        std::string place = take("place name");
        if (place == "and" || place == "or")
            throw QueryError("goal predicate: expected a comparison, found '" + place + "'");
        auto it = std::find(net.places.begin(), net.places.end(), place);
        if (it == net.places.end()) throw QueryError("goal predicate: unknown place '" + place + "'");
        std::string op = take("comparison operator");
        GoalAtom::Op kind;
        if (op == "==")
            kind = GoalAtom::Op::Eq;
        else if (op == ">=")
            kind = GoalAtom::Op::Ge;
        else if (op == "<=")
            kind = GoalAtom::Op::Le;
        else
            throw QueryError("goal predicate: expected ==, >=, or <=, found '" + op + "'");
        std::string num = take("token count");
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](char ch) {
                return std::isdigit(static_cast<unsigned char>(ch));
            }))
            throw QueryError("goal predicate: expected a token count, found '" + num + "'");
        return GoalAtom{static_cast<size_t>(it - net.places.begin()), kind, std::stoul(num)};
    };

    GoalPredicate goal;
    goal.text = trimmed(text);
    std::vector<GoalAtom> conj{atom()};
    while (pos < toks.size()) {
        std::string join = toks[pos++];
        if (join == "and") {
            conj.push_back(atom());
        } else if (join == "or") {
            goal.disjuncts.push_back(std::move(conj));
            conj = {atom()};
        } else {
            throw QueryError("goal predicate: expected 'and' or 'or', found '" + join + "'");
        }
    }
    goal.disjuncts.push_back(std::move(conj));
    return goal;
}

ParamValuation parse_valuation(const std::string& text, const PcTPN& net) {
    ParamValuation out;
    if (trimmed(text).empty()) {
        if (!net.params.empty()) throw QueryError("valuation is empty");
        return out;
    }
    for (const auto& entry : split_on(text, ',')) {
        auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw QueryError("valuation entry '" + trimmed(entry) + "' is not <param>=<value>");
        std::string name = trimmed(entry.substr(0, eq));
        std::string value = trimmed(entry.substr(eq + 1));
        if (!net.has_param(name)) throw QueryError("valuation names unknown parameter '" + name + "'");
        if (out.count(name)) throw QueryError("valuation assigns '" + name + "' twice");
        auto rat = rat_from_string(value);
        if (!rat) throw QueryError("valuation value '" + value + "' is not a rational");
        if (*rat < 0) throw QueryError("parameter '" + name + "' must be nonnegative");
        out.emplace(name, *rat);
    }
    for (const auto& p : net.params)
        if (!out.count(p)) throw QueryError("valuation misses parameter '" + p + "'");
    return out;
}

ParamBox parse_param_bounds(const std::string& text, const PcTPN& net) {
    ParamBox out;
    if (trimmed(text).empty() && net.params.empty()) return out;
    if (trimmed(text).empty()) throw QueryError("parameter bounds are empty");
    auto nat = [](const std::string& s, const std::string& side) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) {
                return std::isdigit(static_cast<unsigned char>(ch));
            }))
            throw QueryError("parameter bound " + side + " '" + s + "' is not a natural number");
        return std::stoll(s);
    };
    for (const auto& entry : split_on(text, ',')) {
        auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw QueryError("bounds entry '" + trimmed(entry) + "' is not <param>=<lo>..<hi>");
        std::string name = trimmed(entry.substr(0, eq));
        std::string range = trimmed(entry.substr(eq + 1));
        if (!net.has_param(name)) throw QueryError("bounds name unknown parameter '" + name + "'");
        if (out.count(name)) throw QueryError("bounds assign '" + name + "' twice");
        auto dots = range.find("..");
        if (dots == std::string::npos)
            throw QueryError("bounds range '" + range + "' is not <lo>..<hi>");
        long long lo = nat(trimmed(range.substr(0, dots)), "low end");
        long long hi = nat(trimmed(range.substr(dots + 2)), "high end");
        if (lo > hi)
            throw QueryError("bounds range for '" + name + "' is empty: " + std::to_string(lo) +
                             " > " + std::to_string(hi));
        out.emplace(name, std::make_pair(lo, hi));
    }
    for (const auto& p : net.params)
        if (!out.count(p)) throw QueryError("bounds miss parameter '" + p + "'");
    return out;
}

}  // namespace pcsynth
