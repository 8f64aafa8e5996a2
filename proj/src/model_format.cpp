// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/model_format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace pcsynth {

namespace {

struct Token {
    std::string text;
    size_t column;  // 1-based
};

bool is_word_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
}

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        char ch = line[i];
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (is_word_char(ch)) {
            size_t start = i;
            while (i < line.size() && is_word_char(line[i])) ++i;
            out.push_back({line.substr(start, i - start), start + 1});
        } else {
            out.push_back({std::string(1, ch), i + 1});
            ++i;
        }
    }
    return out;
}

const std::set<std::string> kReservedIds = {
    "c",    "inf",  "and",   "or",       "net",  "param", "place",
    "trans", "rate", "in",    "out",      "cost", "init",  "interval"};

bool valid_id(const std::string& s) {
    if (s.empty()) return false;
    if (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-') return false;
    return std::all_of(s.begin(), s.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    });
}

struct Parser {
    std::vector<Diagnostic> diags;
    PcTPN net;
    bool saw_net = false;
    bool saw_rate = false;
    std::map<std::string, size_t> place_ids;
    std::set<std::string> param_ids;
    std::set<std::string> trans_ids;
    std::vector<std::pair<long long, std::string>> rate_terms;  // coef, place
    long long rate_const = 0;

    size_t line_no = 0;
    std::vector<Token> toks;
    size_t pos = 0;

    void error(size_t column, const std::string& msg) { diags.push_back({line_no, column, msg}); }
    void error_here(const std::string& msg) {
        error(pos < toks.size() ? toks[pos].column : (toks.empty() ? 1 : toks.back().column + 1),
              msg);
    }

    bool at_end() const { return pos >= toks.size(); }
    const Token& peek() const { return toks[pos]; }

    // Takes the next token, or reports what was expected.
    std::optional<Token> take(const std::string& expected) {
        if (at_end()) {
            error_here("expected " + expected + " before end of line");
            return std::nullopt;
        }
        return toks[pos++];
    }

    bool take_keyword(const std::string& word) {
        auto t = take("'" + word + "'");
        if (!t) return false;
        if (t->text != word) {
            error(t->column, "expected '" + word + "', found '" + t->text + "'");
            return false;
        }
        return true;
    }

    std::optional<std::string> take_new_id(const std::string& kind) {
        auto t = take(kind + " name");
        if (!t) return std::nullopt;
        if (!valid_id(t->text)) {
            error(t->column, "invalid " + kind + " name '" + t->text + "'");
            return std::nullopt;
        }
        if (kReservedIds.count(t->text)) {
            error(t->column, "'" + t->text + "' is a reserved word and cannot name a " + kind);
            return std::nullopt;
        }
        if (place_ids.count(t->text) || param_ids.count(t->text) || trans_ids.count(t->text)) {
            error(t->column, "duplicate name '" + t->text + "'");
            return std::nullopt;
        }
        return t->text;
    }

    std::optional<unsigned long> take_nat(const std::string& what) {
        auto t = take(what);
        if (!t) return std::nullopt;
        if (t->text.empty() ||
            !std::all_of(t->text.begin(), t->text.end(),
                         [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            error(t->column, "expected " + what + ", found '" + t->text + "'");
            return std::nullopt;
        }
        try {
            return std::stoul(t->text);
        } catch (const std::exception&) {
            error(t->column, what + " '" + t->text + "' is out of range");
            return std::nullopt;
        }
    }

    std::optional<long long> take_int(const std::string& what) {
        auto t = take(what);
        if (!t) return std::nullopt;
        const std::string& s = t->text;
        bool digits = !s.empty() && s != "-" &&
                      std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(), [](char ch) {
                          return std::isdigit(static_cast<unsigned char>(ch));
                      });
        if (!digits) {
            error(t->column, "expected " + what + ", found '" + s + "'");
            return std::nullopt;
        }
        try {
            return std::stoll(s);
        } catch (const std::exception&) {
            error(t->column, what + " '" + s + "' is out of range");
            return std::nullopt;
        }
    }

    std::optional<size_t> take_place_ref() {
        auto t = take("place name");
        if (!t) return std::nullopt;
        auto it = place_ids.find(t->text);
        if (it == place_ids.end()) {
            error(t->column, "unknown place '" + t->text + "'");
            return std::nullopt;
        }
        return it->second;
    }

    void finish_line() {
        if (!at_end()) error_here("unexpected '" + peek().text + "' after a complete line");
    }

    void parse_net_line() {
        if (saw_net) {
            error(toks[0].column, "duplicate net header");
            pos = toks.size();
            return;
        }
        auto t = take("net name");
        if (!t) return;
        saw_net = true;
        net.name = t->text;
        finish_line();
    }

    void parse_param_line() {
        auto id = take_new_id("parameter");
        if (!id) return;
        param_ids.insert(*id);
        net.params.push_back(*id);
        finish_line();
    }

    void parse_place_line() {
        auto id = take_new_id("place");
        if (!id) return;
        if (!take_keyword("init")) return;
        auto n = take_nat("initial token count");
        if (!n) return;
        place_ids.emplace(*id, net.places.size());
        net.places.push_back(*id);
        net.initial.push_back(*n);
        finish_line();
    }

    // <place>:<nat>(,<place>:<nat>)*
    bool parse_arc_list(std::vector<unsigned long>& weights) {
        weights.assign(net.places.size(), 0);
        while (true) {
            auto p = take_place_ref();
            if (!p) return false;
            if (!take_keyword(":")) return false;
            auto w = take_nat("arc weight");
            if (!w) return false;
            weights[*p] = *w;
            if (at_end() || peek().text != ",") return true;
            ++pos;
        }
    }

    std::optional<ParamBound> take_bound(bool allow_inf) {
        auto t = take(allow_inf ? "interval bound or 'inf'" : "interval bound");
        if (!t) return std::nullopt;
        if (t->text == "inf") {
            if (allow_inf) return ParamBound::infinity();
            error(t->column, "a left bound cannot be 'inf'");
            return std::nullopt;
        }
        if (std::isdigit(static_cast<unsigned char>(t->text[0]))) {
            bool digits = std::all_of(t->text.begin(), t->text.end(), [](char ch) {
                return std::isdigit(static_cast<unsigned char>(ch));
            });
            if (!digits) {
                error(t->column, "interval bound '" + t->text + "' is not a natural number");
                return std::nullopt;
            }
            try {
                return ParamBound::constant(make_rat(std::stol(t->text)));
            } catch (const std::exception&) {
                error(t->column, "interval bound '" + t->text + "' is out of range");
                return std::nullopt;
            }
        }
        if (param_ids.count(t->text)) return ParamBound::parameter(t->text);
        error(t->column, "undeclared parameter '" + t->text + "' in interval");
        return std::nullopt;
    }

    void parse_trans_line() {
        size_t header_col = toks[0].column;
        auto id = take_new_id("transition");
        if (!id) return;
        Transition t;
        t.id = *id;
        if (!take_keyword("in") || !parse_arc_list(t.pre)) return;
        if (!take_keyword("out") || !parse_arc_list(t.post)) return;
        if (!take_keyword("interval") || !take_keyword("[")) return;
        auto lo = take_bound(false);
        if (!lo) return;
        if (!take_keyword(",")) return;
        auto hi = take_bound(true);
        if (!hi) return;
        if (!take_keyword("]")) return;
        t.interval = {*lo, *hi};
        if (!at_end() && peek().text == "cost") {
            ++pos;
            auto c = take_int("transition cost");
            if (!c) return;
            t.discrete_cost = *c;
        }
        finish_line();

        unsigned long consumed = 0, produced = 0;
        for (unsigned long w : t.pre) consumed += w;
        for (unsigned long w : t.post) produced += w;
        if (produced > consumed)
            diags.push_back({line_no, header_col,
                             "warning: " + t.id +
                                 " produces more tokens than it consumes; the net may be "
                                 "unbounded"});
        trans_ids.insert(t.id);
        net.transitions.push_back(std::move(t));
    }

    // <int>*<place> (+ <int>*<place>)* (+ <int>)?
    void parse_rate_line() {
        if (saw_rate) {
            error(toks[0].column, "duplicate rate line");
            pos = toks.size();
            return;
        }
        saw_rate = true;
        bool first = true;
        while (true) {
            auto coef = take_int(first ? "rate coefficient" : "rate term");
            if (!coef) return;
            if (!first && (at_end() || peek().text != "*")) {
                rate_const = *coef;  // trailing constant ends the expression
                break;
            }
            if (!take_keyword("*")) return;
            auto p = take_place_ref();
            if (!p) return;
            rate_terms.emplace_back(*coef, net.places[*p]);
            first = false;
            if (at_end() || peek().text != "+") break;
            ++pos;
        }
        finish_line();
    }

    void parse_line(const std::string& line) {
        toks = tokenize(line);
        pos = 0;
        if (toks.empty()) return;
        Token head = toks[pos++];
        if (!saw_net && head.text != "net") {
            error(head.column, "missing net header: the first line must be 'net <name>'");
            saw_net = true;  // report once, then keep parsing the actual directive
            net.name = "unnamed";
        }
        if (head.text == "net")
            parse_net_line();
        else if (head.text == "param")
            parse_param_line();
        else if (head.text == "place")
            parse_place_line();
        else if (head.text == "trans")
            parse_trans_line();
        else if (head.text == "rate")
            parse_rate_line();
        else
            error(head.column,
                  "unknown directive '" + head.text +
                      "'; expected net, param, place, trans, or rate");
    }

    ParsedModel finish() {
        if (!saw_net) diags.push_back({1, 1, "missing net header"});
        net.rate_coeffs.assign(net.places.size(), 0);
        for (const auto& [coef, place] : rate_terms) net.rate_coeffs[place_ids[place]] += coef;
        net.rate_constant = rate_const;
        bool failed = std::any_of(diags.begin(), diags.end(),
                                  [](const Diagnostic& d) { return d.is_error(); });
        ParsedModel out;
        out.diagnostics = std::move(diags);
        if (!failed) out.net = std::move(net);
        return out;
    }
};

}  // namespace

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream os;
    os << "line " << d.line << ", column " << d.column << ": " << d.message;
    return os.str();
}

ParsedModel parse_model(const std::string& text) {
    Parser parser;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++parser.line_no;
        parser.parse_line(line);
    }
    if (parser.line_no == 0) {
        parser.line_no = 1;  // empty input still gets a positioned diagnostic
    }
    return parser.finish();
}

std::string render_model(const PcTPN& net) {
    std::ostringstream os;
    os << "net " << net.name << "\n";
    for (const auto& p : net.params) os << "param " << p << "\n";
    for (size_t i = 0; i < net.places.size(); ++i)
        os << "place " << net.places[i] << " init " << net.initial[i] << "\n";

    bool any_rate = net.rate_constant != 0;
    for (long long c : net.rate_coeffs) any_rate = any_rate || c != 0;
    if (any_rate && !net.places.empty()) {
        os << "rate ";
        bool first = true;
        for (size_t i = 0; i < net.places.size(); ++i) {
            if (net.rate_coeffs[i] == 0) continue;
            if (!first) os << " + ";
            os << net.rate_coeffs[i] << "*" << net.places[i];
            first = false;
        }
        if (first) os << "0*" << net.places[0];  // constant-only rate needs a leading term
        if (net.rate_constant != 0) os << " + " << net.rate_constant;
        os << "\n";
    }

    auto arcs = [&](const std::vector<unsigned long>& weights) {
        std::ostringstream list;
        bool first = true;
        for (size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] == 0) continue;
            if (!first) list << ",";
            list << net.places[i] << ":" << weights[i];
            first = false;
        }
        if (first) list << net.places.at(0) << ":0";  // grammar requires one pair
        return list.str();
    };
    auto bound = [](const ParamBound& b) {
        switch (b.kind) {
            case ParamBound::Kind::Infinity:
                return std::string("inf");
            case ParamBound::Kind::Parameter:
                return b.name;
            default:
                return rat_to_string(b.value);
        }
    };
    for (const auto& t : net.transitions) {
        os << "trans " << t.id << " in " << arcs(t.pre) << " out " << arcs(t.post)
           << " interval [" << bound(t.interval.left) << "," << bound(t.interval.right) << "]";
        if (t.discrete_cost != 0) os << " cost " << t.discrete_cost;
        os << "\n";
    }
    return os.str();
}

}  // namespace pcsynth
