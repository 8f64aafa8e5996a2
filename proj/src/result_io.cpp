// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/result_io.hpp"

#include <json.hpp>
#include <sstream>

namespace pcsynth {

namespace {

using nlohmann::json;

VariableSpace param_space(const std::vector<std::string>& params) {
    VariableSpace space;
    for (const auto& p : params) space.append(Variable::param(p));
    return space;
}

std::string status_name(SearchStatus s) {
    return s == SearchStatus::Complete ? "complete" : "budget-exhausted";
}

// Explicit num/den keeps the wire format unambiguous ("6/1", "-3/4").
std::string rat_wire(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_unwire(const std::string& text) {
    auto r = rat_from_string(text);
    if (!r) throw ResultError("malformed rational '" + text + "'");
    return *r;
}

ResultDocument base_document(const PcTPN& net, const std::string& query,
                             const std::vector<Polyhedron>& members, SearchStatus status,
                             const SynthesisStats& stats) {
    ResultDocument doc;
    doc.query = query;
    doc.status = status;
    doc.params = net.params;
    doc.stats = stats;
    for (const auto& m : members) doc.disjuncts.push_back(m.constraints());
    return doc;
}

// One human line per parameter: its exact range within the region.
void render_ranges(std::ostringstream& os, const Polyhedron& region,
                   const std::vector<std::string>& params, const std::string& indent) {
    for (const auto& p : params) {
        auto var = LinearExpr::of(Variable::param(p));
        auto lo = region.minimize(var);
        auto hi = region.maximize(var);
        os << indent << p << " in ";
        os << (lo.bounded ? "[" + rat_to_string(lo.value) : "(-inf");
        os << ", ";
        os << (hi.bounded ? rat_to_string(hi.value) + "]" : "inf)");
        os << "\n";
    }
}

// True when the region is exactly the product of its per-parameter ranges,
// so the range lines alone already describe it.
bool is_box(const Polyhedron& region, const std::vector<std::string>& params) {
    std::vector<Constraint> box;
    for (const auto& p : params) {
        auto var = LinearExpr::of(Variable::param(p));
        auto lo = region.minimize(var);
        auto hi = region.maximize(var);
        if (lo.bounded) box.push_back(Constraint::ge(var, LinearExpr::of(lo.value)));
        if (hi.bounded) box.push_back(Constraint::le(var, LinearExpr::of(hi.value)));
    }
    return Polyhedron::from_constraints(region.space(), box).includes(region) &&
           region.includes(Polyhedron::from_constraints(region.space(), box));
}

}  // namespace

ResultDocument make_document(const PcTPN& net, const std::string& query,
                             const SynthesisResult& result) {
    ResultDocument doc =
        base_document(net, query, result.params, result.status, result.stats);
    doc.mode = "reach";
    doc.cost_bound = result.cost_bound;
    return doc;
}

ResultDocument make_document(const PcTPN& net, const std::string& query,
                             const OptResult& result) {
    ResultDocument doc =
        base_document(net, query, result.params, result.status, result.stats);
    doc.mode = "mincost";
    doc.cost = result.cost;
    return doc;
}

std::vector<Polyhedron> document_regions(const ResultDocument& doc) {
    std::vector<Polyhedron> out;
    auto space = param_space(doc.params);
    for (const auto& cs : doc.disjuncts) out.push_back(Polyhedron::from_constraints(space, cs));
    return out;
}

std::string render_result(const ResultDocument& doc, ResultFormat format) {
    if (format == ResultFormat::Human) {
        std::ostringstream os;
        os << "query: " << doc.query << "\n";
        os << "mode: " << doc.mode << "\n";
        os << "status: " << status_name(doc.status) << "\n";
        if (doc.cost_bound) os << "cost bound: " << rat_to_string(*doc.cost_bound) << "\n";
        if (doc.mode == "mincost") {
            if (doc.cost)
                os << "minimum cost: " << rat_to_string(*doc.cost) << "\n";
            else
                os << "minimum cost: unreachable\n";
        }
        if (doc.status == SearchStatus::BudgetExhausted)
            os << "note: the class budget ran out; this is a sound partial answer\n";

        auto regions = document_regions(doc);
        bool any = false;
        for (const auto& r : regions) any = any || !r.is_empty();
        if (!any) {
            os << "no valuation satisfies the query\n";
        } else if (doc.params.empty()) {
            os << "the net has no parameters; the query holds as stated\n";
        } else {
            os << "parameters satisfying the query:\n";
            for (size_t i = 0; i < regions.size(); ++i) {
                if (regions[i].is_empty()) continue;
                std::string indent = "  ";
                if (regions.size() > 1) {
                    os << "  option " << i + 1 << ":\n";
                    indent = "    ";
                }
                render_ranges(os, regions[i], doc.params, indent);
                if (!is_box(regions[i], doc.params)) {
                    os << indent << "with:\n";
                    for (const auto& c : doc.disjuncts[i])
                        os << indent << "  " << render(c, regions[i].space()) << "\n";
                }
            }
        }
        os << "classes explored: " << doc.stats.explored << ", pruned: " << doc.stats.subsumed
           << ", goal hits: " << doc.stats.goal_hits << ", max depth: " << doc.stats.max_depth
           << "\n";
        return os.str();
    }

    json out;
    out["format"] = "pcsynth-result";
    out["version"] = 1;
    out["query"] = doc.query;
    out["mode"] = doc.mode;
    out["status"] = status_name(doc.status);
    out["cost"] = doc.cost ? json(rat_wire(*doc.cost)) : json(nullptr);
    out["cost_bound"] = doc.cost_bound ? json(rat_wire(*doc.cost_bound)) : json(nullptr);
    out["params"] = doc.params;
    json disjuncts = json::array();
    for (const auto& cs : doc.disjuncts) {
        json system = json::array();
        for (const auto& c : cs) {
            json terms = json::object();
            for (const auto& [var, coef] : c.expr.coeffs) terms[var.name] = rat_wire(coef);
            system.push_back({{"terms", terms},
                              {"rel", c.rel == Rel::Eq ? "==" : "<="},
                              {"rhs", rat_wire(-c.expr.constant)}});
        }
        disjuncts.push_back(system);
    }
    out["disjuncts"] = disjuncts;
    out["stats"] = {{"explored", doc.stats.explored},
                    {"subsumed", doc.stats.subsumed},
                    {"goal_hits", doc.stats.goal_hits},
                    {"max_depth", doc.stats.max_depth}};
    return out.dump(2) + "\n";
}

ResultDocument parse_result(const std::string& structured_text) {
    json in;
    try {
        in = json::parse(structured_text);
    } catch (const json::exception& e) {
        throw ResultError(std::string("malformed result document: ") + e.what());
    }
    try {
        if (in.at("format") != "pcsynth-result") throw ResultError("not a pcsynth result");
        ResultDocument doc;
        doc.query = in.at("query");
        doc.mode = in.at("mode");
        std::string status = in.at("status");
        if (status == "complete")
            doc.status = SearchStatus::Complete;
        else if (status == "budget-exhausted")
            doc.status = SearchStatus::BudgetExhausted;
        else
            throw ResultError("unknown status '" + status + "'");
        if (!in.at("cost").is_null()) doc.cost = rat_unwire(in.at("cost").get<std::string>());
        if (!in.at("cost_bound").is_null()) doc.cost_bound = rat_unwire(in.at("cost_bound").get<std::string>());
        doc.params = in.at("params").get<std::vector<std::string>>();
        for (const auto& system : in.at("disjuncts")) {
            std::vector<Constraint> cs;
            for (const auto& item : system) {
                LinearExpr expr;
                for (const auto& [name, coef] : item.at("terms").items())
                    expr.add_term(Variable::param(name), rat_unwire(coef.get<std::string>()));
                expr.constant = -rat_unwire(item.at("rhs").get<std::string>());
                std::string rel = item.at("rel");
                if (rel != "==" && rel != "<=") throw ResultError("unknown relation '" + rel + "'");
                cs.push_back({std::move(expr), rel == "==" ? Rel::Eq : Rel::LessEq});
            }
            doc.disjuncts.push_back(std::move(cs));
        }
        const auto& stats = in.at("stats");
        doc.stats.explored = stats.at("explored");
        doc.stats.subsumed = stats.at("subsumed");
        doc.stats.goal_hits = stats.at("goal_hits");
        doc.stats.max_depth = stats.at("max_depth");
        return doc;
    } catch (const json::exception& e) {
        throw ResultError(std::string("incomplete result document: ") + e.what());
    }
}

}  // namespace pcsynth
