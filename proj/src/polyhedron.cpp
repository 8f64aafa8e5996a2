// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/polyhedron.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "pcsynth/double_description.hpp"
#include "pcsynth/simplex.hpp"

namespace pcsynth {
namespace {

std::vector<Rat> densify(const LinearExpr& e, const VariableSpace& space) {
    std::vector<Rat> out(space.size(), Rat(0));
    for (const auto& [v, c] : e.coeffs) out[space.index_of(v)] = c;
    return out;
}

lp::Row to_row(const Constraint& c, const VariableSpace& space) {
    return {densify(c.expr, space), -c.expr.constant, c.rel == Rel::Eq};
}

std::vector<lp::Row> to_rows(const std::vector<Constraint>& cs, const VariableSpace& space) {
    std::vector<lp::Row> rows;
    rows.reserve(cs.size());
    for (const auto& c : cs) rows.push_back(to_row(c, space));
    return rows;
}

Constraint false_constraint() {
    Constraint c;
    c.expr.constant = 1;
    c.rel = Rel::LessEq;
    return c;
}

// Normalizes, deduplicates and drops trivially true rows. Returns false when
// a constant row is inconsistent, which proves the whole system empty.
bool clean(std::vector<Constraint>& cs) {
    std::vector<Constraint> out;
    std::set<std::pair<int, std::pair<std::map<Variable, Rat>, Rat>>> seen;
    for (auto& c : cs) {
        Constraint n = normalized(std::move(c));
        if (n.expr.is_constant()) {
            if (n.rel == Rel::Eq ? n.expr.constant != 0 : n.expr.constant > 0) return false;
            continue;
        }
        auto key = std::make_pair(n.rel == Rel::Eq ? 1 : 0,
                                  std::make_pair(n.expr.coeffs, n.expr.constant));
        if (seen.insert(std::move(key)).second) out.push_back(std::move(n));
    }
    cs = std::move(out);
    return true;
}

// Removes inequalities implied by the rest. Equalities are left alone.
void lp_prune(const VariableSpace& space, std::vector<Constraint>& cs) {
    for (size_t i = cs.size(); i-- > 0;) {
        if (cs[i].rel != Rel::LessEq) continue;
        std::vector<Constraint> others;
        others.reserve(cs.size() - 1);
        for (size_t j = 0; j < cs.size(); ++j)
            if (j != i) others.push_back(cs[j]);
        auto sol = lp::minimize(to_rows(others, space),
                                [&] {
                                    auto obj = densify(cs[i].expr, space);
                                    for (auto& x : obj) x = -x;
                                    return obj;
                                }());
        if (sol.status == lp::Status::Infeasible) {
            cs = {false_constraint()};
            return;
        }
        if (sol.status == lp::Status::Optimal && -sol.value + cs[i].expr.constant <= 0)
            cs.erase(cs.begin() + i);
    }
}

}  // namespace

Polyhedron Polyhedron::make(VariableSpace space, std::vector<Constraint> cs) {
    for (const auto& c : cs)
        for (const auto& [v, coef] : c.expr.coeffs)
            if (!space.contains(v))
                throw GeometryError("constraint mentions variable outside the space: " + to_string(v));
    if (!clean(cs)) cs = {false_constraint()};
    auto data = std::make_shared<Data>();
    data->space = std::move(space);
    data->constraints = std::move(cs);
    return Polyhedron(std::move(data));
}

Polyhedron Polyhedron::universe(VariableSpace space) { return make(std::move(space), {}); }

Polyhedron Polyhedron::empty(VariableSpace space) {
    return make(std::move(space), {false_constraint()});
}

Polyhedron Polyhedron::from_constraints(VariableSpace space, std::vector<Constraint> constraints) {
    return make(std::move(space), std::move(constraints));
}

bool Polyhedron::is_empty() const {
    auto& cache = data_->cache;
    std::lock_guard lock(cache.mu);
    if (!cache.empty)
        cache.empty = !lp::feasible(to_rows(data_->constraints, data_->space), data_->space.size());
    return *cache.empty;
}

bool Polyhedron::includes(const Polyhedron& other) const {
    if (!(space() == other.space())) throw GeometryError("includes across different spaces");
    if (other.is_empty()) return true;
    auto rows = to_rows(other.constraints(), other.space());
    for (const auto& c : constraints()) {
        auto obj = densify(c.expr, space());
        for (auto& x : obj) x = -x;  // maximize expr = -minimize(-expr)
        auto sol = lp::minimize(rows, obj);
        assert(sol.status != lp::Status::Infeasible);
        if (sol.status == lp::Status::Unbounded) return false;
        if (-sol.value + c.expr.constant > 0) return false;
        if (c.rel == Rel::Eq) {
            auto sol2 = lp::minimize(rows, densify(c.expr, space()));
            if (sol2.status == lp::Status::Unbounded) return false;
            if (sol2.value + c.expr.constant < 0) return false;
        }
    }
    return true;
}

bool Polyhedron::equals(const Polyhedron& other) const {
    return includes(other) && other.includes(*this);
}

bool Polyhedron::contains_point(const std::map<Variable, Rat>& point) const {
    for (const auto& v : space().variables())
        if (!point.count(v)) throw GeometryError("point misses variable " + to_string(v));
    for (const auto& c : constraints())
        if (!c.satisfied_by(point)) return false;
    return true;
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
    if (!(space() == other.space())) throw GeometryError("intersect across different spaces");
    auto cs = constraints();
    cs.insert(cs.end(), other.constraints().begin(), other.constraints().end());
    return make(space(), std::move(cs));
}

Polyhedron Polyhedron::with_constraints(std::vector<Constraint> extra) const {
    auto cs = constraints();
    cs.insert(cs.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
    return make(space(), std::move(cs));
}

Polyhedron Polyhedron::add_variables(const std::vector<Variable>& vars) const {
    VariableSpace extended = space();
    for (const auto& v : vars) extended.append(v);
    return make(std::move(extended), constraints());
}

Polyhedron Polyhedron::project_out(const std::vector<Variable>& victims) const {
    std::set<Variable> victim_set;
    for (const auto& v : victims) {
        if (!space().contains(v)) throw GeometryError("project_out of unknown variable " + to_string(v));
        victim_set.insert(v);
    }
    VariableSpace remaining;
    for (const auto& v : space().variables())
        if (!victim_set.count(v)) remaining.append(v);
    if (victim_set.empty()) return *this;

    std::vector<Constraint> cs = constraints();
    while (!victim_set.empty()) {
        // Prefer a victim pinned by an equality: substitution is exact and
        // adds no rows. Otherwise eliminate the cheapest one.
        Variable chosen = *victim_set.begin();
        size_t chosen_eq = SIZE_MAX;
        long best_cost = -1;
        for (const auto& v : victim_set) {
            size_t eq = SIZE_MAX;
            long pos = 0, neg = 0;
            for (size_t i = 0; i < cs.size(); ++i) {
                Rat coef = cs[i].expr.coeff(v);
                if (coef == 0) continue;
                if (cs[i].rel == Rel::Eq) {
                    eq = i;
                    break;
                }
                (coef > 0 ? pos : neg)++;
            }
            if (eq != SIZE_MAX) {
                chosen = v;
                chosen_eq = eq;
                break;
            }
            long cost = pos * neg - (pos + neg);
            if (best_cost == -1 || cost < best_cost) {
                best_cost = cost;
                chosen = v;
                chosen_eq = SIZE_MAX;
            }
        }

        if (chosen_eq != SIZE_MAX) {
            Constraint eq = cs[chosen_eq];
            Rat a = eq.expr.coeff(chosen);
            LinearExpr solution = Rat(-1) / a * eq.expr;  // chosen = solution + chosen
            solution.add_term(chosen, Rat(1));
            cs.erase(cs.begin() + chosen_eq);
            for (auto& c : cs) {
                Rat coef = c.expr.coeff(chosen);
                if (coef == 0) continue;
                c.expr.add_term(chosen, -coef);
                c.expr += coef * solution;
            }
        } else {
            std::vector<Constraint> zero, pos, neg;
            for (auto& c : cs) {
                Rat coef = c.expr.coeff(chosen);
                if (coef == 0)
                    zero.push_back(std::move(c));
                else if (coef > 0)
                    pos.push_back(std::move(c));
                else
                    neg.push_back(std::move(c));
            }
            cs = std::move(zero);
            for (const auto& p : pos) {
                Rat ap = p.expr.coeff(chosen);
                for (const auto& n : neg) {
                    Rat an = n.expr.coeff(chosen);
                    Constraint combo;
                    combo.expr = Rat(1) / ap * p.expr + Rat(-1) / an * n.expr;
                    combo.expr.add_term(chosen, -combo.expr.coeff(chosen));
                    cs.push_back(std::move(combo));
                }
            }
        }
        victim_set.erase(chosen);
        if (!clean(cs)) return empty(remaining);
        size_t ineqs = 0;
        for (const auto& c : cs) ineqs += c.rel == Rel::LessEq;
        if (ineqs > 32) lp_prune(space(), cs);  // leftover victims still occur in cs
    }

    size_t ineqs = 0;
    for (const auto& c : cs) ineqs += c.rel == Rel::LessEq;
    if (ineqs > 12) lp_prune(remaining, cs);
    return make(std::move(remaining), std::move(cs));
}

Polyhedron Polyhedron::project_onto(const std::vector<Variable>& kept) const {
    std::set<Variable> keep(kept.begin(), kept.end());
    std::vector<Variable> victims;
    for (const auto& v : space().variables())
        if (!keep.count(v)) victims.push_back(v);
    return project_out(victims);
}

const Generators& Polyhedron::generators() const {
    auto& cache = data_->cache;
    std::lock_guard lock(cache.mu);
    if (!cache.gens) {
        const size_t d = space().size();
        std::vector<std::vector<Rat>> rows;
        for (const auto& c : constraints()) {
            auto row = densify(c.expr, space());
            row.push_back(c.expr.constant);  // a*x <= -k homogenizes to (a, k)
            if (c.rel == Rel::Eq) {
                auto neg = row;
                for (auto& x : neg) x = -x;
                rows.push_back(std::move(neg));
            }
            rows.push_back(std::move(row));
        }
        std::vector<Rat> lambda_row(d + 1, Rat(0));
        lambda_row[d] = -1;
        rows.push_back(std::move(lambda_row));

        auto cone = dd::cone_generators(rows, d + 1);
        Generators g;
        for (const auto& r : cone.rays) {
            if (r[d] > 0) {
                std::vector<Rat> v(d);
                for (size_t k = 0; k < d; ++k) v[k] = r[k] / r[d];
                g.vertices.push_back(std::move(v));
            } else {
                assert(r[d] == 0);
                g.rays.emplace_back(r.begin(), r.begin() + d);
            }
        }
        for (const auto& l : cone.lines) {
            assert(l[d] == 0);
            std::vector<Rat> fwd(l.begin(), l.begin() + d), bwd = fwd;
            for (auto& x : bwd) x = -x;
            g.rays.push_back(std::move(fwd));
            g.rays.push_back(std::move(bwd));
        }
        std::sort(g.vertices.begin(), g.vertices.end());
        std::sort(g.rays.begin(), g.rays.end());
        cache.empty = g.vertices.empty();
        cache.gens = std::move(g);
    }
    if (cache.gens->vertices.empty())
        throw EmptyPolyhedronError("generator query on an empty polyhedron");
    return *cache.gens;
}

Polyhedron::Extremum Polyhedron::minimize(const LinearExpr& objective) const {
    auto sol = lp::minimize(to_rows(constraints(), space()), densify(objective, space()));
    if (sol.status == lp::Status::Infeasible)
        throw EmptyPolyhedronError("minimize over an empty polyhedron");
    if (sol.status == lp::Status::Unbounded) return {false, Rat(0), {}};
    Extremum ext{true, sol.value + objective.constant, {}};
    for (size_t i = 0; i < space().size(); ++i) ext.point[space().at(i)] = sol.point[i];
    return ext;
}

Polyhedron::Extremum Polyhedron::maximize(const LinearExpr& objective) const {
    auto ext = minimize(Rat(-1) * objective);
    if (ext.bounded) ext.value = -ext.value;
    return ext;
}

Polyhedron Polyhedron::from_generators(VariableSpace space, const Generators& gens) {
    if (gens.vertices.empty()) {
        if (!gens.rays.empty())
            throw GeometryError("generator description without a vertex");
        return empty(std::move(space));
    }
    const size_t d = space.size();
    std::vector<std::vector<Rat>> rows;
    for (const auto& v : gens.vertices) {
        if (v.size() != d) throw GeometryError("vertex arity mismatch");
        auto row = v;
        row.push_back(Rat(1));
        rows.push_back(std::move(row));
    }
    for (const auto& r : gens.rays) {
        if (r.size() != d) throw GeometryError("ray arity mismatch");
        auto row = r;
        row.push_back(Rat(0));
        rows.push_back(std::move(row));
    }
    // The polar cone's rays are the facets, its lines the equalities.
    auto polar = dd::cone_generators(rows, d + 1);
    std::vector<Constraint> cs;
    auto to_constraint = [&](const std::vector<Rat>& alpha, Rel rel) {
        LinearExpr e;
        for (size_t k = 0; k < d; ++k)
            if (alpha[k] != 0) e.coeffs[space.at(k)] = alpha[k];
        if (e.coeffs.empty()) return;  // the trivial 0 <= 1 face
        e.constant = alpha[d];
        cs.push_back({std::move(e), rel});
    };
    for (const auto& r : polar.rays) to_constraint(r, Rel::LessEq);
    for (const auto& l : polar.lines) to_constraint(l, Rel::Eq);
    return make(std::move(space), std::move(cs));
}

Polyhedron Polyhedron::convex_hull_union(const std::vector<Polyhedron>& members) {
    if (members.empty()) throw GeometryError("convex_hull_union of no members");
    const VariableSpace& space = members.front().space();
    Generators pooled;
    for (const auto& m : members) {
        if (!(m.space() == space)) throw GeometryError("convex_hull_union across different spaces");
        if (m.is_empty()) continue;
        const Generators& g = m.generators();
        pooled.vertices.insert(pooled.vertices.end(), g.vertices.begin(), g.vertices.end());
        pooled.rays.insert(pooled.rays.end(), g.rays.begin(), g.rays.end());
    }
    return from_generators(space, pooled);
}

Polyhedron Polyhedron::integer_hull(
    const std::map<std::string, std::pair<long long, long long>>& box) const {
    auto params = space().with_role(VarRole::Param);
    for (const auto& [name, bounds] : box)
        if (!space().contains(Variable::param(name)))
            throw GeometryError("integer hull box names unknown parameter " + name);
    unsigned long long count = 1;
    for (const auto& p : params) {
        auto it = box.find(p.name);
        if (it == box.end())
            throw GeometryError("integer hull requires bounds for parameter " + p.name);
        if (it->second.first > it->second.second)
            throw GeometryError("integer hull box is empty for parameter " + p.name);
        unsigned long long width = (unsigned long long)(it->second.second - it->second.first) + 1;
        if (width > 200000 || count * width > 200000)
            throw GeometryError("integer hull box too large");
        count *= width;
    }

    std::vector<long long> point(params.size());
    for (size_t i = 0; i < params.size(); ++i) point[i] = box.at(params[i].name).first;

    Generators pooled;
    for (;;) {
        std::vector<Constraint> pin;
        for (size_t i = 0; i < params.size(); ++i)
            pin.push_back(Constraint::eq(LinearExpr::of(params[i]),
                                         LinearExpr::of(make_rat(static_cast<long>(point[i])))));
        Polyhedron slice = with_constraints(std::move(pin));
        if (!slice.is_empty()) {
            const Generators& g = slice.generators();
            pooled.vertices.insert(pooled.vertices.end(), g.vertices.begin(), g.vertices.end());
            pooled.rays.insert(pooled.rays.end(), g.rays.begin(), g.rays.end());
        }
        size_t k = 0;
        for (; k < params.size(); ++k) {
            if (point[k] < box.at(params[k].name).second) {
                ++point[k];
                break;
            }
            point[k] = box.at(params[k].name).first;
        }
        if (k == params.size()) break;
    }
    return from_generators(space(), pooled);
}

// ── Rendering and renaming ──────────────────────────────────────────────────

Constraint rename_variables(const Constraint& c, const std::map<Variable, Variable>& mapping) {
    Constraint out;
    out.rel = c.rel;
    out.expr.constant = c.expr.constant;
    for (const auto& [v, coef] : c.expr.coeffs) {
        auto it = mapping.find(v);
        out.expr.add_term(it == mapping.end() ? v : it->second, coef);
    }
    return out;
}

std::string render(const LinearExpr& expr, const VariableSpace& order) {
    std::string out;
    for (const auto& v : order.variables()) {
        Rat c = expr.coeff(v);
        if (c == 0) continue;
        if (out.empty()) {
            if (c == -1)
                out += "-";
            else if (c != 1)
                out += rat_to_string(c) + "*";
        } else {
            out += c < 0 ? " - " : " + ";
            Rat a = abs(c);
            if (a != 1) out += rat_to_string(a) + "*";
        }
        out += to_string(v);
    }
    if (out.empty()) return rat_to_string(expr.constant);
    if (expr.constant != 0) {
        out += expr.constant < 0 ? " - " : " + ";
        out += rat_to_string(abs(expr.constant));
    }
    return out;
}

std::string render(const Constraint& c, const VariableSpace& order) {
    LinearExpr lhs = c.expr;
    Rat k = lhs.constant;
    lhs.constant = 0;
    return render(lhs, order) + (c.rel == Rel::Eq ? " = " : " <= ") + rat_to_string(Rat(-k));
}

std::string render(const Polyhedron& p) {
    if (p.constraints().empty()) return "{ true }";
    std::string out = "{ ";
    bool first = true;
    for (const auto& c : p.constraints()) {
        if (!first) out += ", ";
        first = false;
        out += render(c, p.space());
    }
    return out + " }";
}

}  // namespace pcsynth
