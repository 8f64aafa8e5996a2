// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcsynth/rational.hpp"

namespace pcsynth {

// ── Variables ───────────────────────────────────────────────────────────────

// A variable is identified by its role and name together, so a parameter may
// share a name with a transition clock without colliding.
enum class VarRole { Clock, Cost, Param };

struct Variable {
    VarRole role;
    std::string name;

    auto operator<=>(const Variable&) const = default;

    static Variable clock(std::string n) { return {VarRole::Clock, std::move(n)}; }
    static Variable param(std::string n) { return {VarRole::Param, std::move(n)}; }
    static Variable cost() { return {VarRole::Cost, "c"}; }
};

inline std::string to_string(const Variable& v) {
    return v.role == VarRole::Cost ? "c" : v.name;
}

// Ordered list of distinct variables. The order fixes the coordinate layout
// of generator vectors and rendered constraints.
class VariableSpace {
  public:
    VariableSpace() = default;
    explicit VariableSpace(std::vector<Variable> vars) {
        for (auto& v : vars) append(v);
    }

    void append(const Variable& v) {
        if (contains(v)) throw std::invalid_argument("duplicate variable " + to_string(v));
        index_.emplace(v, vars_.size());
        vars_.push_back(v);
    }

    size_t size() const { return vars_.size(); }
    const Variable& at(size_t i) const { return vars_.at(i); }
    const std::vector<Variable>& variables() const { return vars_; }

    bool contains(const Variable& v) const { return index_.count(v) != 0; }
    size_t index_of(const Variable& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw std::invalid_argument("unknown variable " + to_string(v));
        return it->second;
    }

    std::vector<Variable> with_role(VarRole role) const {
        std::vector<Variable> out;
        for (const auto& v : vars_)
            if (v.role == role) out.push_back(v);
        return out;
    }

    bool operator==(const VariableSpace& other) const { return vars_ == other.vars_; }

  private:
    std::vector<Variable> vars_;
    std::map<Variable, size_t> index_;
};

// ── Linear expressions and constraints ──────────────────────────────────────

// coeffs * vars + constant, with exact rational coefficients.
struct LinearExpr {
    std::map<Variable, Rat> coeffs;
    Rat constant = 0;

    static LinearExpr of(const Variable& v, const Rat& coef = 1) {
        LinearExpr e;
        if (coef != 0) e.coeffs[v] = coef;
        return e;
    }
    static LinearExpr of(const Rat& k) {
        LinearExpr e;
        e.constant = k;
        return e;
    }

    Rat coeff(const Variable& v) const {
        auto it = coeffs.find(v);
        return it == coeffs.end() ? Rat(0) : it->second;
    }

    LinearExpr& operator+=(const LinearExpr& other) {
        for (const auto& [v, c] : other.coeffs) add_term(v, c);
        constant += other.constant;
        return *this;
    }
    LinearExpr& operator-=(const LinearExpr& other) {
        for (const auto& [v, c] : other.coeffs) add_term(v, -c);
        constant -= other.constant;
        return *this;
    }
    friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
    friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
    friend LinearExpr operator*(const Rat& k, LinearExpr e) {
        if (k == 0) return LinearExpr{};
        for (auto& [v, c] : e.coeffs) c *= k;
        e.constant *= k;
        return e;
    }

    void add_term(const Variable& v, const Rat& c) {
        auto [it, inserted] = coeffs.emplace(v, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        } else if (c == 0) {
            coeffs.erase(it);
        }
    }

    bool is_constant() const { return coeffs.empty(); }

    Rat evaluate(const std::map<Variable, Rat>& point) const {
        Rat acc = constant;
        for (const auto& [v, c] : coeffs) {
            auto it = point.find(v);
            if (it == point.end()) throw std::invalid_argument("point misses variable " + to_string(v));
            acc += c * it->second;
        }
        return acc;
    }

    bool operator==(const LinearExpr&) const = default;
};

enum class Rel { LessEq, Eq };  // expr <= 0 or expr == 0

struct Constraint {
    LinearExpr expr;
    Rel rel = Rel::LessEq;

    // lhs <= rhs, lhs >= rhs, lhs == rhs
    static Constraint le(const LinearExpr& lhs, const LinearExpr& rhs) {
        return {lhs - rhs, Rel::LessEq};
    }
    static Constraint ge(const LinearExpr& lhs, const LinearExpr& rhs) {
        return {rhs - lhs, Rel::LessEq};
    }
    static Constraint eq(const LinearExpr& lhs, const LinearExpr& rhs) {
        return {lhs - rhs, Rel::Eq};
    }

    bool satisfied_by(const std::map<Variable, Rat>& point) const {
        Rat value = expr.evaluate(point);
        return rel == Rel::Eq ? value == 0 : value <= 0;
    }

    bool operator==(const Constraint&) const = default;
};

// Scales coefficients to coprime integers; equalities get a positive leading
// coefficient. Purely syntactic, used for deduplication.
inline Constraint normalized(Constraint c) {
    mpz_class den_lcm = 1, num_gcd = 0;
    auto feed = [&](const Rat& r) {
        if (r == 0) return;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), r.get_num().get_mpz_t());
    };
    for (const auto& [v, r] : c.expr.coeffs) feed(r);
    feed(c.expr.constant);
    if (num_gcd == 0) return c;  // all-zero expression
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (scale < 0) scale = -scale;
    if (c.rel == Rel::Eq && !c.expr.coeffs.empty() && c.expr.coeffs.begin()->second < 0) scale = -scale;
    c.expr = scale * c.expr;
    return c;
}

}  // namespace pcsynth
