// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcsynth/linear.hpp"

namespace pcsynth {

struct GeometryError : std::logic_error {
    using std::logic_error::logic_error;
};
struct EmptyPolyhedronError : GeometryError {
    using GeometryError::GeometryError;
};

// Minimal generator description. Coordinates follow the space order. Lines
// appear as two opposite rays; for an empty polyhedron no description exists
// and the query throws instead.
struct Generators {
    std::vector<std::vector<Rat>> vertices;
    std::vector<std::vector<Rat>> rays;
};

// Closed convex polyhedron over named rational variables, represented by
// non-strict linear constraints with generators converted on demand and
// cached. Values are immutable; every operation returns a new value.
class Polyhedron {
  public:
    Polyhedron() : Polyhedron(universe(VariableSpace{})) {}

    static Polyhedron universe(VariableSpace space);
    static Polyhedron empty(VariableSpace space);
    static Polyhedron from_constraints(VariableSpace space, std::vector<Constraint> constraints);
    static Polyhedron from_generators(VariableSpace space, const Generators& gens);

    const VariableSpace& space() const { return data_->space; }
    const std::vector<Constraint>& constraints() const { return data_->constraints; }

    bool is_empty() const;
    // True iff other is a subset of this; spaces must match.
    bool includes(const Polyhedron& other) const;
    bool equals(const Polyhedron& other) const;
    bool contains_point(const std::map<Variable, Rat>& point) const;

    Polyhedron intersect(const Polyhedron& other) const;
    Polyhedron with_constraints(std::vector<Constraint> extra) const;

    // Appends fresh unconstrained variables to the space.
    Polyhedron add_variables(const std::vector<Variable>& vars) const;

    // Eliminates the given variables exactly (Fourier-Motzkin with equality
    // substitution); the remaining variables keep their relative order.
    Polyhedron project_out(const std::vector<Variable>& victims) const;
    Polyhedron project_onto(const std::vector<Variable>& kept) const;

    const Generators& generators() const;  // throws EmptyPolyhedronError when empty

    struct Extremum {
        bool bounded;
        Rat value;                     // valid when bounded
        std::map<Variable, Rat> point; // a witness attaining the value
    };
    Extremum minimize(const LinearExpr& objective) const;  // throws when empty
    Extremum maximize(const LinearExpr& objective) const;

    // Smallest closed convex polyhedron containing every member; members must
    // share one space. Empty members are ignored; all-empty yields empty.
    static Polyhedron convex_hull_union(const std::vector<Polyhedron>& members);

    // Convex hull of the slices at integer parameter points inside the box,
    // which must give finite bounds for every parameter-role variable.
    Polyhedron integer_hull(
        const std::map<std::string, std::pair<long long, long long>>& box) const;

  private:
    struct Cache {
        std::mutex mu;
        std::optional<bool> empty;
        std::optional<Generators> gens;
    };
    struct Data {
        VariableSpace space;
        std::vector<Constraint> constraints;
        mutable Cache cache;
    };
    explicit Polyhedron(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    static Polyhedron make(VariableSpace space, std::vector<Constraint> cs);

    std::shared_ptr<const Data> data_;
};

// Rewrites variables through the mapping (identity where absent); used to
// relabel primed clocks after a successor computation.
Constraint rename_variables(const Constraint& c, const std::map<Variable, Variable>& mapping);

std::string render(const LinearExpr& expr, const VariableSpace& order);
std::string render(const Constraint& c, const VariableSpace& order);
std::string render(const Polyhedron& p);

}  // namespace pcsynth
