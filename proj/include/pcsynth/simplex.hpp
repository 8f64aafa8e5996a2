// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "pcsynth/rational.hpp"

namespace pcsynth::lp {

enum class Status { Optimal, Unbounded, Infeasible };

// a * x <= b, or a * x == b when equality is set; x is free in sign.
struct Row {
    std::vector<Rat> a;
    Rat b;
    bool equality = false;
};

struct Solution {
    Status status;
    Rat value;               // objective at the optimum, valid when Optimal
    std::vector<Rat> point;  // a minimizer (a basic solution), valid when Optimal
};

// Minimizes objective * x subject to the rows. Exact two-phase simplex with
// Bland's rule, so it terminates on every input.
Solution minimize(const std::vector<Row>& rows, const std::vector<Rat>& objective);

inline bool feasible(const std::vector<Row>& rows, size_t dim) {
    return minimize(rows, std::vector<Rat>(dim, Rat(0))).status != Status::Infeasible;
}

}  // namespace pcsynth::lp
