// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "pcsynth/rational.hpp"

namespace pcsynth::dd {

// Minimal generator description of a polyhedral cone: the cone is
// lin(lines) + nonneg(rays). Vectors are primitive integer-scaled rationals.
struct ConeGenerators {
    std::vector<std::vector<Rat>> lines;
    std::vector<std::vector<Rat>> rays;
};

// Generators of {y in R^dim | row * y <= 0 for every row}, by the incremental
// double description method (Bland-free, purely combinatorial adjacency).
ConeGenerators cone_generators(const std::vector<std::vector<Rat>>& rows, size_t dim);

}  // namespace pcsynth::dd
