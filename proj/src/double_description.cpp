// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/double_description.hpp"

#include <cassert>
#include <set>
#include <stdexcept>

namespace pcsynth::dd {
namespace {

using Vec = std::vector<Rat>;

Rat dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Rat acc = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
    return acc;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Scales to a primitive integer vector, preserving direction.
void normalize(Vec& v) {
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& x : v) {
        if (x == 0) continue;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
    }
    if (num_gcd == 0) return;
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (scale < 0) scale = -scale;
    for (auto& x : v) x *= scale;
}

void sign_normalize(Vec& v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
}

struct Ray {
    Vec v;
    std::vector<char> tight;  // tight[k]: processed row k holds with equality
};

}  // namespace

ConeGenerators cone_generators(const std::vector<std::vector<Rat>>& rows, size_t dim) {
    for (const auto& r : rows)
        if (r.size() != dim) throw std::invalid_argument("dd row arity mismatch");

    std::vector<Vec> lines;
    for (size_t i = 0; i < dim; ++i) {
        Vec e(dim, Rat(0));
        e[i] = 1;
        lines.push_back(std::move(e));
    }
    std::vector<Ray> rays;
    std::vector<Vec> processed;

    for (const auto& row : rows) {
        if (is_zero(row)) {
            for (auto& r : rays) r.tight.push_back(1);
            processed.push_back(row);
            continue;
        }

        size_t pivot_line = lines.size();
        for (size_t i = 0; i < lines.size(); ++i)
            if (dot(row, lines[i]) != 0) {
                pivot_line = i;
                break;
            }

        if (pivot_line < lines.size()) {
            // A line crosses the new hyperplane: it splits into the in-plane
            // part (absorbed by the other generators) and a satisfying ray.
            Vec l0 = lines[pivot_line];
            Rat d0 = dot(row, l0);
            if (d0 > 0) {
                for (auto& x : l0) x = -x;
                d0 = -d0;
            }
            std::vector<Vec> new_lines;
            for (size_t i = 0; i < lines.size(); ++i) {
                if (i == pivot_line) continue;
                Rat di = dot(row, lines[i]);
                Vec l = lines[i];
                if (di != 0) {
                    Rat f = di / d0;
                    for (size_t k = 0; k < dim; ++k) l[k] -= f * l0[k];
                }
                normalize(l);
                sign_normalize(l);
                new_lines.push_back(std::move(l));
            }
            lines = std::move(new_lines);
            for (auto& r : rays) {
                Rat dr = dot(row, r.v);
                if (dr != 0) {
                    Rat f = dr / d0;
                    for (size_t k = 0; k < dim; ++k) r.v[k] -= f * l0[k];
                    normalize(r.v);
                }
                // Earlier rows are tight on l0, so adjusting along l0 keeps
                // every recorded tightness bit valid.
                r.tight.push_back(1);
            }
            normalize(l0);
            Ray nr{std::move(l0), std::vector<char>(processed.size(), 1)};
            nr.tight.push_back(0);
            rays.push_back(std::move(nr));
            processed.push_back(row);
            continue;
        }

        // All lines lie in the hyperplane: split rays by sign.
        std::vector<Rat> d(rays.size());
        bool any_positive = false;
        for (size_t i = 0; i < rays.size(); ++i) {
            d[i] = dot(row, rays[i].v);
            if (d[i] > 0) any_positive = true;
        }
        if (!any_positive) {
            for (size_t i = 0; i < rays.size(); ++i) rays[i].tight.push_back(d[i] == 0);
            processed.push_back(row);
            continue;
        }

        auto common_tight = [&](const Ray& a, const Ray& b) {
            std::vector<char> z(processed.size());
            for (size_t k = 0; k < processed.size(); ++k) z[k] = a.tight[k] && b.tight[k];
            return z;
        };
        // Combinatorial adjacency: no third ray is tight on every row the
        // pair is jointly tight on. Valid because (lines, rays) stays minimal.
        auto adjacent = [&](size_t ip, size_t in) {
            auto z = common_tight(rays[ip], rays[in]);
            for (size_t j = 0; j < rays.size(); ++j) {
                if (j == ip || j == in) continue;
                bool covers = true;
                for (size_t k = 0; k < processed.size() && covers; ++k)
                    if (z[k] && !rays[j].tight[k]) covers = false;
                if (covers) return false;
            }
            return true;
        };

        std::vector<Ray> next;
        std::set<Vec> seen;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (d[i] > 0) continue;
            Ray kept = rays[i];
            kept.tight.push_back(d[i] == 0);
            seen.insert(kept.v);
            next.push_back(std::move(kept));
        }
        for (size_t ip = 0; ip < rays.size(); ++ip) {
            if (d[ip] <= 0) continue;
            for (size_t in = 0; in < rays.size(); ++in) {
                if (d[in] >= 0) continue;
                if (!adjacent(ip, in)) continue;
                Vec comb(dim);
                for (size_t k = 0; k < dim; ++k)
                    comb[k] = d[ip] * rays[in].v[k] - d[in] * rays[ip].v[k];
                normalize(comb);
                if (is_zero(comb) || !seen.insert(comb).second) continue;
                Ray nr;
                nr.tight.resize(processed.size() + 1);
                for (size_t k = 0; k < processed.size(); ++k)
                    nr.tight[k] = dot(processed[k], comb) == 0;
                nr.tight[processed.size()] = 1;
                nr.v = std::move(comb);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
        processed.push_back(row);
    }

    ConeGenerators out;
    out.lines = std::move(lines);
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

}  // namespace pcsynth::dd
