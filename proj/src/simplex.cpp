// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pcsynth/simplex.hpp"

#include <cassert>
#include <stdexcept>

namespace pcsynth::lp {
namespace {

// Dense tableau over exact rationals. Free variables are split as
// x = u - w with u, w >= 0; every row gets b >= 0 by sign flip, inequalities
// carry a slack and rows whose slack cannot seed the basis get an artificial.
struct Tableau {
    size_t m = 0, cols = 0;
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    std::vector<size_t> basis;

    void pivot(size_t r, size_t c) {
        Rat p = a[r][c];
        assert(p != 0);
        for (auto& v : a[r]) v /= p;
        b[r] /= p;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        basis[r] = c;
    }

    Rat column_value(size_t c) const {
        for (size_t i = 0; i < m; ++i)
            if (basis[i] == c) return b[i];
        return Rat(0);
    }
};

// Bland's rule: entering column is the lowest-index one with a negative
// reduced cost, the leaving row breaks ratio ties on the lowest basis index.
Status run_simplex(Tableau& t, const std::vector<Rat>& colcost, const std::vector<bool>& banned) {
    for (;;) {
        std::vector<Rat> dual(t.m);
        for (size_t i = 0; i < t.m; ++i) dual[i] = colcost[t.basis[i]];

        size_t entering = t.cols;
        for (size_t j = 0; j < t.cols && entering == t.cols; ++j) {
            if (banned[j]) continue;
            Rat reduced = colcost[j];
            for (size_t i = 0; i < t.m; ++i)
                if (dual[i] != 0) reduced -= dual[i] * t.a[i][j];
            if (reduced < 0) entering = j;
        }
        if (entering == t.cols) return Status::Optimal;

        size_t leave = t.m;
        Rat best;
        for (size_t i = 0; i < t.m; ++i) {
            if (t.a[i][entering] <= 0) continue;
            Rat ratio = t.b[i] / t.a[i][entering];
            if (leave == t.m || ratio < best ||
                (ratio == best && t.basis[i] < t.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == t.m) return Status::Unbounded;
        t.pivot(leave, entering);
    }
}

}  // namespace

Solution minimize(const std::vector<Row>& rows, const std::vector<Rat>& objective) {
    const size_t dim = objective.size();
    const size_t m = rows.size();
    for (const auto& r : rows)
        if (r.a.size() != dim) throw std::invalid_argument("lp row arity mismatch");

    // Column layout: u_0..u_{dim-1}, w_0..w_{dim-1}, slacks, artificials.
    size_t n_slack = 0;
    for (const auto& r : rows) n_slack += r.equality ? 0 : 1;

    Tableau t;
    t.m = m;
    std::vector<size_t> slack_col(m, SIZE_MAX);
    size_t next_slack = 2 * dim;
    for (size_t i = 0; i < m; ++i)
        if (!rows[i].equality) slack_col[i] = next_slack++;

    std::vector<size_t> artificial_rows;
    size_t next_art = 2 * dim + n_slack;
    std::vector<size_t> art_col(m, SIZE_MAX);
    for (size_t i = 0; i < m; ++i) {
        bool negate = rows[i].b < 0;
        // With b >= 0, an un-negated inequality row starts basic in its slack.
        if (rows[i].equality || negate) art_col[i] = next_art++;
    }
    t.cols = next_art;
    t.a.assign(m, std::vector<Rat>(t.cols, Rat(0)));
    t.b.assign(m, Rat(0));
    t.basis.assign(m, 0);

    for (size_t i = 0; i < m; ++i) {
        Rat sign = rows[i].b < 0 ? Rat(-1) : Rat(1);
        for (size_t k = 0; k < dim; ++k) {
            t.a[i][k] = sign * rows[i].a[k];
            t.a[i][dim + k] = -sign * rows[i].a[k];
        }
        if (slack_col[i] != SIZE_MAX) t.a[i][slack_col[i]] = sign;
        t.b[i] = sign * rows[i].b;
        if (art_col[i] != SIZE_MAX) {
            t.a[i][art_col[i]] = 1;
            t.basis[i] = art_col[i];
        } else {
            t.basis[i] = slack_col[i];
        }
    }

    std::vector<bool> none(t.cols, false);
    bool have_artificials = next_art > 2 * dim + n_slack;
    if (have_artificials) {
        std::vector<Rat> phase1(t.cols, Rat(0));
        for (size_t i = 0; i < m; ++i)
            if (art_col[i] != SIZE_MAX) phase1[art_col[i]] = 1;
        Status s = run_simplex(t, phase1, none);
        assert(s == Status::Optimal);  // phase 1 is always bounded below by 0
        (void)s;
        Rat infeas = 0;
        for (size_t i = 0; i < m; ++i)
            if (t.basis[i] >= 2 * dim + n_slack) infeas += t.b[i];
        if (infeas > 0) return {Status::Infeasible, Rat(0), {}};

        // Drive leftover artificials out of the basis; rows that resist are
        // redundant (all structural coefficients vanished) and are dropped.
        std::vector<size_t> keep;
        for (size_t i = 0; i < t.m; ++i) {
            if (t.basis[i] < 2 * dim + n_slack) {
                keep.push_back(i);
                continue;
            }
            size_t j = 0;
            for (; j < 2 * dim + n_slack; ++j)
                if (t.a[i][j] != 0) break;
            if (j < 2 * dim + n_slack) {
                t.pivot(i, j);
                keep.push_back(i);
            }
        }
        if (keep.size() != t.m) {
            Tableau t2;
            t2.m = keep.size();
            t2.cols = t.cols;
            for (size_t i : keep) {
                t2.a.push_back(t.a[i]);
                t2.b.push_back(t.b[i]);
                t2.basis.push_back(t.basis[i]);
            }
            t = std::move(t2);
        }
    }

    std::vector<Rat> phase2(t.cols, Rat(0));
    for (size_t k = 0; k < dim; ++k) {
        phase2[k] = objective[k];
        phase2[dim + k] = -objective[k];
    }
    std::vector<bool> banned(t.cols, false);
    for (size_t j = 2 * dim + n_slack; j < t.cols; ++j) banned[j] = true;

    Status s = run_simplex(t, phase2, banned);
    if (s == Status::Unbounded) return {Status::Unbounded, Rat(0), {}};

    Solution sol{Status::Optimal, Rat(0), std::vector<Rat>(dim, Rat(0))};
    for (size_t k = 0; k < dim; ++k) {
        sol.point[k] = t.column_value(k) - t.column_value(dim + k);
        sol.value += objective[k] * sol.point[k];
    }
    return sol;
}

}  // namespace pcsynth::lp
