// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace pcsynth {

// Exact rational arithmetic. mpq_class keeps values in lowest terms with a
// positive denominator as long as every construction from a raw
// numerator/denominator pair goes through make_rat (mpq_class(n, d) alone
// does not canonicalize).
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline Rat rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return Rat(q);
}

inline Rat rat_ceil(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return Rat(q);
}

// Renders "7", "-3/4": integers without a denominator, otherwise num/den.
inline std::string rat_to_string(const Rat& r) {
    return rat_is_integer(r) ? r.get_num().get_str() : r.get_str();
}

// Accepts "7", "-3/4" and decimal literals such as "0.2" (exact: 1/5).
// Returns nullopt on malformed input.
inline std::optional<Rat> rat_from_string(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto all_digits = [](const std::string& s) {
        if (s.empty()) return false;
        for (char ch : s)
            if (ch < '0' || ch > '9') return false;
        return true;
    };
    std::string body = text;
    bool negative = false;
    if (body[0] == '-' || body[0] == '+') {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    Rat value;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class d(den);
        if (d == 0) return std::nullopt;
        value = Rat(mpz_class(num), d);
        value.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
        mpz_class scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Rat(mpz_class(whole) * scale + mpz_class(frac), scale);
        value.canonicalize();
    } else {
        if (!all_digits(body)) return std::nullopt;
        value = Rat(mpz_class(body));
    }
    return negative ? Rat(-value) : value;
}

}  // namespace pcsynth
