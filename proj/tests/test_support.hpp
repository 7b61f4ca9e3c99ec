// Test-only oracles and generators. Oracles work on dense tables over a
// fixed degree window and share no code paths with the library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "biliaison/biliaison.hpp"

namespace oracle {

using biliaison::Degree;

/// All fixtures keep jumps inside [kLo, kHi]; tables cover one extra degree
/// on each side so tails are visible.
inline constexpr Degree kLo = -25;
inline constexpr Degree kHi = 25;

inline std::int64_t count_le(const std::vector<Degree>& a, Degree l) {
    std::int64_t n = 0;
    for (Degree x : a) n += x <= l ? 1 : 0;
    return n;
}

/// Dense table of a function on [lo, hi]; constant outside.
struct Dense {
    Degree lo = kLo - 1;
    std::vector<std::int64_t> v;

    std::int64_t at(Degree l) const {
        if (l < lo) return v.front();
        const auto i = static_cast<std::size_t>(l - lo);
        return i < v.size() ? v[i] : v.back();
    }
    friend bool operator==(const Dense&, const Dense&) = default;
};

inline Dense tabulate(auto&& f, Degree lo = kLo - 1, Degree hi = kHi + 1) {
    Dense d{lo, {}};
    for (Degree l = lo; l <= hi; ++l) d.v.push_back(f(l));
    return d;
}

inline Dense dense_pair(const std::vector<Degree>& b, const std::vector<Degree>& a) {
    return tabulate([&](Degree l) { return count_le(b, l) - count_le(a, l); });
}

inline Dense dense_of(const biliaison::SignedStep& s) {
    return tabulate([&](Degree l) { return s.value(l); });
}

/// Rebuilds a sequence from a non-decreasing, non-negative dense table that
/// starts at 0: each unit increase at l contributes one entry l.
inline std::vector<Degree> seq_of_dense(const Dense& d) {
    std::vector<Degree> out;
    std::int64_t prev = 0;
    for (std::size_t i = 0; i < d.v.size(); ++i) {
        for (std::int64_t k = prev; k < d.v[i]; ++k) out.push_back(d.lo + static_cast<Degree>(i));
        prev = d.v[i];
    }
    return out;
}

inline std::vector<Degree> dense_meet(const std::vector<Degree>& a, const std::vector<Degree>& b) {
    return seq_of_dense(tabulate([&](Degree l) { return std::min(count_le(a, l), count_le(b, l)); }));
}

inline std::vector<Degree> dense_join(const std::vector<Degree>& a, const std::vector<Degree>& b) {
    return seq_of_dense(tabulate([&](Degree l) { return std::max(count_le(a, l), count_le(b, l)); }));
}

/// C(n, k) from Pascal's triangle; small arguments only.
inline std::int64_t binom(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) return 0;
    std::vector<std::vector<std::int64_t>> t(static_cast<std::size_t>(n + 1));
    for (std::int64_t i = 0; i <= n; ++i) {
        t[i].assign(static_cast<std::size_t>(i + 1), 1);
        for (std::int64_t j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t[n][k];
}

/// h0(O_{P^n}(d)) by counting monomials of degree d in n+1 variables.
inline std::int64_t monomials(int vars, std::int64_t d) {
    if (d < 0) return 0;
    if (vars == 1) return 1;
    std::int64_t total = 0;
    for (std::int64_t k = 0; k <= d; ++k) total += monomials(vars - 1, d - k);
    return total;
}

// --- generators --------------------------------------------------------------

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    }

    std::vector<Degree> raw_seq(std::size_t max_len, Degree lo, Degree hi) {
        std::vector<Degree> v(static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(max_len))));
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

    biliaison::SortedSeq seq(std::size_t max_len, Degree lo, Degree hi) {
        return biliaison::SortedSeq(raw_seq(max_len, lo, hi));
    }

    /// Random signed step with jumps in [lo, hi].
    biliaison::SignedStep step(std::size_t max_jumps, Degree lo, Degree hi, std::int64_t max_jump = 3) {
        biliaison::SignedStep::Deltas d;
        const auto n = uniform(0, static_cast<std::int64_t>(max_jumps));
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t j = uniform(-max_jump, max_jump);
            if (j != 0) d[uniform(lo, hi)] += j;
        }
        return biliaison::SignedStep(std::move(d));
    }

    /// Admissible Sigma for @p anc at floor r: breakpoints in [lo, hi],
    /// values >= 0 below e and >= r - rank E from e on, rank <= max_rank.
    biliaison::SignedStep admissible(const biliaison::PrimitiveDescriptor& anc, std::int64_t r, Degree lo,
                                     Degree hi, std::int64_t max_rank = 6) {
        const std::int64_t tail_floor = anc.first_section ? r - anc.rank : 0;
        const std::int64_t top = std::max<std::int64_t>(max_rank - anc.rank, tail_floor);
        std::map<Degree, std::int64_t> values;
        const auto n = uniform(0, 6);
        for (std::int64_t i = 0; i < n; ++i) {
            const Degree l = uniform(lo, hi);
            const bool below = anc.first_section ? l < *anc.first_section : false;
            const std::int64_t floor = below ? 0 : tail_floor;
            values[l] = uniform(floor, std::max(floor, below ? 3 : top));
        }
        // The last breakpoint fixes the rank; it must respect both floors.
        if (!values.empty()) {
            auto& last = values.rbegin()->second;
            const bool below = anc.first_section && values.rbegin()->first < *anc.first_section;
            last = std::clamp<std::int64_t>(last, below ? std::max<std::int64_t>(0, tail_floor) : tail_floor, top);
            if (below) values[*anc.first_section] = last;
        }
        return biliaison::SignedStep::from_values(values);
    }

    /// Non-negative step with jumps in [lo, hi]: a sum of boxes and tails.
    biliaison::SignedStep nonnegative(Degree lo, Degree hi, std::int64_t max_tail) {
        biliaison::SignedStep s;
        const auto boxes = uniform(0, 4);
        for (std::int64_t i = 0; i < boxes; ++i) {
            const Degree x = uniform(lo, hi), y = uniform(lo, hi);
            s += biliaison::SignedStep::box(std::min(x, y), std::max(x, y));
        }
        const auto tails = uniform(0, max_tail);
        for (std::int64_t i = 0; i < tails; ++i) s += biliaison::SignedStep::indicator(uniform(lo, hi));
        return s;
    }
};

}  // namespace oracle
