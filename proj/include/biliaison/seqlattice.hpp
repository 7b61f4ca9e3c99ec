/**
 * @file seqlattice.hpp
 * @brief Finite non-decreasing integer sequences and their counting functions.
 *
 * A sequence a = (a_1 <= ... <= a_u) is identified with its counting function
 * Sigma(a, l) = #{i : a_i <= l}. Comparing counting functions pointwise makes
 * the set of all such sequences a lattice.
 *
 * Naming: seq_meet is the greatest lower bound (pointwise min of counting
 * functions) and seq_join the least upper bound (pointwise max). In the
 * literature these are often written with the opposite symbols, a `v` for the
 * meet and a wedge for the join; the code uses the order-theoretic names only.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biliaison/error.hpp"

namespace biliaison {

using Degree = std::int64_t;

/// x - y, throwing instead of wrapping.
inline Degree checked_sub(Degree x, Degree y) {
    Degree out;
    if (__builtin_sub_overflow(x, y, &out)) {
        throw Error(ErrorCode::precondition, "degree difference overflows 64 bits");
    }
    return out;
}

/// Finite non-decreasing sequence of degrees. Empty is allowed.
class SortedSeq {
public:
    SortedSeq() = default;

    SortedSeq(std::initializer_list<Degree> entries) : entries_(entries) {
        std::sort(entries_.begin(), entries_.end());
    }

    /// Takes any order; entries are sorted on construction.
    explicit SortedSeq(std::vector<Degree> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end());
    }

    /// Rejects input that is not already non-decreasing.
    static SortedSeq from_sorted(std::vector<Degree> entries) {
        if (!std::is_sorted(entries.begin(), entries.end())) {
            throw Error(ErrorCode::invalid_sequence, "sequence entries are not non-decreasing");
        }
        SortedSeq out;
        out.entries_ = std::move(entries);
        return out;
    }

    std::span<const Degree> entries() const noexcept { return entries_; }
    const std::vector<Degree>& vec() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    Degree front() const { return entries_.front(); }
    Degree back() const { return entries_.back(); }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }
    Degree operator[](std::size_t i) const { return entries_[i]; }

    /// Multiset union (the direct sum O(a) + O(c) on the level of twists).
    SortedSeq merged(const SortedSeq& other) const {
        SortedSeq out;
        out.entries_.reserve(size() + other.size());
        std::merge(begin(), end(), other.begin(), other.end(), std::back_inserter(out.entries_));
        return out;
    }

    /// The largest `count` entries, still ascending.
    SortedSeq largest(std::size_t count) const {
        if (count > size()) {
            throw Error(ErrorCode::precondition, "cannot take more entries than the sequence has");
        }
        SortedSeq out;
        out.entries_.assign(entries_.end() - static_cast<std::ptrdiff_t>(count), entries_.end());
        return out;
    }

    friend bool operator==(const SortedSeq&, const SortedSeq&) = default;

private:
    std::vector<Degree> entries_;
};

/// Number of entries <= l.
inline std::size_t sigma_at(const SortedSeq& a, Degree l) {
    return static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), l) - a.begin());
}

/// Distinct entries of a and b in ascending order. Both counting functions
/// are constant between consecutive points of this set.
inline std::vector<Degree> jump_points(const SortedSeq& a, const SortedSeq& b) {
    std::vector<Degree> pts;
    pts.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(pts));
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Smallest l with Sigma(a,l) > Sigma(b,l), or nullopt when a <= b.
inline std::optional<Degree> seq_le_witness(const SortedSeq& a, const SortedSeq& b) {
    for (Degree l : jump_points(a, b)) {
        if (sigma_at(a, l) > sigma_at(b, l)) return l;
    }
    return std::nullopt;
}

inline bool seq_le(const SortedSeq& a, const SortedSeq& b) { return !seq_le_witness(a, b).has_value(); }

/// Counting profile: value at each key holds until the next key; 0 before the
/// first key.
using CountingProfile = std::map<Degree, std::int64_t>;

/// Inverse of the counting function. Rejects negative or decreasing profiles.
inline SortedSeq from_sigma(const CountingProfile& profile) {
    std::vector<Degree> entries;
    std::int64_t previous = 0;
    for (const auto& [degree, value] : profile) {
        if (value < 0) {
            throw Error(ErrorCode::invalid_profile,
                        "counting profile is negative at degree " + std::to_string(degree));
        }
        if (value < previous) {
            throw Error(ErrorCode::invalid_profile,
                        "counting profile decreases at degree " + std::to_string(degree));
        }
        entries.insert(entries.end(), static_cast<std::size_t>(value - previous), degree);
        previous = value;
    }
    return SortedSeq::from_sorted(std::move(entries));
}

/// Counting profile of a sampled at its own jump points.
inline CountingProfile sigma_profile(const SortedSeq& a) {
    CountingProfile out;
    for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::int64_t>(i + 1);
    return out;
}

namespace detail {

template <typename Combine>
SortedSeq combine_counts(const SortedSeq& a, const SortedSeq& b, Combine combine) {
    CountingProfile profile;
    for (Degree l : jump_points(a, b)) {
        profile[l] = static_cast<std::int64_t>(combine(sigma_at(a, l), sigma_at(b, l)));
    }
    return from_sigma(profile);
}

}  // namespace detail

/// Greatest lower bound: Sigma(c,l) = min(Sigma(a,l), Sigma(b,l)).
inline SortedSeq seq_meet(const SortedSeq& a, const SortedSeq& b) {
    return detail::combine_counts(a, b, [](std::size_t x, std::size_t y) { return std::min(x, y); });
}

/// Least upper bound: Sigma(c,l) = max(Sigma(a,l), Sigma(b,l)).
inline SortedSeq seq_join(const SortedSeq& a, const SortedSeq& b) {
    return detail::combine_counts(a, b, [](std::size_t x, std::size_t y) { return std::max(x, y); });
}

struct MeetJoin {
    SortedSeq meet;
    SortedSeq join;
};

/**
 * @brief Positional route to meet and join.
 *
 * Pads the shorter sequence with "infinity" (a non-entry), then takes the
 * position-wise maximum for the meet and the position-wise minimum for the
 * join, dropping infinities. Kept independent of the counting-function route
 * so the two can check each other.
 */
inline MeetJoin padded_oracle(const SortedSeq& a, const SortedSeq& b) {
    using Padded = std::optional<Degree>;  // nullopt = infinity
    const std::size_t n = std::max(a.size(), b.size());
    auto at = [](const SortedSeq& s, std::size_t i) -> Padded {
        return i < s.size() ? Padded{s[i]} : Padded{};
    };
    std::vector<Degree> meet;
    std::vector<Degree> join;
    for (std::size_t i = 0; i < n; ++i) {
        const Padded x = at(a, i);
        const Padded y = at(b, i);
        if (x && y) {
            meet.push_back(std::max(*x, *y));
            join.push_back(std::min(*x, *y));
        } else {
            join.push_back(x ? *x : *y);
        }
    }
    return {SortedSeq::from_sorted(std::move(meet)), SortedSeq::from_sorted(std::move(join))};
}

}  // namespace biliaison
