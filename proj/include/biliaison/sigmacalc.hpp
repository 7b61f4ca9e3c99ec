/**
 * @file sigmacalc.hpp
 * @brief Integer step functions on Z with finitely many jumps.
 *
 * A SignedStep is stored as its jumps: value(l) is the sum of all jumps at
 * degrees <= l. So value is 0 far to the left and equal to the sum of all
 * jumps (the eventual value) far to the right. The Sigma function of a class
 * member, Sigma(b,-) - Sigma(a,-), lives here.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "biliaison/seqlattice.hpp"

namespace biliaison {

class SignedStep {
public:
    using Deltas = std::map<Degree, std::int64_t>;

    SignedStep() = default;

    /// Zero jumps are dropped.
    explicit SignedStep(Deltas deltas) : deltas_(std::move(deltas)) { prune(); }

    /// +1 on [from, inf).
    static SignedStep indicator(Degree from) { return SignedStep(Deltas{{from, 1}}); }

    /// +1 on [lo, hi), zero if the box is empty.
    static SignedStep box(Degree lo, Degree hi) {
        if (lo >= hi) return {};
        return SignedStep(Deltas{{lo, 1}, {hi, -1}});
    }

    /// Sigma(a, -) as a step function.
    static SignedStep counting(const SortedSeq& a) {
        Deltas d;
        for (Degree x : a) ++d[x];
        return SignedStep(std::move(d));
    }

    /// Build from values sampled at breakpoints: each value holds from its
    /// key until the next key, 0 before the first key.
    static SignedStep from_values(const std::map<Degree, std::int64_t>& values) {
        Deltas d;
        std::int64_t previous = 0;
        for (const auto& [degree, v] : values) {
            if (v != previous) d[degree] = v - previous;
            previous = v;
        }
        return SignedStep(std::move(d));
    }

    const Deltas& deltas() const noexcept { return deltas_; }
    bool is_zero() const noexcept { return deltas_.empty(); }

    std::int64_t value(Degree l) const {
        std::int64_t v = 0;
        for (auto it = deltas_.begin(); it != deltas_.end() && it->first <= l; ++it) v += it->second;
        return v;
    }

    std::int64_t eventual() const {
        std::int64_t v = 0;
        for (const auto& [degree, jump] : deltas_) v += jump;
        return v;
    }

    std::optional<Degree> min_support() const {
        if (deltas_.empty()) return std::nullopt;
        return deltas_.begin()->first;
    }
    std::optional<Degree> max_support() const {
        if (deltas_.empty()) return std::nullopt;
        return deltas_.rbegin()->first;
    }

    std::vector<Degree> support() const {
        std::vector<Degree> out;
        out.reserve(deltas_.size());
        for (const auto& kv : deltas_) out.push_back(kv.first);
        return out;
    }

    /// Values at each jump degree, ascending.
    std::map<Degree, std::int64_t> values_at_jumps() const {
        std::map<Degree, std::int64_t> out;
        std::int64_t v = 0;
        for (const auto& [degree, jump] : deltas_) out[degree] = (v += jump);
        return out;
    }

    SignedStep operator-() const {
        Deltas d = deltas_;
        for (auto& kv : d) kv.second = -kv.second;
        return SignedStep(std::move(d));
    }

    SignedStep& operator+=(const SignedStep& rhs) {
        for (const auto& [degree, jump] : rhs.deltas_) deltas_[degree] += jump;
        prune();
        return *this;
    }
    SignedStep& operator-=(const SignedStep& rhs) {
        for (const auto& [degree, jump] : rhs.deltas_) deltas_[degree] -= jump;
        prune();
        return *this;
    }
    friend SignedStep operator+(SignedStep lhs, const SignedStep& rhs) { return lhs += rhs; }
    friend SignedStep operator-(SignedStep lhs, const SignedStep& rhs) { return lhs -= rhs; }

    friend bool operator==(const SignedStep&, const SignedStep&) = default;

private:
    void prune() { std::erase_if(deltas_, [](const auto& kv) { return kv.second == 0; }); }

    Deltas deltas_;
};

inline SignedStep add(const SignedStep& s, const SignedStep& t) { return s + t; }
inline SignedStep sub(const SignedStep& s, const SignedStep& t) { return s - t; }
inline std::int64_t value(const SignedStep& s, Degree l) { return s.value(l); }

/// Sigma(b,-) - Sigma(a,-). Common entries cancel.
inline SignedStep signed_from_pair(const SortedSeq& b, const SortedSeq& a) {
    return SignedStep::counting(b) - SignedStep::counting(a);
}

namespace detail {

/// Visits every degree where s or t jumps, in ascending order, with the
/// values of both functions from that degree on.
template <typename Visit>
void sweep(const SignedStep& s, const SignedStep& t, Visit visit) {
    auto i = s.deltas().begin();
    auto j = t.deltas().begin();
    const auto i_end = s.deltas().end();
    const auto j_end = t.deltas().end();
    std::int64_t vs = 0;
    std::int64_t vt = 0;
    while (i != i_end || j != j_end) {
        Degree l;
        if (j == j_end || (i != i_end && i->first < j->first)) {
            l = i->first;
        } else {
            l = j->first;
        }
        if (i != i_end && i->first == l) vs += (i++)->second;
        if (j != j_end && j->first == l) vt += (j++)->second;
        if (!visit(l, vs, vt)) return;
    }
}

template <typename Combine>
SignedStep combine_pointwise(const SignedStep& s, const SignedStep& t, Combine combine) {
    std::map<Degree, std::int64_t> values;
    sweep(s, t, [&](Degree l, std::int64_t vs, std::int64_t vt) {
        values[l] = combine(vs, vt);
        return true;
    });
    return SignedStep::from_values(values);
}

}  // namespace detail

inline SignedStep pointwise_min(const SignedStep& s, const SignedStep& t) {
    return detail::combine_pointwise(s, t, [](std::int64_t x, std::int64_t y) { return std::min(x, y); });
}

inline SignedStep pointwise_max(const SignedStep& s, const SignedStep& t) {
    return detail::combine_pointwise(s, t, [](std::int64_t x, std::int64_t y) { return std::max(x, y); });
}

/// Smallest l with value(s,l) > value(t,l), or nullopt when s <= t everywhere.
/// The left tail is 0 for both; the right tail is covered by the last jump.
inline std::optional<Degree> sigma_leq_witness(const SignedStep& s, const SignedStep& t) {
    std::optional<Degree> witness;
    detail::sweep(s, t, [&](Degree l, std::int64_t vs, std::int64_t vt) {
        if (vs > vt) {
            witness = l;
            return false;
        }
        return true;
    });
    return witness;
}

inline bool sigma_leq(const SignedStep& s, const SignedStep& t) { return !sigma_leq_witness(s, t).has_value(); }

// ---------------------------------------------------------------------------
// Admissibility

/// The four constraints every Sigma function of an (S_m^+) class member obeys.
enum class ProfileClause {
    left_tail,  ///< value is 0 far to the left
    below_e,    ///< value >= 0 for all l < e
    from_e,     ///< value >= r - rank E for all l >= e
    eventual,   ///< eventual value = rank F - rank E >= r - rank E
};

constexpr std::string_view to_string(ProfileClause c) noexcept {
    switch (c) {
        case ProfileClause::left_tail: return "left_tail";
        case ProfileClause::below_e: return "below_e";
        case ProfileClause::from_e: return "from_e";
        case ProfileClause::eventual: return "eventual";
    }
    return "unknown";
}

struct ProfileReport {
    bool ok = true;
    std::optional<ProfileClause> violated;
    std::optional<Degree> witness;
    std::string detail;

    explicit operator bool() const noexcept { return ok; }
};

/**
 * @brief Checks a Sigma profile against the bounds for its class.
 *
 * @p first_section is the least degree where the ancestor has sections. It is
 * nullopt only for the zero ancestor, which behaves as if it were +infinity:
 * the non-negativity clause then applies at every degree and the clause
 * starting at e is vacuous.
 */
inline ProfileReport validate_profile(const SignedStep& s, std::optional<Degree> first_section,
                                      std::int64_t ancestor_rank, std::int64_t min_rank) {
    const std::int64_t floor = min_rank - ancestor_rank;
    auto fail = [](ProfileClause c, std::optional<Degree> w, std::string detail) {
        return ProfileReport{false, c, w, std::move(detail)};
    };

    // left_tail holds by construction: finitely many jumps, value 0 below them.

    std::int64_t v = 0;
    for (const auto& [degree, jump] : s.deltas()) {
        if (first_section && degree >= *first_section) break;
        v += jump;
        if (v < 0) {
            return fail(ProfileClause::below_e, degree,
                        "value " + std::to_string(v) + " < 0 at degree " + std::to_string(degree));
        }
    }

    if (first_section) {
        const Degree e = *first_section;
        const std::int64_t at_e = s.value(e);
        if (at_e < floor) {
            return fail(ProfileClause::from_e, e,
                        "value " + std::to_string(at_e) + " < " + std::to_string(floor) + " at degree " +
                            std::to_string(e));
        }
        std::int64_t w = at_e;
        for (auto it = s.deltas().upper_bound(e); it != s.deltas().end(); ++it) {
            w += it->second;
            if (w < floor) {
                return fail(ProfileClause::from_e, it->first,
                            "value " + std::to_string(w) + " < " + std::to_string(floor) + " at degree " +
                                std::to_string(it->first));
            }
        }
    }

    const std::int64_t ev = s.eventual();
    const std::int64_t eventual_floor = first_section ? floor : std::max<std::int64_t>(floor, 0);
    if (ev < eventual_floor) {
        return fail(ProfileClause::eventual, s.max_support(),
                    "eventual value " + std::to_string(ev) + " < " + std::to_string(eventual_floor));
    }
    return {};
}

/// Human-readable value table over the support window, one degree per line,
/// with one degree of margin on each side.
inline std::string format_table(const SignedStep& s) {
    std::ostringstream os;
    if (s.is_zero()) {
        os << "(zero)\n";
        return os.str();
    }
    const Degree lo = *s.min_support() - 1;
    const Degree hi = *s.max_support() + 1;
    os << "l\tvalue\n";
    for (Degree l = lo; l <= hi; ++l) os << l << '\t' << s.value(l) << '\n';
    return os.str();
}

}  // namespace biliaison
