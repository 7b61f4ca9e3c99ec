/**
 * @file moves.hpp
 * @brief Structure-theorem moves on class members, at the level of Sigma.
 *
 * Four kinds of step connect (S_m^+) members of a class:
 *
 *  - elementary biliaison {a, b}: Serre correspondences O(-a) -> F and
 *    O(-b) -> G with the same cokernel. Sigma(G) = Sigma(F) - 1[a,inf) + 1[b,inf),
 *    rank unchanged. Height a - b; increasing if positive, decreasing
 *    otherwise. A decreasing move lowers Sigma by the box 1[a,b).
 *  - rigid deformation: Sigma unchanged.
 *  - reduction by s: F -> coker(O(s) -> F), Sigma drops by Sigma(s).
 *  - extension by s: the inverse of a reduction.
 *
 * Moves only track Sigma and rank. A chain that verifies is consistent with
 * the structure theorems; it is not a construction of the sheaves.
 *
 * The dual notion (two Serre correspondences into a common sheaf) is not
 * modelled; it does not generalize biliaison of subvarieties.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "biliaison/classrep.hpp"

namespace biliaison {

struct ElemBiliaison {
    Degree a = 0;
    Degree b = 0;

    Degree height() const { return checked_sub(a, b); }
    bool increasing() const { return a > b; }

    friend bool operator==(const ElemBiliaison&, const ElemBiliaison&) = default;
};

struct Rigid {
    friend bool operator==(const Rigid&, const Rigid&) = default;
};

struct Reduction {
    SortedSeq s;
    friend bool operator==(const Reduction&, const Reduction&) = default;
};

struct Extension {
    SortedSeq s;
    friend bool operator==(const Extension&, const Extension&) = default;
};

struct Move {
    using Kind = std::variant<ElemBiliaison, Rigid, Reduction, Extension>;

    Kind kind;
    std::optional<int> level;  ///< claimed (S_level^+) level; metadata only

    static Move elem(Degree a, Degree b, std::optional<int> level = std::nullopt) {
        return {ElemBiliaison{a, b}, level};
    }
    static Move rigid(std::optional<int> level = std::nullopt) { return {Rigid{}, level}; }
    static Move reduce(SortedSeq s, std::optional<int> level = std::nullopt) {
        if (s.empty()) throw Error(ErrorCode::precondition, "reduction sequence must be nonempty");
        return {Reduction{std::move(s)}, level};
    }
    static Move extend(SortedSeq s, std::optional<int> level = std::nullopt) {
        if (s.empty()) throw Error(ErrorCode::precondition, "extension sequence must be nonempty");
        return {Extension{std::move(s)}, level};
    }

    bool is_rank_change() const {
        return std::holds_alternative<Reduction>(kind) || std::holds_alternative<Extension>(kind);
    }

    friend bool operator==(const Move&, const Move&) = default;
};

/// Flips a move to go the other way: swaps a and b, reduction <-> extension.
inline Move inverse(const Move& mv) {
    return std::visit(
        [&](const auto& k) -> Move {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ElemBiliaison>) return {ElemBiliaison{k.b, k.a}, mv.level};
            else if constexpr (std::is_same_v<K, Rigid>) return mv;
            else if constexpr (std::is_same_v<K, Reduction>) return {Extension{k.s}, mv.level};
            else return {Reduction{k.s}, mv.level};
        },
        mv.kind);
}

/// Reverses a chain start -> end into end -> start.
inline std::vector<Move> reversed(const std::vector<Move>& chain) {
    std::vector<Move> out;
    out.reserve(chain.size());
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

/// Sigma change caused by a move.
inline SignedStep sigma_delta(const Move& mv) {
    return std::visit(
        [](const auto& k) -> SignedStep {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ElemBiliaison>) {
                return SignedStep::indicator(k.b) - SignedStep::indicator(k.a);
            } else if constexpr (std::is_same_v<K, Rigid>) {
                return {};
            } else if constexpr (std::is_same_v<K, Reduction>) {
                return -SignedStep::counting(k.s);
            } else {
                return SignedStep::counting(k.s);
            }
        },
        mv.kind);
}

struct MoveOutcome {
    std::optional<ClassElement> result;
    ProfileReport report;  ///< admissibility of the would-be result
    std::string reason;    ///< empty on success
};

/// Applies a move; a rejected move returns no result and says why.
inline MoveOutcome try_apply_move(const ClassElement& f, const Move& mv) {
    const SignedStep sigma = f.sigma() + sigma_delta(mv);
    const std::int64_t rank = f.ancestor().rank + sigma.eventual();
    if (rank < 0) {
        return {std::nullopt, {false, ProfileClause::eventual, sigma.max_support(), "negative rank"},
                "rank would become " + std::to_string(rank)};
    }
    ProfileReport report = f.admissibility(sigma);
    if (!report) return {std::nullopt, report, "inadmissible result: " + report.detail};

    std::optional<Presentation> p;
    if (f.presentation()) {
        const Presentation& q = *f.presentation();
        std::visit(
            [&](const auto& k) {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, ElemBiliaison>) {
                    p = Presentation{q.a.merged(SortedSeq{k.a}), q.b.merged(SortedSeq{k.b})};
                } else if constexpr (std::is_same_v<K, Rigid>) {
                    p = q;
                } else if constexpr (std::is_same_v<K, Reduction>) {
                    p = Presentation{q.a.merged(k.s), q.b};
                } else {
                    p = Presentation{q.a, q.b.merged(k.s)};
                }
            },
            mv.kind);
    }
    return {f.with_sigma(sigma, std::move(p)), std::move(report), {}};
}

class MoveRejected : public Error {
public:
    MoveRejected(const std::string& what, ProfileReport report)
        : Error(ErrorCode::invalid_profile, what), report_(std::move(report)) {}
    const ProfileReport& report() const noexcept { return report_; }

private:
    ProfileReport report_;
};

inline ClassElement apply_move(const ClassElement& f, const Move& mv) {
    MoveOutcome out = try_apply_move(f, mv);
    if (!out.result) throw MoveRejected(out.reason, out.report);
    return std::move(*out.result);
}

struct StepRecord {
    std::size_t index = 0;
    Move move;
    bool ok = false;
    SignedStep sigma;  ///< Sigma after the step (before it, if rejected)
    std::int64_t rank = 0;
    std::string reason;
};

struct ChainReport {
    bool pass = false;
    std::vector<StepRecord> steps;
    std::vector<std::string> failures;
    std::size_t rank_changes = 0;
};

/**
 * @brief Replays a chain from @p start and compares with @p target.
 *
 * Passes iff every step is admissible, reductions and extensions occur at
 * most once in total, and the final Sigma (hence rank) equals the target's.
 */
inline ChainReport verify_chain(const ClassElement& start, const std::vector<Move>& chain,
                                const ClassElement& target) {
    ChainReport rep;
    if (!same_ancestor(start.ancestor(), target.ancestor())) {
        rep.failures.push_back("start and target belong to different classes");
    }
    if (start.m() != target.m()) rep.failures.push_back("start and target have different levels m");

    ClassElement current = start;
    bool replay_ok = true;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Move& mv = chain[i];
        if (mv.is_rank_change() && ++rep.rank_changes == 2) {
            rep.failures.push_back("step " + std::to_string(i) +
                                   ": clause (c) used more than once (second reduction/extension)");
        }
        MoveOutcome out = try_apply_move(current, mv);
        if (!out.result) {
            rep.steps.push_back({i, mv, false, current.sigma(), current.rank(), out.reason});
            rep.failures.push_back("step " + std::to_string(i) + ": " + out.reason);
            replay_ok = false;
            break;
        }
        current = std::move(*out.result);
        rep.steps.push_back({i, mv, true, current.sigma(), current.rank(), {}});
    }
    if (replay_ok && current.sigma() != target.sigma()) {
        auto w = sigma_leq_witness(current.sigma(), target.sigma());
        if (!w) w = sigma_leq_witness(target.sigma(), current.sigma());
        rep.failures.push_back("final Sigma differs from target" +
                               (w ? " (first at degree " + std::to_string(*w) + ")" : std::string{}));
    }
    rep.pass = rep.failures.empty();
    return rep;
}

/**
 * @brief Unit boxes [lo, hi) whose indicators sum to @p r.
 *
 * @p r must be >= 0 and eventually 0. Level j contributes one box per maximal
 * interval where r >= j. Sorted by left endpoint, then width.
 */
inline std::vector<std::pair<Degree, Degree>> unit_boxes(const SignedStep& r) {
    if (r.eventual() != 0) throw Error(ErrorCode::precondition, "box decomposition needs eventual value 0");
    std::vector<std::pair<Degree, Degree>> boxes;
    std::vector<Degree> open;  // open[j] = left end of the open box at level j+1
    for (const auto& [degree, jump] : r.deltas()) {
        if (jump > 0) {
            open.insert(open.end(), static_cast<std::size_t>(jump), degree);
        } else {
            if (static_cast<std::size_t>(-jump) > open.size()) {
                throw Error(ErrorCode::precondition, "box decomposition needs a non-negative function");
            }
            for (std::int64_t k = 0; k < -jump; ++k) {
                boxes.emplace_back(open.back(), degree);
                open.pop_back();
            }
        }
    }
    std::sort(boxes.begin(), boxes.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second - x.first < y.second - y.first;
    });
    return boxes;
}

/**
 * @brief Layer start points of the eventually-constant part of @p d.
 *
 * For d >= 0 with eventual value k, returns t_1 <= ... <= t_k where t_j is
 * the least degree from which d stays >= j.
 */
inline SortedSeq tail_layers(const SignedStep& d) {
    const std::int64_t k = d.eventual();
    if (k <= 0) return {};
    std::vector<Degree> t(static_cast<std::size_t>(k));
    std::vector<bool> set(t.size(), false);
    // Walk jumps from the right; value just after a jump at degree x is v.
    std::int64_t v = k;
    const auto& deltas = d.deltas();
    for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) {
        const std::int64_t before = v - it->second;
        // Levels in (before, min(v,k)] are entered at this degree and held to the right.
        for (std::int64_t j = std::max<std::int64_t>(before, 0) + 1; j <= std::min(v, k); ++j) {
            if (!set[static_cast<std::size_t>(j - 1)]) {
                t[static_cast<std::size_t>(j - 1)] = it->first;
                set[static_cast<std::size_t>(j - 1)] = true;
            }
        }
        v = before;
    }
    return SortedSeq(std::move(t));
}

/**
 * @brief A descending chain from @p start to @p min_elt.
 *
 * With D = Sigma(start) - Sigma(min) >= 0 and k its eventual value (the rank
 * difference): if k > 0, one reduction by the start points of the k layers
 * of D that extend to +infinity; then the remaining eventually-zero part is
 * split into unit boxes, each removed by one decreasing elementary
 * biliaison {lo, hi}. A trailing rigid move records that the endpoint
 * matches min only up to rigid deformation. Every move is tagged level m.
 */
inline std::vector<Move> synthesize_chain(const ClassElement& start, const ClassElement& min_elt) {
    require_same_ancestor(start.ancestor(), min_elt.ancestor());
    if (start.m() != min_elt.m()) throw Error(ErrorCode::level_mismatch, "start and min have different m");
    if (auto w = sigma_leq_witness(min_elt.sigma(), start.sigma())) {
        throw Error(ErrorCode::precondition,
                    "min is not below start (Sigma(min) > Sigma(start) at degree " + std::to_string(*w) + ")");
    }
    const int m = start.m();
    std::vector<Move> chain;
    const SignedStep d = start.sigma() - min_elt.sigma();
    if (d.is_zero()) return chain;

    const SortedSeq tail = tail_layers(d);
    SignedStep rest = d;
    if (!tail.empty()) {
        chain.push_back(Move::reduce(tail, m));
        rest -= SignedStep::counting(tail);
    }
    for (const auto& [lo, hi] : unit_boxes(rest)) chain.push_back(Move::elem(lo, hi, m));
    chain.push_back(Move::rigid(m));
    return chain;
}

}  // namespace biliaison
