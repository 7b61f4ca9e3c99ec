/**
 * @file minimality.hpp
 * @brief Criteria and search for minimal (S_m^+) members of a class.
 *
 * The criteria are one-directional: the sufficient check can only prove
 * minimality (or give up), the necessary check can only disprove it.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biliaison/classrep.hpp"

namespace biliaison {

enum class Verdict {
    minimal,      ///< proven minimal
    not_minimal,  ///< proven not minimal
    unknown,      ///< sufficient condition not met
    pass,         ///< necessary condition met; says nothing about minimality
};

constexpr std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::minimal: return "MINIMAL";
        case Verdict::not_minimal: return "NOT_MINIMAL";
        case Verdict::unknown: return "UNKNOWN";
        case Verdict::pass: return "PASS";
    }
    return "UNKNOWN";
}

struct NecessaryResult {
    Verdict verdict = Verdict::pass;
    std::size_t u = 0;                 ///< rank E - m
    SortedSeq c_prime;                 ///< largest u entries of c
    std::optional<Degree> witness;     ///< first l with Sigma(c',l) > Sigma(a,l)
    SortedSeq guaranteed_shape;        ///< join(c', a), a reduction shape E is known to admit
};

/**
 * @brief Necessary condition for F = coker(O(a) -> E) to be minimal.
 *
 * Given any surjection O(c) -> E, E admits an m-reduction of shape c', the
 * largest u = rank E - m entries of c. If F is minimal then c' <= a. So a
 * failure proves F is not minimal; a pass is inconclusive.
 */
inline NecessaryResult necessary_check(const SortedSeq& c, const SortedSeq& a, std::int64_t ancestor_rank, int m) {
    if (m < 1) throw Error(ErrorCode::precondition, "level m must be >= 1");
    if (ancestor_rank < m) {
        throw Error(ErrorCode::precondition, "rank E must be >= m (u = rank E - m is negative)");
    }
    const auto u = static_cast<std::size_t>(ancestor_rank - m);
    if (u > c.size()) {
        throw Error(ErrorCode::precondition, "surjection O(c) -> E has " + std::to_string(c.size()) +
                                                 " twists but u = " + std::to_string(u) + " are needed");
    }
    NecessaryResult r;
    r.u = u;
    r.c_prime = c.largest(u);
    r.witness = seq_le_witness(r.c_prime, a);
    r.verdict = r.witness ? Verdict::not_minimal : Verdict::pass;
    r.guaranteed_shape = seq_join(r.c_prime, a);
    return r;
}

struct SufficientResult {
    Verdict verdict = Verdict::unknown;
    std::optional<Degree> witness;  ///< first degree in the window with h0(F(l)) != 0
    Degree window_lo = 0;           ///< checked degrees are [window_lo, window_hi)
    Degree window_hi = 0;
    std::string reason;
};

/// Largest degree window sufficient_check will scan.
inline constexpr Degree kMaxSectionWindow = 1'000'000;

/**
 * @brief Sufficient condition for minimality.
 *
 * F = coker(O(a) -> E) with E primitive, F of minimal rank in its class and
 * h^0(F(l)) = 0 for all l < max(a) is minimal. Below min(e, min a) the
 * vanishing is automatic, so only [min(e, min a), max a) is scanned.
 * Minimal rank is a global property of the class and must be asserted.
 */
inline SufficientResult sufficient_check(const ClassElement& f, bool minimal_rank_asserted) {
    if (!f.presentation()) {
        throw Error(ErrorCode::precondition, "sufficient_check needs a presentation 0 -> O(a) -> E -> F -> 0");
    }
    const Presentation& p = *f.presentation();
    if (!p.b.empty()) {
        throw Error(ErrorCode::precondition, "sufficient_check needs b = () in the presentation");
    }
    SufficientResult r;
    if (p.a.empty()) {
        r.verdict = minimal_rank_asserted ? Verdict::minimal : Verdict::unknown;
        r.reason = minimal_rank_asserted ? "a is empty; vanishing holds vacuously" : "minimal rank not asserted";
        return r;
    }
    r.window_hi = p.a.back();
    r.window_lo = f.ancestor().first_section ? std::min(*f.ancestor().first_section, p.a.front()) : p.a.front();
    if (r.window_hi > r.window_lo && checked_sub(r.window_hi, r.window_lo) > kMaxSectionWindow) {
        throw Error(ErrorCode::precondition, "section-vanishing window is too wide to scan");
    }
    for (Degree l = r.window_lo; l < r.window_hi; ++l) {
        if (hilbert(f, l) != 0) {
            r.witness = l;
            r.verdict = Verdict::unknown;
            r.reason = "h0(F(" + std::to_string(l) + ")) != 0 below max(a)";
            return r;
        }
    }
    if (!minimal_rank_asserted) {
        r.verdict = Verdict::unknown;
        r.reason = "sections vanish below max(a) but minimal rank not asserted";
        return r;
    }
    r.verdict = Verdict::minimal;
    r.reason = "h0(F(l)) = 0 for all l < max(a)";
    return r;
}

/// Binary tree of meets. Leaves point into the pool; every node stores the
/// Sigma function it certifies.
struct MeetTree {
    struct Node {
        std::optional<std::size_t> leaf;  ///< pool index, for leaves
        std::size_t left = 0;             ///< child node indices, for inner nodes
        std::size_t right = 0;
        SignedStep sigma;
    };
    std::vector<Node> nodes;
    std::size_t root = 0;
};

struct PoolMinimum {
    ClassElement minimum;
    MeetTree certificate;
    std::optional<std::size_t> attained_by;  ///< first pool member with the minimal Sigma
};

/// Iterated class_meet of a pool, folded pairwise level by level.
inline PoolMinimum pool_minimum(std::span<const ClassElement> pool) {
    if (pool.empty()) throw Error(ErrorCode::precondition, "pool is empty");
    MeetTree tree;
    std::vector<std::size_t> level;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i > 0) {
            require_same_ancestor(pool[0].ancestor(), pool[i].ancestor());
            if (pool[i].m() != pool[0].m()) throw Error(ErrorCode::level_mismatch, "pool mixes levels m");
        }
        tree.nodes.push_back({i, 0, 0, pool[i].sigma()});
        level.push_back(tree.nodes.size() - 1);
    }
    while (level.size() > 1) {
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            const auto& l = tree.nodes[level[i]];
            const auto& r = tree.nodes[level[i + 1]];
            SignedStep s = pointwise_min(l.sigma, r.sigma);
            tree.nodes.push_back({std::nullopt, level[i], level[i + 1], std::move(s)});
            next.push_back(tree.nodes.size() - 1);
        }
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    tree.root = level.front();

    std::optional<std::int64_t> min_rank;
    for (const auto& el : pool) {
        if (el.min_rank()) {
            if (min_rank && *min_rank != *el.min_rank()) {
                throw Error(ErrorCode::precondition, "pool members disagree on the class minimal rank");
            }
            min_rank = el.min_rank();
        }
    }
    const SignedStep& sigma = tree.nodes[tree.root].sigma;
    std::optional<std::size_t> attained;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i].sigma() == sigma) {
            attained = i;
            break;
        }
    }
    std::optional<Presentation> presentation;
    if (attained) presentation = pool[*attained].presentation();
    ClassElement minimum(pool[0].ancestor(), sigma, pool[0].m(), std::move(presentation), min_rank);
    return {std::move(minimum), std::move(tree), attained};
}

/// Replays a certificate: leaves match the pool, inner nodes are meets of
/// their children, and every pool member appears exactly once.
inline bool check_certificate(std::span<const ClassElement> pool, const MeetTree& tree) {
    if (tree.root >= tree.nodes.size()) return false;
    std::vector<int> seen(pool.size(), 0);
    std::vector<std::size_t> stack{tree.root};
    std::size_t visited = 0;
    while (!stack.empty()) {
        const std::size_t idx = stack.back();
        stack.pop_back();
        if (idx >= tree.nodes.size() || ++visited > tree.nodes.size()) return false;
        const auto& node = tree.nodes[idx];
        if (node.leaf) {
            if (*node.leaf >= pool.size() || pool[*node.leaf].sigma() != node.sigma) return false;
            ++seen[*node.leaf];
            continue;
        }
        if (node.left >= tree.nodes.size() || node.right >= tree.nodes.size()) return false;
        if (pointwise_min(tree.nodes[node.left].sigma, tree.nodes[node.right].sigma) != node.sigma) return false;
        stack.push_back(node.left);
        stack.push_back(node.right);
    }
    return std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; });
}

/**
 * @brief Upper bound on the length of a strictly descending chain.
 *
 * Every member of a strictly descending chain headed by @p head with jumps
 * in [lo_deg, hi_deg] lies pointwise between the head and the admissibility
 * floor (0 below e, r - rank E from e on; 0 everywhere for the zero
 * ancestor). Each step lowers at least one value in the window by at least
 * one, so the chain has at most 1 + sum over the window of (head - floor)
 * members.
 */
inline Count descent_bound(const SignedStep& head, std::optional<Degree> first_section, std::int64_t ancestor_rank,
                           std::int64_t min_rank, Degree lo_deg, Degree hi_deg) {
    if (lo_deg > hi_deg) throw Error(ErrorCode::precondition, "empty degree window");
    if (auto lo = head.min_support(); lo && *lo < lo_deg) {
        throw Error(ErrorCode::precondition, "chain head jumps below the window");
    }
    if (auto hi = head.max_support(); hi && *hi > hi_deg) {
        throw Error(ErrorCode::precondition, "chain head jumps above the window");
    }
    const std::int64_t tail_floor = min_rank - ancestor_rank;
    auto floor_at = [&](Degree l) -> std::int64_t {
        if (!first_section || l < *first_section) return 0;
        return tail_floor;
    };

    // Piecewise-constant sum: break the window at head jumps and at e.
    std::vector<Degree> cuts{lo_deg};
    for (Degree d : head.support()) {
        if (d > lo_deg) cuts.push_back(d);
    }
    if (first_section && *first_section > lo_deg && *first_section <= hi_deg) cuts.push_back(*first_section);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Count total = 1;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const Degree from = cuts[i];
        const Count width = (i + 1 < cuts.size() ? Count(cuts[i + 1]) : Count(hi_deg) + 1) - Count(from);
        const std::int64_t gap = head.value(from) - floor_at(from);
        if (gap < 0) {
            throw Error(ErrorCode::invalid_profile,
                        "chain head is below the admissibility floor at degree " + std::to_string(from));
        }
        total += width * gap;
    }
    return total;
}

inline Count descent_bound(const ClassElement& head, Degree lo_deg, Degree hi_deg) {
    return descent_bound(head.sigma(), head.ancestor().first_section, head.ancestor().rank, head.rank_floor(),
                         lo_deg, hi_deg);
}

}  // namespace biliaison
