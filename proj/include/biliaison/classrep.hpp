/**
 * @file classrep.hpp
 * @brief Members of a biliaison class as (ancestor, Sigma, level) triples.
 *
 * Every member F of the class of a very primitive sheaf E has a presentation
 *
 *     0 -> O(a) -> E + O(b) -> F -> 0,     O(a) = sum_i O(-a_i),
 *
 * and Sigma(F,-) = Sigma(b,-) - Sigma(a,-) does not depend on the chosen
 * presentation. The ancestor E is only described (rank, first section
 * degree, section counts); nothing here constructs a sheaf.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biliaison/seqlattice.hpp"
#include "biliaison/sigmacalc.hpp"

namespace biliaison {

/// Exact section counts; binomials outgrow 64 bits quickly.
using Count = boost::multiprecision::cpp_int;

/// h^0(O_{P^n}(d)) = C(n+d, n) for d >= 0, else 0.
inline Count h0_pn(unsigned n, Degree d) {
    if (n < 1) throw Error(ErrorCode::precondition, "projective space dimension must be >= 1");
    if (d < 0) return 0;
    // C(n+d, n) = prod_{k=1..n} (d+k)/k, exact at every step.
    Count c = 1;
    for (unsigned k = 1; k <= n; ++k) {
        c *= Count(d) + k;
        c /= k;
    }
    return c;
}

/// Section-count function l -> h^0(E(l)): 0 below `low`, a table on
/// [low, low + table.size()), and a closed-form rule above the table.
class SectionCounts {
public:
    enum class Rule { zero, projective, constant, undefined };

    SectionCounts() = default;
    SectionCounts(Degree low, std::vector<Count> table, Rule rule, unsigned projective_dim = 0,
                  Count constant = 0)
        : low_(low),
          table_(std::move(table)),
          rule_(rule),
          projective_dim_(projective_dim),
          constant_(std::move(constant)) {
        for (const auto& c : table_) {
            if (c < 0) throw Error(ErrorCode::invalid_descriptor, "section counts must be >= 0");
        }
        if (rule_ == Rule::projective && projective_dim_ < 1) {
            throw Error(ErrorCode::invalid_descriptor, "pn rule needs n >= 1");
        }
        if (rule_ == Rule::constant && constant_ < 0) {
            throw Error(ErrorCode::invalid_descriptor, "constant rule must be >= 0");
        }
    }

    static SectionCounts zero() { return {}; }
    static SectionCounts projective(unsigned n) { return {0, {}, Rule::projective, n}; }

    /// Parses "zero", "pn:<n>", "constant:<k>", "undefined".
    static std::pair<Rule, std::pair<unsigned, Count>> parse_rule(const std::string& text) {
        if (text == "zero") return {Rule::zero, {0, 0}};
        if (text == "undefined") return {Rule::undefined, {0, 0}};
        try {
            if (text.rfind("pn:", 0) == 0) {
                const std::string tail = text.substr(3);
                std::size_t used = 0;
                const unsigned long n = std::stoul(tail, &used);
                if (used == tail.size() && n >= 1 && n < 1000) {
                    return {Rule::projective, {static_cast<unsigned>(n), 0}};
                }
            }
            if (text.rfind("constant:", 0) == 0) {
                Count k(text.substr(9));
                if (k >= 0) return {Rule::constant, {0, k}};
            }
        } catch (const std::exception&) {
        }
        throw Error(ErrorCode::invalid_descriptor, "unknown h0 rule '" + text + "'");
    }

    Degree low() const noexcept { return low_; }
    const std::vector<Count>& table() const noexcept { return table_; }
    Degree table_end() const noexcept { return low_ + static_cast<Degree>(table_.size()); }
    Rule rule() const noexcept { return rule_; }

    std::string rule_name() const {
        switch (rule_) {
            case Rule::zero: return "zero";
            case Rule::projective: return "pn:" + std::to_string(projective_dim_);
            case Rule::constant: return "constant:" + constant_.str();
            case Rule::undefined: return "undefined";
        }
        return "undefined";
    }

    Count operator()(Degree l) const {
        if (l < low_) return 0;
        if (l < table_end()) return table_[static_cast<std::size_t>(l - low_)];
        switch (rule_) {
            case Rule::zero: return 0;
            case Rule::projective: return h0_pn(projective_dim_, l);
            case Rule::constant: return constant_;
            case Rule::undefined: break;
        }
        throw Error(ErrorCode::precondition,
                    "section count at degree " + std::to_string(l) + " lies beyond the table and has no rule");
    }

    /// Canonical text used for identity checks.
    std::string fingerprint() const {
        std::string s = std::to_string(low_) + ":[";
        for (std::size_t i = 0; i < table_.size(); ++i) {
            if (i) s += ',';
            s += table_[i].str();
        }
        return s + "]:" + rule_name();
    }

private:
    Degree low_ = 0;
    std::vector<Count> table_;
    Rule rule_ = Rule::zero;
    unsigned projective_dim_ = 0;
    Count constant_ = 0;
};

/**
 * @brief Description of the very primitive ancestor E of a class.
 *
 * `first_section` is e = inf{l : h^0(E(l)) != 0}; nullopt exactly for the
 * zero sheaf. `ambient` is n when the ambient variety is P^n; it supplies
 * the line-bundle section counts used by hilbert(). Very primitivity is a
 * user assertion and is recorded, not checked.
 */
struct PrimitiveDescriptor {
    std::string name;
    std::int64_t rank = 0;
    std::optional<Degree> first_section;
    SectionCounts h0;
    std::optional<unsigned> ambient;
    bool very_primitive = true;

    bool is_zero() const noexcept { return rank == 0 && !first_section; }

    /// Throws invalid_descriptor when the fields contradict each other.
    void validate() const {
        if (name.empty()) throw Error(ErrorCode::invalid_descriptor, "descriptor needs a name");
        if (rank < 0) throw Error(ErrorCode::invalid_descriptor, "descriptor rank must be >= 0");
        if (ambient && *ambient < 1) throw Error(ErrorCode::invalid_descriptor, "ambient P^n needs n >= 1");
        if (!first_section) {
            if (rank != 0) {
                throw Error(ErrorCode::invalid_descriptor, "e may be null only for the zero sheaf (rank 0)");
            }
            if (!h0.table().empty() && std::any_of(h0.table().begin(), h0.table().end(),
                                                   [](const Count& c) { return c != 0; })) {
                throw Error(ErrorCode::invalid_descriptor, "the zero sheaf has no sections");
            }
            if (h0.rule() != SectionCounts::Rule::zero) {
                throw Error(ErrorCode::invalid_descriptor, "the zero sheaf needs the zero h0 rule");
            }
            return;
        }
        const Degree e = *first_section;
        if (e < h0.low()) {
            throw Error(ErrorCode::invalid_descriptor, "e lies below the h0 table, where h0 is 0");
        }
        for (Degree l = h0.low(); l < e && l < h0.table_end(); ++l) {
            if (h0(l) != 0) {
                throw Error(ErrorCode::invalid_descriptor,
                            "h0 is nonzero at degree " + std::to_string(l) + " < e");
            }
        }
        if (e >= h0.table_end() && h0.rule() == SectionCounts::Rule::undefined) {
            throw Error(ErrorCode::invalid_descriptor, "h0(e) is not defined by the table");
        }
        if (h0(e) == 0) throw Error(ErrorCode::invalid_descriptor, "h0(e) must be nonzero");
    }

    std::string fingerprint() const {
        return std::to_string(rank) + "|" + (first_section ? std::to_string(*first_section) : "none") + "|" +
               h0.fingerprint() + "|" + (ambient ? "pn:" + std::to_string(*ambient) : "none");
    }

    static PrimitiveDescriptor zero_sheaf(std::optional<unsigned> ambient = std::nullopt) {
        return {"zero", 0, std::nullopt, SectionCounts::zero(), ambient, true};
    }

    /// O on P^n. Rank one, sections from degree 0. Not very primitive; useful
    /// mainly as a carrier of the ambient space.
    static PrimitiveDescriptor structure_sheaf(unsigned n) {
        return {"pn:" + std::to_string(n), 1, 0, SectionCounts::projective(n), n, false};
    }
};

/// Same class iff same name; equal names with different data are an error.
inline bool same_ancestor(const PrimitiveDescriptor& x, const PrimitiveDescriptor& y) {
    if (x.name != y.name) return false;
    if (x.fingerprint() != y.fingerprint()) {
        throw Error(ErrorCode::ancestor_mismatch,
                    "two different descriptors share the name '" + x.name + "'");
    }
    return true;
}

inline void require_same_ancestor(const PrimitiveDescriptor& x, const PrimitiveDescriptor& y) {
    if (!same_ancestor(x, y)) {
        throw Error(ErrorCode::ancestor_mismatch,
                    "elements belong to different classes ('" + x.name + "' vs '" + y.name + "')");
    }
}

struct Presentation {
    SortedSeq a;  ///< twists of the kernel O(a)
    SortedSeq b;  ///< twists of the free summand O(b)

    friend bool operator==(const Presentation&, const Presentation&) = default;
};

class ClassElement {
public:
    /**
     * @param min_rank minimal rank r of (S_m^+) members of the class, when
     *        known. If given, the profile is validated against it.
     */
    ClassElement(PrimitiveDescriptor ancestor, SignedStep sigma, int m,
                 std::optional<Presentation> presentation = std::nullopt,
                 std::optional<std::int64_t> min_rank = std::nullopt)
        : ancestor_(std::move(ancestor)),
          sigma_(std::move(sigma)),
          m_(m),
          presentation_(std::move(presentation)),
          min_rank_(min_rank) {
        ancestor_.validate();
        if (m_ < 1) throw Error(ErrorCode::precondition, "level m must be >= 1");
        if (rank() < 0) {
            throw Error(ErrorCode::negative_rank, "derived rank " + std::to_string(rank()) + " is negative");
        }
        if (presentation_ && signed_from_pair(presentation_->b, presentation_->a) != sigma_) {
            throw Error(ErrorCode::integrity, "presentation does not match the Sigma function");
        }
        if (min_rank_) {
            if (*min_rank_ < 0) throw Error(ErrorCode::precondition, "min_rank must be >= 0");
            auto report = validate_profile(sigma_, ancestor_.first_section, ancestor_.rank, *min_rank_);
            if (!report) throw Error(ErrorCode::invalid_profile, "inadmissible Sigma: " + report.detail);
        }
    }

    const PrimitiveDescriptor& ancestor() const noexcept { return ancestor_; }
    const SignedStep& sigma() const noexcept { return sigma_; }
    int m() const noexcept { return m_; }
    const std::optional<Presentation>& presentation() const noexcept { return presentation_; }
    std::optional<std::int64_t> min_rank() const noexcept { return min_rank_; }

    std::int64_t rank() const { return ancestor_.rank + sigma_.eventual(); }

    /// The r used for admissibility: the attached min_rank, else the sound
    /// floor (0 in the class of the zero sheaf, 1 otherwise).
    std::int64_t rank_floor() const {
        if (min_rank_) return *min_rank_;
        return ancestor_.is_zero() ? 0 : 1;
    }

    ProfileReport admissibility(const SignedStep& candidate) const {
        return validate_profile(candidate, ancestor_.first_section, ancestor_.rank, rank_floor());
    }

    /// Stored presentation, or the one read off the jumps of Sigma
    /// (positive jumps become b, negative jumps a).
    Presentation presentation_or_canonical() const {
        if (presentation_) return *presentation_;
        std::vector<Degree> a;
        std::vector<Degree> b;
        for (const auto& [degree, jump] : sigma_.deltas()) {
            auto& side = jump > 0 ? b : a;
            side.insert(side.end(), static_cast<std::size_t>(jump > 0 ? jump : -jump), degree);
        }
        return {SortedSeq::from_sorted(std::move(a)), SortedSeq::from_sorted(std::move(b))};
    }

    /// Same element with a different Sigma (presentation dropped unless given).
    ClassElement with_sigma(SignedStep sigma, std::optional<Presentation> presentation = std::nullopt) const {
        return ClassElement(ancestor_, std::move(sigma), m_, std::move(presentation), min_rank_);
    }

    ClassElement with_min_rank(std::optional<std::int64_t> r) const {
        return ClassElement(ancestor_, sigma_, m_, presentation_, r);
    }

private:
    PrimitiveDescriptor ancestor_;
    SignedStep sigma_;
    int m_;
    std::optional<Presentation> presentation_;
    std::optional<std::int64_t> min_rank_;
};

/// F = coker(O(a) -> E + O(b)).
inline ClassElement from_presentation(const PrimitiveDescriptor& ancestor, const SortedSeq& a,
                                      const SortedSeq& b, int m) {
    const auto rank = ancestor.rank + static_cast<std::int64_t>(b.size()) - static_cast<std::int64_t>(a.size());
    if (rank < 0) {
        throw Error(ErrorCode::negative_rank,
                    "rank E + len(b) - len(a) = " + std::to_string(rank) + " is negative");
    }
    return ClassElement(ancestor, signed_from_pair(b, a), m, Presentation{a, b});
}

/// F = coker(O(a) -> G + O(b)), so Sigma(F) + Sigma(a) = Sigma(G) + Sigma(b).
inline ClassElement compose_ancestor(const ClassElement& g, const SortedSeq& a, const SortedSeq& b) {
    const auto rank = g.rank() + static_cast<std::int64_t>(b.size()) - static_cast<std::int64_t>(a.size());
    if (rank < 0) {
        throw Error(ErrorCode::negative_rank, "composed rank " + std::to_string(rank) + " is negative");
    }
    std::optional<Presentation> p;
    if (g.presentation()) p = Presentation{g.presentation()->a.merged(a), g.presentation()->b.merged(b)};
    return g.with_sigma(g.sigma() + signed_from_pair(b, a), std::move(p));
}

/// F <= G iff Sigma(F) <= Sigma(G) pointwise; only defined inside one class.
inline bool preceq(const ClassElement& f, const ClassElement& g) {
    require_same_ancestor(f.ancestor(), g.ancestor());
    return sigma_leq(f.sigma(), g.sigma());
}

namespace detail {

inline std::optional<std::int64_t> shared_min_rank(const ClassElement& f, const ClassElement& g) {
    if (f.min_rank() && g.min_rank() && *f.min_rank() != *g.min_rank()) {
        throw Error(ErrorCode::precondition, "elements disagree on the class minimal rank");
    }
    return f.min_rank() ? f.min_rank() : g.min_rank();
}

inline void require_same_class_and_level(const ClassElement& f, const ClassElement& g) {
    require_same_ancestor(f.ancestor(), g.ancestor());
    if (f.m() != g.m()) {
        throw Error(ErrorCode::level_mismatch,
                    "levels differ (m=" + std::to_string(f.m()) + " vs m=" + std::to_string(g.m()) + ")");
    }
}

}  // namespace detail

/// Pointwise minimum of Sigma functions. For every m >= 1 the (S_m^+)
/// members' Sigma functions are closed under this.
inline ClassElement class_meet(const ClassElement& f, const ClassElement& g) {
    detail::require_same_class_and_level(f, g);
    return ClassElement(f.ancestor(), pointwise_min(f.sigma(), g.sigma()), f.m(), std::nullopt,
                        detail::shared_min_rank(f, g));
}

/// Pointwise maximum. Closure is only known for m = 1; refused otherwise.
inline ClassElement class_join(const ClassElement& f, const ClassElement& g) {
    detail::require_same_class_and_level(f, g);
    if (f.m() != 1) {
        throw Error(ErrorCode::join_refused,
                    "join of Sigma functions is only guaranteed for m = 1 (got m = " + std::to_string(f.m()) +
                        "); (S_m^+) members form only a meet-semilattice");
    }
    return ClassElement(f.ancestor(), pointwise_max(f.sigma(), g.sigma()), f.m(), std::nullopt,
                        detail::shared_min_rank(f, g));
}

/**
 * @brief h^0(F(l)) from the presentation.
 *
 * h0_E(l) + sum_i h0_X(l - b_i) - sum_j h0_X(l - a_j). Exact because the
 * ambient variety is assumed to have H^1_*(O_X) = 0. A negative result
 * means the presentation cannot come from a sheaf and is reported as an
 * integrity error.
 */
inline Count hilbert(const ClassElement& f, Degree l) {
    const auto& e = f.ancestor();
    if (!e.ambient) {
        throw Error(ErrorCode::precondition,
                    "hilbert needs the ambient space; descriptor '" + e.name + "' has none");
    }
    const unsigned n = *e.ambient;
    const Presentation p = f.presentation_or_canonical();
    Count total = e.h0(l);
    for (Degree bi : p.b) total += h0_pn(n, checked_sub(l, bi));
    for (Degree aj : p.a) total -= h0_pn(n, checked_sub(l, aj));
    if (total < 0) {
        throw Error(ErrorCode::integrity,
                    "h0(F(" + std::to_string(l) + ")) computes to " + total.str() + " < 0");
    }
    return total;
}

}  // namespace biliaison
