#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace biliaison;
using D = SignedStep::Deltas;

namespace {

PrimitiveDescriptor rank5() {
    return {"E5", 5, 0, SectionCounts(0, {1, 4}, SectionCounts::Rule::constant, 0, 9), 3, true};
}

PrimitiveDescriptor rank3_e0() {
    return {"E3", 3, 0, SectionCounts(0, {2}, SectionCounts::Rule::constant, 0, 5), std::nullopt, true};
}

/// Ancestor with h0 = 0 below e and sections from e on.
PrimitiveDescriptor hm_like(Degree e, std::vector<Count> table) {
    return {"ker_q", 7, e, SectionCounts(e, std::move(table), SectionCounts::Rule::undefined), 4, true};
}

}  // namespace

TEST(NecessaryCheck, Examples) {
    const NecessaryResult r = necessary_check({1, 1, 1}, {2, 2, 2}, 5, 3);
    EXPECT_EQ(r.verdict, Verdict::not_minimal);
    EXPECT_EQ(r.u, 2u);
    EXPECT_EQ(r.c_prime, (SortedSeq{1, 1}));
    EXPECT_EQ(r.witness, std::optional<Degree>(1));
    EXPECT_EQ(r.guaranteed_shape, (SortedSeq{1, 1, 2}));

    EXPECT_EQ(necessary_check({0, 3, 4}, {3, 4}, 4, 2).verdict, Verdict::pass);
    EXPECT_EQ(necessary_check({3, 4}, {1, 2}, 3, 1).verdict, Verdict::pass);
    EXPECT_THROW(necessary_check({1}, {2, 2}, 5, 3), Error);
    EXPECT_THROW(necessary_check({1, 1}, {2}, 2, 3), Error);
}

TEST(SufficientCheck, Examples) {
    const ClassElement empty = from_presentation(rank5(), {}, {}, 2);
    EXPECT_EQ(sufficient_check(empty, true).verdict, Verdict::minimal);
    EXPECT_EQ(sufficient_check(empty, false).verdict, Verdict::unknown);
    EXPECT_THROW(from_presentation(PrimitiveDescriptor::zero_sheaf(3), {1}, {}, 1), Error);
    EXPECT_THROW(sufficient_check(from_presentation(rank5(), {1}, {2}, 1), true), Error);
}

TEST(SufficientCheck, HorrocksMumfordShape) {
    const SortedSeq a{-2, -2, -2, -2, -2};
    const ClassElement f = from_presentation(hm_like(-2, {5, 25, 79}), a, {}, 4);
    EXPECT_EQ(f.rank(), 2);
    const SufficientResult ok = sufficient_check(f, true);
    EXPECT_EQ(ok.verdict, Verdict::minimal);
    EXPECT_FALSE(ok.witness.has_value());

    const ClassElement g = from_presentation(hm_like(-3, {1, 5, 25, 79}), a, {}, 4);
    const SufficientResult bad = sufficient_check(g, true);
    EXPECT_EQ(bad.verdict, Verdict::unknown);
    EXPECT_EQ(bad.witness, std::optional<Degree>(-3));
}

TEST(SufficientCheck, ScansWholeWindow) {
    // Sections of E start at 0; a reaches up to 3, so degrees 0..2 are scanned.
    // On P^2: h0(F(l)) = h0_E(l) - C(l+2,2) - C(l-1,2), i.e. 0, 0, 1 at l = 0, 1, 2.
    const PrimitiveDescriptor e{"E", 4, 0, SectionCounts(0, {1, 3, 7, 20}, SectionCounts::Rule::undefined), 2,
                                true};
    const ClassElement f = from_presentation(e, {0, 3}, {}, 1);
    const SufficientResult r = sufficient_check(f, true);
    EXPECT_EQ(r.window_lo, 0);
    EXPECT_EQ(r.window_hi, 3);
    EXPECT_EQ(r.verdict, Verdict::unknown);
    EXPECT_EQ(r.witness, std::optional<Degree>(2));

    PrimitiveDescriptor no_sections = e;
    no_sections.h0 = SectionCounts(0, {0, 3}, SectionCounts::Rule::undefined);
    EXPECT_THROW(no_sections.validate(), Error);
}

TEST(PoolMinimum, Examples) {
    const ClassElement f = from_presentation(rank5(), {1, 3, 4}, {}, 1);
    const ClassElement g = from_presentation(rank5(), {2, 2}, {}, 1);

    const std::vector<ClassElement> single{f};
    const PoolMinimum one = pool_minimum(single);
    EXPECT_EQ(one.minimum.sigma(), f.sigma());
    EXPECT_EQ(one.attained_by, std::optional<std::size_t>(0));
    EXPECT_EQ(one.certificate.nodes.size(), 1u);
    EXPECT_TRUE(check_certificate(single, one.certificate));

    const std::vector<ClassElement> pair{f, g};
    const PoolMinimum two = pool_minimum(pair);
    EXPECT_EQ(two.minimum.sigma(), -SignedStep::counting({1, 2, 4}));
    EXPECT_FALSE(two.attained_by.has_value());
    EXPECT_TRUE(check_certificate(pair, two.certificate));

    MeetTree forged = two.certificate;
    forged.nodes[forged.root].sigma = f.sigma();
    EXPECT_FALSE(check_certificate(pair, forged));

    EXPECT_THROW(pool_minimum(std::vector<ClassElement>{}), Error);
    const std::vector<ClassElement> mixed{f, from_presentation(rank5(), {}, {}, 2)};
    EXPECT_THROW(pool_minimum(mixed), Error);
}

TEST(DescentBound, Examples) {
    const ClassElement base = from_presentation(rank3_e0(), {}, {}, 1);
    EXPECT_EQ(descent_bound(base.sigma(), 0, 3, 3, 0, 5), 1);

    // Sigma = k on [e, U] with floor r - rank E = 0.
    for (std::int64_t k = 1; k <= 3; ++k) {
        const SignedStep head(D{{0, k}});
        EXPECT_EQ(descent_bound(head, 0, 3, 3, 0, 7), 1 + k * (7 - 0 + 1));
    }
    EXPECT_THROW(descent_bound(SignedStep(D{{9, 1}}), 0, 3, 3, 0, 7), Error);
    EXPECT_THROW(descent_bound(SignedStep(D{{0, -1}}), 0, 3, 3, 0, 7), Error);
}

TEST(DescentBound, CountsEveryDegreeOfTheWindowOracle) {
    oracle::Gen g(4242);
    const PrimitiveDescriptor anc = rank3_e0();
    for (int i = 0; i < 500; ++i) {
        const SignedStep head = g.admissible(anc, 1, -10, 10);
        Count expect = 1;
        for (Degree l = -10; l <= 10; ++l) expect += head.value(l) - (l < 0 ? 0 : 1 - 3);
        EXPECT_EQ(descent_bound(head, 0, 3, 1, -10, 10), expect);
    }
}

TEST(PoolMinimumProperty, MatchesBruteForce) {
    oracle::Gen g(0xb00b);
    const PrimitiveDescriptor anc = rank3_e0();
    for (int round = 0; round < 40; ++round) {
        std::vector<ClassElement> pool;
        for (int i = 0; i < 50; ++i) pool.emplace_back(anc, g.admissible(anc, 1, -10, 10), 2);
        const PoolMinimum pm = pool_minimum(pool);
        // Brute force: pointwise minimum over every degree where any member jumps.
        std::vector<Degree> pts;
        for (const auto& el : pool) {
            for (Degree d : el.sigma().support()) pts.push_back(d);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::map<Degree, std::int64_t> values;
        for (Degree l : pts) {
            std::int64_t lo = pool[0].sigma().value(l);
            for (const auto& el : pool) lo = std::min(lo, el.sigma().value(l));
            values[l] = lo;
        }
        EXPECT_EQ(pm.minimum.sigma(), SignedStep::from_values(values));
        EXPECT_TRUE(check_certificate(pool, pm.certificate));
        for (const auto& el : pool) EXPECT_TRUE(preceq(pm.minimum, el));
    }
}
