// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every comparison is exact; runtime limits are wall-clock and pinned below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "../test_support.hpp"
#include "cli.hpp"

using namespace biliaison;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;

/// @param limit_ms wall-clock budget; <= 0 means none was specified.
void criterion(const char* id, const char* title, double limit_ms, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (limit_ms > 0 && ms > limit_ms) {
        o.require(false, "runtime " + std::to_string(ms) + " ms over the " + std::to_string(limit_ms) + " ms limit");
    }
    if (!o.pass) ++failures;
    std::printf("%s %s  %s  [%.3f ms%s]%s%s\n", id, o.pass ? "PASS" : "FAIL", title, ms,
                limit_ms > 0 ? (", limit " + std::to_string(static_cast<int>(limit_ms)) + " ms").c_str() : "",
                o.detail.empty() ? "" : "  -- ", o.detail.c_str());
}

ClassElement load_element(const std::string& file) {
    return io::element_from_json(cli::load(std::string(BILIAISON_DATA_DIR) + "/" + file));
}

PrimitiveDescriptor rank3_e0() {
    return {"E3", 3, 0, SectionCounts(0, {2}, SectionCounts::Rule::constant, 0, 5), std::nullopt, true};
}

}  // namespace

int main() {
    criterion("AC1", "lattice worked example: join (1,2,4), meet (2,3)", 1.0, [] {
        Outcome o;
        o.require(seq_join({1, 3, 4}, {2, 2}) == SortedSeq{1, 2, 4}, "join != (1,2,4)");
        o.require(seq_meet({1, 3, 4}, {2, 2}) == SortedSeq{2, 3}, "meet != (2,3)");
        return o;
    });

    criterion("AC2", "padding oracle agreement and lattice laws on 10^4 random inputs", 5000.0, [] {
        Outcome o;
        oracle::Gen g(20240601);
        for (int i = 0; i < 10000 && o.pass; ++i) {
            const SortedSeq a = g.seq(12, -20, 20), b = g.seq(12, -20, 20);
            const MeetJoin p = padded_oracle(a, b);
            o.require(seq_meet(a, b) == p.meet, "meet disagrees with padded oracle at trial " + std::to_string(i));
            o.require(seq_join(a, b) == p.join, "join disagrees with padded oracle at trial " + std::to_string(i));
        }
        for (int i = 0; i < 10000 && o.pass; ++i) {
            const SortedSeq a = g.seq(12, -20, 20), b = g.seq(12, -20, 20), c = g.seq(12, -20, 20);
            const std::string at = " at trial " + std::to_string(i);
            o.require(seq_meet(a, b) == seq_meet(b, a) && seq_join(a, b) == seq_join(b, a), "commutativity" + at);
            o.require(seq_meet(seq_meet(a, b), c) == seq_meet(a, seq_meet(b, c)), "meet associativity" + at);
            o.require(seq_join(seq_join(a, b), c) == seq_join(a, seq_join(b, c)), "join associativity" + at);
            o.require(seq_meet(a, a) == a && seq_join(a, a) == a, "idempotence" + at);
            o.require(seq_meet(a, seq_join(a, b)) == a && seq_join(a, seq_meet(a, b)) == a, "absorption" + at);
        }
        return o;
    });

    criterion("AC3", "necessary condition: NOT_MINIMAL at degree 1, wedge (1,1,2)", 1.0, [] {
        Outcome o;
        const NecessaryResult r = necessary_check({1, 1, 1}, {2, 2, 2}, 5, 3);
        o.require(r.u == 2 && r.c_prime == SortedSeq{1, 1}, "c' != (1,1)");
        o.require(r.verdict == Verdict::not_minimal, "verdict is not NOT_MINIMAL");
        o.require(r.witness == std::optional<Degree>(1), "witness degree != 1");
        o.require(seq_join({1, 1}, {2, 2, 2}) == SortedSeq{1, 1, 2}, "join((1,1),(2,2,2)) != (1,1,2)");
        return o;
    });

    criterion("AC4", "Euler sequence on P^2: rank 2, jumps {0:+3,1:-1}, h0 matches binomials", 1.0, [] {
        Outcome o;
        const ClassElement f = from_presentation(PrimitiveDescriptor::zero_sheaf(2), {1}, {0, 0, 0}, 2);
        o.require(f.rank() == 2, "rank != 2");
        o.require(f.sigma().deltas() == SignedStep::Deltas{{0, 3}, {1, -1}}, "Sigma jumps differ");
        o.require(hilbert(f, 0) == 3, "h0(F(0)) != 3");
        for (Degree l = -3; l <= 5; ++l) {
            const std::int64_t expect = 3 * oracle::binom(l + 2, 2) - oracle::binom(l + 1, 2);
            o.require(hilbert(f, l) == expect, "h0 differs from binomial oracle at l=" + std::to_string(l));
        }
        return o;
    });

    criterion("AC5", "Sigma independent of presentation padding; composition identity", 0.0, [] {
        Outcome o;
        oracle::Gen g(5);
        for (int i = 0; i < 1000 && o.pass; ++i) {
            const SortedSeq a = g.seq(6, -10, 10), b = g.seq(6, -10, 10), pad = g.seq(6, -10, 10);
            const std::string at = " at trial " + std::to_string(i);
            o.require(signed_from_pair(b.merged(pad), a.merged(pad)) == signed_from_pair(b, a), "padding" + at);
            o.require(oracle::dense_of(signed_from_pair(b, a)) == oracle::dense_pair(b.vec(), a.vec()),
                      "dense oracle" + at);

            const ClassElement gg = from_presentation(PrimitiveDescriptor::zero_sheaf(), {}, g.seq(6, -10, 10), 1);
            const SortedSeq a2 = g.seq(3, -10, 10), b2 = g.seq(3, -10, 10);
            if (gg.rank() + static_cast<std::int64_t>(b2.size()) < static_cast<std::int64_t>(a2.size())) continue;
            const ClassElement f = compose_ancestor(gg, a2, b2);
            o.require(f.sigma() + SignedStep::counting(a2) == gg.sigma() + SignedStep::counting(b2),
                      "composition identity" + at);
        }
        return o;
    });

    criterion("AC6", "synthesized chains verify, descend, telescope on 10^3 random pairs", 0.0, [] {
        Outcome o;
        oracle::Gen g(66);
        const std::vector<PrimitiveDescriptor> ancestors{PrimitiveDescriptor::zero_sheaf(), rank3_e0()};
        for (int i = 0; i < 1000 && o.pass; ++i) {
            const PrimitiveDescriptor& anc = ancestors[static_cast<std::size_t>(i % 2)];
            const SignedStep min_sigma = g.admissible(anc, anc.is_zero() ? 0 : 1, -10, 10);
            const std::int64_t room = 6 - anc.rank - min_sigma.eventual();
            const ClassElement min_elt(anc, min_sigma, 1 + i % 3);
            const ClassElement start(anc, min_sigma + g.nonnegative(-10, 10, std::min<std::int64_t>(room, 3)),
                                     1 + i % 3);
            const std::string at = " at trial " + std::to_string(i);
            o.require(start.rank() <= 6, "generator exceeded rank 6" + at);

            const std::vector<Move> chain = synthesize_chain(start, min_elt);
            const ChainReport rep = verify_chain(start, chain, min_elt);
            o.require(rep.pass, "verify_chain failed" + at);
            std::size_t reductions = 0;
            SignedStep telescoped = start.sigma();
            for (const auto& mv : chain) {
                reductions += std::holds_alternative<Reduction>(mv.kind) ? 1 : 0;
                o.require(!std::holds_alternative<Extension>(mv.kind), "extension in a descending chain" + at);
                if (const auto* e = std::get_if<ElemBiliaison>(&mv.kind)) {
                    o.require(e->a < e->b, "non-descending elementary biliaison" + at);
                }
                telescoped += sigma_delta(mv);
            }
            o.require(reductions <= 1, "more than one reduction" + at);
            o.require(telescoped == min_elt.sigma(), "Sigma does not telescope" + at);
            for (const auto& s : rep.steps) {
                o.require(sigma_leq(min_elt.sigma(), s.sigma) && sigma_leq(s.sigma, start.sigma()),
                          "intermediate leaves [min, start]" + at);
            }
        }
        return o;
    });

    criterion("AC7", "descending meet chains within descent_bound; pool minimum matches brute force", 10000.0, [] {
        Outcome o;
        oracle::Gen g(77);
        const PrimitiveDescriptor anc = rank3_e0();
        for (int i = 0; i < 300 && o.pass; ++i) {
            ClassElement current(anc, g.admissible(anc, 1, -10, 10), 2);
            const Count bound = descent_bound(current, -10, 10);
            Count length = 1;
            for (int k = 0; k < 200; ++k) {
                const ClassElement other(anc, g.admissible(anc, 1, -10, 10), 2);
                ClassElement next = class_meet(current, other);
                if (next.sigma() == current.sigma()) continue;
                o.require(preceq(next, current), "meet is not below the current head");
                current = std::move(next);
                ++length;
            }
            o.require(length <= bound, "chain of length " + length.str() + " exceeds bound " + bound.str());
        }
        for (int round = 0; round < 100 && o.pass; ++round) {
            std::vector<ClassElement> pool;
            for (int i = 0; i < 50; ++i) pool.emplace_back(anc, g.admissible(anc, 1, -10, 10), 2);
            const PoolMinimum pm = pool_minimum(pool);
            std::vector<Degree> pts;
            for (const auto& el : pool) {
                for (Degree d : el.sigma().support()) pts.push_back(d);
            }
            std::map<Degree, std::int64_t> values;
            for (Degree l : pts) {
                std::int64_t lo = pool[0].sigma().value(l);
                for (const auto& el : pool) lo = std::min(lo, el.sigma().value(l));
                values[l] = lo;
            }
            o.require(pm.minimum.sigma() == SignedStep::from_values(values),
                      "pool minimum differs from brute force in round " + std::to_string(round));
            o.require(check_certificate(pool, pm.certificate), "meet certificate rejected");
        }
        return o;
    });

    criterion("AC8", "sufficient condition: Horrocks-Mumford MINIMAL, perturbed UNKNOWN at -3", 0.0, [] {
        Outcome o;
        const ClassElement hm = load_element("hm.json");
        o.require(hm.presentation() && hm.presentation()->a == SortedSeq{-2, -2, -2, -2, -2} &&
                      hm.presentation()->b.empty(),
                  "fixture is not five twists at -2");
        for (Degree l = -12; l < -2; ++l) o.require(hilbert(hm, l) == 0, "h0(F(l)) != 0 below -2");
        o.require(sufficient_check(hm, true).verdict == Verdict::minimal, "instance is not MINIMAL");

        const ClassElement pert = load_element("hm_perturbed.json");
        o.require(hilbert(pert, -3) == 1, "perturbed h0(F(-3)) != 1");
        const SufficientResult r = sufficient_check(pert, true);
        o.require(r.verdict == Verdict::unknown, "perturbed instance is not UNKNOWN");
        o.require(r.witness == std::optional<Degree>(-3), "perturbed witness != -3");
        return o;
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
