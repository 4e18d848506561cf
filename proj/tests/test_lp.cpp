#include "ctfpack/lp.hpp"
#include "ctfpack/graph6.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ctfpack;

namespace {

    Graph c5_blowup_complement()
    {
        return complement(graphs::blowup(graphs::cycle(5), std::vector<int>(5, 5)));
    }

    /// Integer packing built greedily in triangle order.
    int greedy_integer_packing(const Graph& g)
    {
        Graph left = g;
        int size = 0;
        for (const Triangle& t : triangles(g)) {
            bool free = true;
            for (const Edge& e : t.edges())
                free = free && left.has_edge(e.u, e.v);
            if (free) {
                for (const Edge& e : t.edges())
                    left.remove_edge(e.u, e.v);
                size += 3;
            }
        }
        return size;
    }

} // namespace

TEST(SolvePackingLp, Examples)
{
    const LpResult c5 = solve_packing_lp(graphs::cycle(5));
    EXPECT_EQ(c5.nu_star, 0);
    EXPECT_TRUE(c5.primal.weights.empty());
    EXPECT_EQ(c5.route, LpRoute::trivial);

    const Graph k4 = graphs::complete(4);
    const LpResult r = solve_packing_lp(k4);
    EXPECT_EQ(r.nu_star, 6);
    EXPECT_TRUE(verify_certificate(k4, r));

    EXPECT_EQ(solve_packing_lp(graphs::complete_minus_matching(4, 1)).nu_star, 3);
}

TEST(SolvePackingLp, StatedK4WeightingIsOptimal)
{
    const Graph k4 = graphs::complete(4);
    LpResult r;
    r.nu_star = 6;
    for (const Triangle& t : triangles(k4))
        r.primal.weights[t] = Rational(1, 2);
    for (const Edge& e : k4.edges())
        r.dual[e] = Rational(1, 3);
    EXPECT_TRUE(verify_certificate(k4, r));
}

TEST(SolvePackingLp, BlowupComplementIsExactlyAQuarter)
{
    const Graph g = c5_blowup_complement();
    const LpResult r = solve_packing_lp(g);
    EXPECT_TRUE(verify_certificate(g, r));
    EXPECT_EQ(r.nu_star, 150);
    EXPECT_EQ(r.nu_star / (25 * 24), Rational(1, 4));
}

TEST(SolvePackingLp, ExactRouteWithoutPresolve)
{
    for (const Graph& g : {graphs::complete(6), complement(graphs::cycle(9)), graphs::complete_minus_matching(7, 3)}) {
        const LpResult warm = solve_packing_lp(g);
        const LpResult cold = solve_packing_lp(g, {.presolve = false});
        EXPECT_EQ(cold.route, LpRoute::exact_simplex);
        EXPECT_TRUE(verify_certificate(g, cold));
        EXPECT_EQ(warm.nu_star, cold.nu_star);
    }
}

TEST(VerifyCertificate, RejectsOverload)
{
    const Graph k4 = graphs::complete(4);
    LpResult r = solve_packing_lp(k4);
    for (auto& [t, w] : r.primal.weights)
        w = Rational(3, 4);
    r.primal.weights[Triangle{0, 1, 2}] = Rational(3, 4);
    r.primal.weights[Triangle{0, 1, 3}] = Rational(3, 4);
    r.primal.weights[Triangle{0, 2, 3}] = Rational(3, 4);
    r.primal.weights[Triangle{1, 2, 3}] = Rational(3, 4);
    const CertificateCheck c = verify_certificate(k4, r);
    EXPECT_FALSE(c);
    EXPECT_NE(c.diagnostic.find("overloaded"), std::string::npos) << c.diagnostic;
}

TEST(VerifyCertificate, RejectsCoverDeficit)
{
    const Graph k4 = graphs::complete(4);
    LpResult r = solve_packing_lp(k4);
    r.dual.clear();
    for (const Edge& e : k4.edges())
        r.dual[e] = Rational(1, 4);
    const CertificateCheck c = verify_certificate(k4, r);
    EXPECT_FALSE(c);
    EXPECT_NE(c.diagnostic.find("3/4"), std::string::npos) << c.diagnostic;
}

TEST(VerifyCertificate, RejectsNonTriangleAndNonEdge)
{
    const Graph g = graphs::complete_minus_matching(4, 1);
    LpResult r = solve_packing_lp(g);
    LpResult bad = r;
    bad.primal.weights[Triangle{0, 1, 2}] = 0;
    EXPECT_FALSE(verify_certificate(g, bad));
    bad = r;
    bad.dual[Edge{0, 1}] = 0;
    EXPECT_FALSE(verify_certificate(g, bad));
    bad = r;
    bad.status = LpStatus::infeasible_model_error;
    EXPECT_FALSE(verify_certificate(g, bad));
}

TEST(VerifyCertificate, EveryMutationIsCaught)
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
        const Graph g = test::random_graph(rng, 7 + static_cast<int>(rng() % 3), 0.7);
        const LpResult r = solve_packing_lp(g);
        ASSERT_TRUE(verify_certificate(g, r));
        for (const auto& [t, w] : r.primal.weights) {
            for (const Rational delta : {Rational(1, 1000), Rational(-1, 1000)}) {
                LpResult m = r;
                m.primal.weights[t] += delta;
                EXPECT_FALSE(verify_certificate(g, m));
            }
        }
        for (const auto& [e, y] : r.dual) {
            LpResult m = r;
            m.dual[e] += Rational(1, 1000);
            EXPECT_FALSE(verify_certificate(g, m));
        }
        LpResult m = r;
        m.nu_star += 1;
        EXPECT_FALSE(verify_certificate(g, m));
    }
}

TEST(NuStar, Examples)
{
    EXPECT_EQ(nu_star(graphs::complete(3)), 3);
    EXPECT_EQ(nu_star(graphs::disjoint_union(graphs::complete(13), graphs::complete(13))), 156);
    EXPECT_EQ(nu_star(complement(graphs::cycle(5))), 0);
}

TEST(HasFractionalDecomposition, Examples)
{
    EXPECT_TRUE(has_fractional_decomposition(graphs::complete_minus_matching(7, 3)));
    EXPECT_FALSE(has_fractional_decomposition(graphs::complete_minus_matching(4, 1)));
    EXPECT_FALSE(has_fractional_decomposition(graphs::petersen()));
}

TEST(NuStar, BoundsAndInvariance)
{
    std::mt19937_64 rng(32);
    for (int i = 0; i < 40; ++i) {
        const int n = 4 + static_cast<int>(rng() % 8);
        const Graph g = test::random_graph(rng, n, 0.6);
        const Rational v = nu_star(g);
        EXPECT_GE(v, 0);
        EXPECT_LE(v, g.edge_count());
        EXPECT_GE(v, greedy_integer_packing(g));
        EXPECT_EQ(nu_star(relabel(g, test::random_permutation(rng, n))), v);
    }
}

TEST(NuStar, MonotoneUnderEdgeAddition)
{
    std::mt19937_64 rng(33);
    for (int i = 0; i < 30; ++i) {
        const int n = 5 + static_cast<int>(rng() % 5);
        Graph g = test::random_graph(rng, n, 0.5);
        const Graph full = complement(g);
        if (full.edge_count() == 0)
            continue;
        const auto missing = full.edges();
        const Edge e = missing[rng() % missing.size()];
        const Rational before = nu_star(g);
        g.add_edge(e.u, e.v);
        EXPECT_GE(nu_star(g), before);
    }
}

TEST(NuStar, WeakDualityOnPerturbedPairs)
{
    std::mt19937_64 rng(34);
    std::uniform_int_distribution<int> num(0, 10);
    for (int i = 0; i < 20; ++i) {
        const Graph g = test::random_graph(rng, 8, 0.7);
        const LpResult r = solve_packing_lp(g);
        // Shrinking a packing and growing a cover keeps both feasible.
        LpResult p = r;
        for (auto& [t, w] : p.primal.weights)
            w *= Rational(num(rng), 10);
        for (const Edge& e : g.edges())
            p.dual[e] += Rational(num(rng), 10);
        Rational packing = 0;
        Rational cover = 0;
        for (const auto& [t, w] : p.primal.weights)
            packing += 3 * w;
        for (const auto& [e, y] : p.dual)
            cover += 3 * y;
        EXPECT_LE(packing, cover);
        EXPECT_LE(packing, r.nu_star);
        EXPECT_GE(cover, r.nu_star);
    }
}

TEST(NuStar, PresolveDoesNotChangeValues)
{
    std::mt19937_64 rng(35);
    for (int i = 0; i < 25; ++i) {
        const Graph g = test::random_graph(rng, 6 + static_cast<int>(rng() % 4), 0.65);
        EXPECT_EQ(nu_star(g, {.presolve = true}), nu_star(g, {.presolve = false})) << graph6_encode(g);
    }
}

TEST(Certificate, TextRoundTrip)
{
    const Graph g = complement(graphs::cycle(9));
    const LpResult r = solve_packing_lp(g);
    std::stringstream s;
    write_certificate(s, g, r);
    const std::string text = s.str();
    EXPECT_EQ(text.substr(0, 2), "9\n");
    const ParsedCertificate back = read_certificate(s);
    EXPECT_EQ(back.graph, g);
    EXPECT_EQ(back.result.nu_star, r.nu_star);
    EXPECT_TRUE(verify_certificate(back.graph, back.result));
}

TEST(Certificate, ReadRejectsMalformedText)
{
    std::istringstream wrong_n("4\nBw\n3/1\n");
    EXPECT_THROW(read_certificate(wrong_n), std::invalid_argument);
    std::istringstream junk("3\nBw\n3/1\n0 1\n");
    EXPECT_THROW(read_certificate(junk), std::invalid_argument);
    std::istringstream zero_den("3\nBw\n3/0\n");
    EXPECT_THROW(read_certificate(zero_den), std::invalid_argument);
}

TEST(Threshold, DecidesBothSides)
{
    const Graph g = c5_blowup_complement();
    const ThresholdCertificate at = decide_nu_star_at_most(g, Rational(150));
    EXPECT_EQ(at.kind, ThresholdCertificate::Kind::at_most);
    EXPECT_TRUE(verify_threshold_certificate(g, at));
    const ThresholdCertificate over = decide_nu_star_at_most(g, Rational(299, 2));
    EXPECT_EQ(over.kind, ThresholdCertificate::Kind::exceeds);
    EXPECT_TRUE(verify_threshold_certificate(g, over));
}

TEST(Threshold, AgreesWithExactValue)
{
    std::mt19937_64 rng(36);
    for (int i = 0; i < 40; ++i) {
        const Graph g = test::random_graph(rng, 6 + static_cast<int>(rng() % 5), 0.7);
        const Rational v = nu_star(g);
        for (const Rational& bound : std::vector<Rational>{v, v - Rational(1, 3), v + Rational(1, 3)}) {
            for (bool presolve : {true, false}) {
                const ThresholdCertificate c = decide_nu_star_at_most(g, bound, {.presolve = presolve});
                EXPECT_EQ(c.kind == ThresholdCertificate::Kind::at_most, v <= bound);
                EXPECT_TRUE(verify_threshold_certificate(g, c));
            }
        }
    }
}

TEST(Threshold, RejectsTamperedCertificates)
{
    const Graph g = graphs::complete(5);
    ThresholdCertificate c = decide_nu_star_at_most(g, Rational(10));
    ASSERT_EQ(c.kind, ThresholdCertificate::Kind::at_most);
    c.bound = Rational(19, 2);
    EXPECT_FALSE(verify_threshold_certificate(g, c));

    ThresholdCertificate e = decide_nu_star_at_most(g, Rational(9));
    ASSERT_EQ(e.kind, ThresholdCertificate::Kind::exceeds);
    e.bound = Rational(10);
    EXPECT_FALSE(verify_threshold_certificate(g, e));
    e.bound = Rational(9);
    e.packing.begin()->second += 1;
    EXPECT_FALSE(verify_threshold_certificate(g, e));
}

TEST(Counters, CountSolvesAndVerifications)
{
    const LpCounters before = lp_counters();
    const Graph g = graphs::complete(5);
    const LpResult r = solve_packing_lp(g);
    EXPECT_TRUE(verify_certificate(g, r));
    LpResult bad = r;
    bad.nu_star += 1;
    EXPECT_FALSE(verify_certificate(g, bad));
    const LpCounters after = lp_counters();
    EXPECT_EQ(after.solves - before.solves, 1);
    EXPECT_EQ(after.verified - before.verified, 1);
    EXPECT_EQ(after.rejected - before.rejected, 1);
}
