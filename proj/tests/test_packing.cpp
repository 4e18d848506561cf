#include "ctfpack/packing.hpp"
#include "ctfpack/graph6.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ctfpack;

namespace {

    Graph c5_blowup() { return graphs::blowup(graphs::cycle(5), std::vector<int>(5, 5)); }

    Graph two_cliques(int a, int b) { return graphs::disjoint_union(graphs::complete(a), graphs::complete(b)); }

    /// Copy of g with every edge at v removed, keeping labels.
    Graph isolate(const Graph& g, int v)
    {
        Graph h = g;
        for (int u = 0; u < g.order(); ++u)
            if (h.has_edge(u, v))
                h.remove_edge(u, v);
        return h;
    }

    /// Exhaustive integer packing over subsets of triangles (small inputs only).
    int subset_integer_packing(const Graph& g)
    {
        const auto ts = triangles(g);
        int best = 0;
        for (std::uint32_t mask = 0; mask < (1U << ts.size()); ++mask) {
            std::set<Edge> used;
            bool ok = true;
            for (std::size_t i = 0; i < ts.size() && ok; ++i)
                if ((mask >> i) & 1U)
                    for (const Edge& e : ts[i].edges())
                        ok = ok && used.insert(e).second;
            if (ok)
                best = std::max(best, 3 * std::popcount(mask));
        }
        return best;
    }

} // namespace

TEST(Eta, Examples)
{
    const EtaReport b = eta(complement(c5_blowup()));
    EXPECT_EQ(b.nu_star, 150);
    EXPECT_EQ(b.eta, Rational(1, 4));
    EXPECT_TRUE(b.co_triangle_free);
    EXPECT_FALSE(b.co_bipartite);

    const EtaReport k = eta(two_cliques(13, 13));
    EXPECT_EQ(k.eta, Rational(6, 25));
    EXPECT_TRUE(k.co_bipartite);

    EXPECT_EQ(eta(graphs::cycle(5)).eta, 0);
    EXPECT_THROW(eta(Graph(1)), PackingError);
}

TEST(Eta, ScalesNuStarExactly)
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const EtaReport r = eta(test::random_graph(rng, n, 0.6));
        EXPECT_EQ(r.eta * (n * (n - 1)), r.nu_star);
    }
}

TEST(EtaGeneral, Examples)
{
    const Graph h = complement(graphs::petersen());
    EXPECT_EQ(eta_general(h), eta(h).eta);
    EXPECT_EQ(eta_general(graphs::complete_bipartite(4, 4)), Rational(3, 14));
    EXPECT_EQ(eta_general(graphs::cycle(5)), 0);
    EXPECT_THROW(eta_general(Graph(0)), PackingError);
}

TEST(EtaGeneral, ComplementSymmetric)
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        const Graph g = test::random_graph(rng, 3 + static_cast<int>(rng() % 6), 0.5);
        EXPECT_EQ(eta_general(g), eta_general(complement(g)));
    }
}

TEST(VerifyPacking, Examples)
{
    const Graph k4 = graphs::complete(4);
    Packing half{k4, {}};
    for (const Triangle& t : triangles(k4))
        half.weights[t] = Rational(1, 2);
    const PackingReport r = verify_packing(k4, half);
    EXPECT_TRUE(r.feasible);
    EXPECT_EQ(r.size, 6);
    EXPECT_EQ(r.tight_edges, 6);

    Packing shared{k4, {{Triangle{0, 1, 2}, 1}, {Triangle{0, 1, 3}, 1}}};
    const PackingReport s = verify_packing(k4, shared);
    EXPECT_FALSE(s.feasible);
    ASSERT_FALSE(s.violations.empty());

    const PackingReport e = verify_packing(graphs::petersen(), Packing{graphs::petersen(), {}});
    EXPECT_TRUE(e.feasible);
    EXPECT_EQ(e.size, 0);
}

TEST(VerifyPacking, FlagsNonTrianglesAndBadWeights)
{
    const Graph g = graphs::complete_minus_matching(4, 1);
    EXPECT_FALSE(verify_packing(g, Packing{g, {{Triangle{0, 1, 2}, Rational(1, 2)}}}).feasible);
    EXPECT_FALSE(verify_packing(g, Packing{g, {{Triangle{0, 2, 3}, Rational(-1, 2)}}}).feasible);
    EXPECT_FALSE(verify_packing(g, Packing{g, {{Triangle{0, 2, 3}, Rational(3, 2)}}}).feasible);
    EXPECT_FALSE(verify_packing(g, Packing{g, {{Triangle{1, 2, 7}, Rational(1, 2)}}}).feasible);
}

TEST(AveragePackings, K4FromTriangles)
{
    const Graph k4 = graphs::complete(4);
    std::vector<Packing> parts;
    for (int i = 0; i < 4; ++i) {
        Packing p{k4, {}};
        std::vector<int> rest;
        for (int v = 0; v < 4; ++v)
            if (v != i)
                rest.push_back(v);
        p.weights[make_triangle(rest[0], rest[1], rest[2])] = 1;
        parts.push_back(p);
    }
    const Packing avg = average_packings(k4, parts);
    const PackingReport r = verify_packing(k4, avg);
    EXPECT_TRUE(r.feasible);
    EXPECT_EQ(r.size, 6);
    EXPECT_EQ(r.tight_edges, 6);
}

TEST(AveragePackings, ZeroInputs)
{
    const Graph g = graphs::complete(5);
    const std::vector<Packing> zeros(5, Packing{g, {}});
    EXPECT_EQ(average_packings(g, zeros).size(), 0);
}

TEST(AveragePackings, K5FromK4Decompositions)
{
    const Graph k5 = graphs::complete(5);
    std::vector<Packing> parts;
    for (int i = 0; i < 5; ++i) {
        Packing p{k5, {}};
        for (const Triangle& t : triangles(k5))
            if (! t.contains(i))
                p.weights[t] = Rational(1, 2);
        parts.push_back(p);
    }
    const PackingReport r = verify_packing(k5, average_packings(k5, parts));
    EXPECT_TRUE(r.feasible);
    EXPECT_EQ(r.size, 10);
    EXPECT_EQ(r.tight_edges, 10);
}

TEST(AveragePackings, RejectsBadInputs)
{
    const Graph k4 = graphs::complete(4);
    std::vector<Packing> parts(4, Packing{k4, {}});
    parts[0].weights[Triangle{0, 1, 2}] = 1;
    EXPECT_THROW(average_packings(k4, parts), PackingError);
    parts[0].weights.clear();
    parts[1].weights[Triangle{0, 2, 3}] = 2;
    EXPECT_THROW(average_packings(k4, parts), PackingError);
    EXPECT_THROW(average_packings(k4, std::vector<Packing>(3, Packing{k4, {}})), PackingError);
}

TEST(Averaging, InequalityOnRandomGraphs)
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 25; ++i) {
        const int n = 4 + static_cast<int>(rng() % 5);
        const Graph g = test::random_graph(rng, n, 0.65);
        Rational sum_eta = 0;
        Rational min_eta = 1;
        Rational sum_nu = 0;
        std::vector<Packing> parts;
        for (int v = 0; v < n; ++v) {
            const Graph sub = delete_vertex(g, v);
            const Rational e = eta(sub).eta;
            sum_eta += e;
            min_eta = std::min(min_eta, e);
            const LpResult r = solve_packing_lp(isolate(g, v));
            ASSERT_TRUE(verify_certificate(isolate(g, v), r));
            sum_nu += r.nu_star;
            parts.push_back(Packing{g, r.primal.weights});
        }
        const Rational whole = eta(g).eta;
        EXPECT_GE(whole, sum_eta / n);
        EXPECT_GE(whole, min_eta);
        const PackingReport avg = verify_packing(g, average_packings(g, parts));
        EXPECT_TRUE(avg.feasible);
        EXPECT_EQ(avg.size, sum_nu / (n - 2));
    }
}

TEST(CompleteMinusMatching, Examples)
{
    const PackingReport k7 = verify_packing(graphs::complete(7), decompose_complete_minus_matching(7, 0));
    EXPECT_TRUE(k7.feasible);
    EXPECT_EQ(k7.size, 21);
    const Graph m73 = graphs::complete_minus_matching(7, 3);
    const PackingReport r73 = verify_packing(m73, decompose_complete_minus_matching(7, 3));
    EXPECT_EQ(r73.size, 18);
    EXPECT_TRUE(has_fractional_decomposition(m73));
    const Graph m105 = graphs::complete_minus_matching(10, 5);
    const PackingReport r105 = verify_packing(m105, decompose_complete_minus_matching(10, 5));
    EXPECT_TRUE(r105.feasible);
    EXPECT_EQ(r105.size, 40);
}

TEST(CompleteMinusMatching, EveryEdgeTight)
{
    for (int n = 7; n <= 14; ++n)
        for (int k = 0; 2 * k <= n; ++k) {
            const Graph g = graphs::complete_minus_matching(n, k);
            const PackingReport r = verify_packing(g, decompose_complete_minus_matching(n, k));
            EXPECT_TRUE(r.feasible) << n << ' ' << k;
            EXPECT_EQ(r.tight_edges, g.edge_count()) << n << ' ' << k;
        }
}

TEST(CompleteMinusMatching, RejectsOutOfRange)
{
    EXPECT_THROW(decompose_complete_minus_matching(6, 0), PackingError);
    EXPECT_THROW(decompose_complete_minus_matching(8, 5), PackingError);
    EXPECT_THROW(decompose_complete_minus_matching(8, -1), PackingError);
}

TEST(IsCritical, Examples)
{
    const auto w = is_critical(complement(graphs::cycle(9)));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->apex, 0);
    EXPECT_FALSE(is_critical(two_cliques(5, 5)).has_value());
    EXPECT_FALSE(is_critical(complement(c5_blowup())).has_value());
    EXPECT_THROW(is_critical(Graph(3)), PackingError);
}

TEST(IsCritical, WitnessSatisfiesDefinitions)
{
    for (int n = 7; n <= 25; n += 2) {
        const Graph g = complement(graphs::cycle(n));
        const auto w = is_critical(g);
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(w->u | w->w, g.vertices() & ~bit(w->apex));
        EXPECT_TRUE(is_clique(g, w->u));
        EXPECT_TRUE(is_clique(g, w->w));
        EXPECT_EQ(w->a | w->x, w->u);
        EXPECT_EQ(w->b | w->y, w->w);
        EXPECT_NE(w->x, 0U);
        EXPECT_NE(w->y, 0U);
        for (int x : members(w->x))
            EXPECT_EQ(g.neighbors(x) & w->y, w->y);
    }
}

TEST(CriticalPacking, OddCycleComplements)
{
    for (int n = 19; n <= 25; n += 2) {
        const Graph g = complement(graphs::cycle(n));
        const Packing p = critical_packing(g, *is_critical(g));
        const PackingReport r = verify_packing(g, p);
        EXPECT_TRUE(r.feasible) << n;
        EXPECT_GE(4 * r.size, n * n - 17) << n;
        EXPECT_GT(4 * r.size, n * (n - 1)) << n;
        EXPECT_LE(r.size, nu_star(g)) << n;
    }
}

TEST(CriticalPacking, UnbalancedBlowups)
{
    // One singleton class makes the complement critical; sizes vary the parities of X and Y.
    for (const std::vector<int>& sizes : {std::vector<int>{1, 5, 4, 5, 4}, std::vector<int>{1, 4, 5, 4, 5},
             std::vector<int>{1, 5, 5, 5, 5}, std::vector<int>{1, 4, 4, 5, 5}, std::vector<int>{1, 6, 3, 4, 6}}) {
        const Graph g = complement(graphs::blowup(graphs::cycle(5), sizes));
        const auto w = is_critical(g);
        ASSERT_TRUE(w.has_value());
        const PackingReport r = verify_packing(g, critical_packing(g, *w));
        EXPECT_TRUE(r.feasible);
        EXPECT_GE(4 * r.size, g.order() * g.order() - 17);
    }
}

TEST(CriticalPacking, PreconditionsNamed)
{
    const Graph small = complement(graphs::cycle(17));
    try {
        critical_packing(small, *is_critical(small));
        FAIL();
    }
    catch (const PackingError& e) {
        EXPECT_NE(std::string(e.what()).find("n >= 18"), std::string::npos);
    }

    // |U| = 6: a blowup whose path side is short.
    const Graph lopsided = complement(graphs::blowup(graphs::cycle(5), std::vector<int>{1, 3, 3, 3, 9}));
    const auto w = is_critical(lopsided);
    ASSERT_TRUE(w.has_value());
    ASSERT_EQ(std::min(set_size(w->u), set_size(w->w)), 6);
    try {
        critical_packing(lopsided, *w);
        FAIL();
    }
    catch (const PackingError& e) {
        EXPECT_NE(std::string(e.what()).find("< 7"), std::string::npos) << e.what();
    }

    const Graph g = complement(graphs::cycle(19));
    CriticalWitness bad = *is_critical(g);
    std::swap(bad.a, bad.x);
    EXPECT_THROW(critical_packing(g, bad), PackingError);
}

TEST(NuInteger, Examples)
{
    EXPECT_EQ(nu_integer(graphs::complete(3)), 3);
    EXPECT_EQ(nu_integer(graphs::complete(4)), 3);
    EXPECT_EQ(nu_integer(graphs::complete(6)), 12);
    EXPECT_EQ(nu_integer(graphs::cycle(5)), 0);
    EXPECT_THROW(nu_integer(Graph(13)), PackingError);
}

TEST(NuInteger, MatchesSubsetSearchAndLpBound)
{
    std::mt19937_64 rng(44);
    int checked = 0;
    while (checked < 40) {
        const Graph g = test::random_graph(rng, 5 + static_cast<int>(rng() % 3), 0.6);
        if (triangle_count(g) > 16)
            continue;
        ++checked;
        const int v = nu_integer(g);
        EXPECT_EQ(v, subset_integer_packing(g)) << graph6_encode(g);
        EXPECT_LE(v, nu_star(g));
    }
    EXPECT_EQ(nu_integer(graphs::complete(3)), nu_star(graphs::complete(3)));
    EXPECT_LT(nu_integer(graphs::complete(4)), nu_star(graphs::complete(4)));
    EXPECT_EQ(nu_integer(graphs::complete(7)), 21);
    EXPECT_EQ(nu_integer(graphs::complete(9)), 36);
}

TEST(FSmall, Examples)
{
    EXPECT_EQ(f_small(6), 3);
    EXPECT_EQ(f_small(5), 0);
    // A colouring of K3 using both colours has no monochromatic triangle.
    EXPECT_EQ(f_small(3), 0);
    EXPECT_EQ(f_small(0), 0);
    EXPECT_THROW(f_small(7), PackingError);
}

TEST(Conjecture51, Examples)
{
    const Conjecture51Report k44 = conjecture51_hypothesis(graphs::complete_bipartite(4, 4));
    EXPECT_EQ(k44.min_side_edit, 0);
    EXPECT_TRUE(k44.within_bound);

    Graph joined = two_cliques(4, 4);
    joined.add_edge(0, 4);
    const Conjecture51Report j = conjecture51_hypothesis(joined);
    EXPECT_LE(j.min_side_edit, 1);
    EXPECT_TRUE(j.within_bound);

    const Conjecture51Report c5 = conjecture51_hypothesis(graphs::cycle(5));
    EXPECT_EQ(c5.min_side_edit, 1);
    EXPECT_FALSE(c5.within_bound);
    EXPECT_EQ(c5.eta_general, 0);

    EXPECT_THROW(conjecture51_hypothesis(Graph(29)), PackingError);
}

TEST(CoBipartiteBound, TwoCliques)
{
    for (int n = 6; n <= 12; ++n)
        for (int a = 0; 2 * a <= n; ++a)
            EXPECT_GE(4 * nu_star(two_cliques(a, n - a)), n * (n - 2)) << n << ' ' << a;
}

TEST(WritePacking, CertificateFormatWithoutDual)
{
    const Packing p = decompose_complete_minus_matching(7, 0);
    std::stringstream s;
    write_packing(s, p);
    const ParsedCertificate back = read_certificate(s);
    EXPECT_EQ(back.graph, graphs::complete(7));
    EXPECT_EQ(back.result.nu_star, 21);
    EXPECT_TRUE(back.result.dual.empty());
    EXPECT_TRUE(verify_packing(back.graph, back.result.primal).feasible);
}
