#pragma once

#include "ctfpack/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace ctfpack::test {

inline Graph random_graph(std::mt19937_64& rng, int n, double p)
{
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n)
{
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

/// Adjacency matrix as nested vectors, built only through has_edge.
inline std::vector<std::vector<bool>> matrix(const Graph& g)
{
    std::vector<std::vector<bool>> m(g.order(), std::vector<bool>(g.order()));
    for (int i = 0; i < g.order(); ++i)
        for (int j = 0; j < g.order(); ++j)
            m[i][j] = i != j && g.has_edge(i, j);
    return m;
}

inline int naive_triangle_count(const Graph& g)
{
    const auto m = matrix(g);
    int count = 0;
    for (int a = 0; a < g.order(); ++a)
        for (int b = a + 1; b < g.order(); ++b)
            for (int c = b + 1; c < g.order(); ++c)
                count += m[a][b] && m[a][c] && m[b][c];
    return count;
}

inline std::vector<std::uint64_t> naive_independent_sets(const Graph& g)
{
    const auto m = matrix(g);
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.order()); ++s) {
        bool ok = true;
        for (int i = 0; i < g.order() && ok; ++i)
            for (int j = i + 1; j < g.order() && ok; ++j)
                ok = ! (((s >> i) & 1U) && ((s >> j) & 1U) && m[i][j]);
        if (ok)
            out.push_back(s);
    }
    return out;
}

/// Tries every bijection.
inline bool brute_isomorphic(const Graph& g, const Graph& h)
{
    if (g.order() != h.order())
        return false;
    const auto a = matrix(g);
    const auto b = matrix(h);
    std::vector<int> p(g.order());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool same = true;
        for (int i = 0; i < g.order() && same; ++i)
            for (int j = i + 1; j < g.order() && same; ++j)
                same = a[i][j] == b[p[i]][p[j]];
        if (same)
            return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

/// e(g) minus the maximum cut, over all 2^n vertex splits.
inline int brute_bipartite_edit(const Graph& g)
{
    const auto m = matrix(g);
    int edges = 0;
    for (int i = 0; i < g.order(); ++i)
        for (int j = i + 1; j < g.order(); ++j)
            edges += m[i][j];
    int best = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.order()); ++s) {
        int cut = 0;
        for (int i = 0; i < g.order(); ++i)
            for (int j = i + 1; j < g.order(); ++j)
                cut += m[i][j] && (((s >> i) ^ (s >> j)) & 1U);
        best = std::max(best, cut);
    }
    return edges - best;
}

/// Reference graph6 writer working bit by bit from the format description.
inline std::string reference_graph6(const Graph& g)
{
    std::string out(1, static_cast<char>(63 + g.order()));
    std::vector<int> bits;
    for (int j = 1; j < g.order(); ++j)
        for (int i = 0; i < j; ++i)
            bits.push_back(g.has_edge(i, j) ? 1 : 0);
    while (bits.size() % 6 != 0)
        bits.push_back(0);
    for (std::size_t k = 0; k < bits.size(); k += 6) {
        int value = 0;
        for (int b = 0; b < 6; ++b)
            value = value * 2 + bits[k + b];
        out.push_back(static_cast<char>(63 + value));
    }
    return out;
}

} // namespace ctfpack::test
