#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ctfpack {

inline constexpr int kMaxVertices = 62;

/// Bit i set iff vertex i is a member.
using VertexSet = std::uint64_t;

constexpr VertexSet bit(int v) { return VertexSet{1} << v; }
constexpr VertexSet prefix_set(int n) { return n >= 64 ? ~VertexSet{0} : bit(n) - 1; }
inline int set_size(VertexSet s) { return std::popcount(s); }
inline int lowest(VertexSet s) { return std::countr_zero(s); }

std::vector<int> members(VertexSet s);
VertexSet make_set(std::span<const int> vertices);

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Edge {
    int u = 0;
    int v = 0;

    auto operator<=>(const Edge&) const = default;
};

/// Normalised so that u < v.
inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct Triangle {
    int a = 0;
    int b = 0;
    int c = 0;

    auto operator<=>(const Triangle&) const = default;

    bool contains(int v) const { return a == v || b == v || c == v; }
    std::array<Edge, 3> edges() const { return {Edge{a, b}, Edge{a, c}, Edge{b, c}}; }
};

/// Sorts the three vertices; throws GraphError on repeated vertices.
Triangle make_triangle(int x, int y, int z);

/// Simple undirected graph on at most 62 vertices stored as bit rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    /// Collapses duplicate pairs; rejects loops and out-of-range endpoints.
    static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
    static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges);

    int order() const { return n_; }
    VertexSet vertices() const { return prefix_set(n_); }
    VertexSet neighbors(int v) const { return rows_[v]; }
    int degree(int v) const { return set_size(rows_[v]); }
    bool has_edge(int u, int v) const { return (rows_[u] >> v) & 1U; }
    int edge_count() const;
    std::vector<Edge> edges() const;

    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    /// Copy with an extra vertex n adjacent to exactly `neighbors`.
    Graph with_vertex(VertexSet neighbors) const;

    std::span<const VertexSet> rows() const { return {rows_.data(), static_cast<std::size_t>(n_)}; }

    bool operator==(const Graph& other) const;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::array<VertexSet, kMaxVertices> rows_{};
};

Graph complement(const Graph& g);

/// Vertices of `keep` are relabelled 0.. in increasing order of original index.
Graph induced_subgraph(const Graph& g, VertexSet keep);
Graph delete_vertex(const Graph& g, int v);

/// Relabels so that vertex v of g becomes perm[v].
Graph relabel(const Graph& g, std::span<const int> perm);

std::vector<Triangle> triangles(const Graph& g);
std::size_t triangle_count(const Graph& g);
bool is_triangle_free(const Graph& g);

struct Bipartition {
    VertexSet u = 0;
    VertexSet w = 0;
};

/// Breadth-first 2-colouring, components seeded from their smallest vertex into U.
std::optional<Bipartition> bipartition(const Graph& g);
bool is_bipartite(const Graph& g);
bool is_co_bipartite(const Graph& g);

/// Vertices of an odd cycle in traversal order, or empty when g is bipartite.
std::vector<int> odd_cycle(const Graph& g);

/// Visits every independent set (including the empty set) in increasing order of
/// its bit pattern. The visitor returns false to stop early.
void for_each_independent_set(const Graph& g, const std::function<bool(VertexSet)>& visit);
std::size_t independent_set_count(const Graph& g);
bool is_independent(const Graph& g, VertexSet s);
bool is_clique(const Graph& g, VertexSet s);

/// Pairs consecutive vertices of inside \ exclude in index order.
std::vector<Edge> greedy_clique_matching(const Graph& g, VertexSet inside, VertexSet exclude = 0);

inline constexpr int kMaxExactEditOrder = 28;

/// Minimum number of edge deletions that make g bipartite (exhaustive, n <= 28).
int bipartite_edit_distance(const Graph& g);

namespace graphs {

Graph empty(int n);
Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph complete_bipartite(int a, int b);
Graph petersen();
/// Disjoint union with h's vertices placed after g's.
Graph disjoint_union(const Graph& g, const Graph& h);
/// Each vertex i of base becomes an independent class of sizes[i] vertices.
Graph blowup(const Graph& base, std::span<const int> sizes);
/// K_n with the matching {0,1},{2,3},...,{2k-2,2k-1} removed.
Graph complete_minus_matching(int n, int k);

} // namespace graphs

} // namespace ctfpack

template <>
struct std::hash<ctfpack::Graph> {
    std::size_t operator()(const ctfpack::Graph& g) const noexcept;
};
