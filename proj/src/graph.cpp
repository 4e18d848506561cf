#include "ctfpack/graph.hpp"

#include <algorithm>
#include <deque>

namespace ctfpack {

std::vector<int> members(VertexSet s)
{
    std::vector<int> out;
    out.reserve(set_size(s));
    for (; s != 0; s &= s - 1)
        out.push_back(lowest(s));
    return out;
}

VertexSet make_set(std::span<const int> vertices)
{
    VertexSet s = 0;
    for (int v : vertices) {
        if (v < 0 || v >= kMaxVertices)
            throw GraphError("vertex " + std::to_string(v) + " out of range");
        s |= bit(v);
    }
    return s;
}

Triangle make_triangle(int x, int y, int z)
{
    std::array<int, 3> t{x, y, z};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2])
        throw GraphError("triangle with repeated vertex");
    return {t[0], t[1], t[2]};
}

Graph::Graph(int n) : n_(n)
{
    if (n < 0 || n > kMaxVertices)
        throw GraphError("vertex count " + std::to_string(n) + " outside [0, 62]");
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges)
{
    Graph g(n);
    for (auto [u, v] : edges)
        g.add_edge(u, v);
    return g;
}

Graph Graph::from_edges(int n, std::initializer_list<std::pair<int, int>> edges)
{
    return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
}

void Graph::check_vertex(int v) const
{
    if (v < 0 || v >= n_)
        throw GraphError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
}

void Graph::add_edge(int u, int v)
{
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw GraphError("loop at vertex " + std::to_string(u));
    rows_[u] |= bit(v);
    rows_[v] |= bit(u);
}

void Graph::remove_edge(int u, int v)
{
    check_vertex(u);
    check_vertex(v);
    rows_[u] &= ~bit(v);
    rows_[v] &= ~bit(u);
}

int Graph::edge_count() const
{
    int twice = 0;
    for (int v = 0; v < n_; ++v)
        twice += set_size(rows_[v]);
    return twice / 2;
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u)
        for (VertexSet s = rows_[u] & ~prefix_set(u + 1); s != 0; s &= s - 1)
            out.push_back({u, lowest(s)});
    return out;
}

Graph Graph::with_vertex(VertexSet neighbors) const
{
    if (n_ >= kMaxVertices)
        throw GraphError("cannot extend a graph on 62 vertices");
    if ((neighbors & ~vertices()) != 0)
        throw GraphError("extension neighbourhood outside the vertex set");
    Graph g = *this;
    g.n_ = n_ + 1;
    g.rows_[n_] = neighbors;
    for (VertexSet s = neighbors; s != 0; s &= s - 1)
        g.rows_[lowest(s)] |= bit(n_);
    return g;
}

bool Graph::operator==(const Graph& other) const
{
    return n_ == other.n_ && std::equal(rows_.begin(), rows_.begin() + n_, other.rows_.begin());
}

Graph complement(const Graph& g)
{
    Graph h(g.order());
    const VertexSet all = g.vertices();
    for (int v = 0; v < g.order(); ++v)
        for (VertexSet s = all & ~g.neighbors(v) & ~bit(v) & ~prefix_set(v); s != 0; s &= s - 1)
            h.add_edge(v, lowest(s));
    return h;
}

Graph induced_subgraph(const Graph& g, VertexSet keep)
{
    keep &= g.vertices();
    const auto kept = members(keep);
    std::array<int, kMaxVertices> index{};
    for (std::size_t i = 0; i < kept.size(); ++i)
        index[kept[i]] = static_cast<int>(i);
    Graph h(static_cast<int>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (VertexSet s = g.neighbors(kept[i]) & keep & ~prefix_set(kept[i] + 1); s != 0; s &= s - 1)
            h.add_edge(static_cast<int>(i), index[lowest(s)]);
    return h;
}

Graph delete_vertex(const Graph& g, int v)
{
    return induced_subgraph(g, g.vertices() & ~bit(v));
}

Graph relabel(const Graph& g, std::span<const int> perm)
{
    if (static_cast<int>(perm.size()) != g.order())
        throw GraphError("permutation size does not match vertex count");
    VertexSet image = 0;
    for (int p : perm) {
        if (p < 0 || p >= g.order())
            throw GraphError("permutation entry out of range");
        image |= bit(p);
    }
    if (image != g.vertices())
        throw GraphError("not a permutation");
    Graph h(g.order());
    for (const Edge& e : g.edges())
        h.add_edge(perm[e.u], perm[e.v]);
    return h;
}

std::vector<Triangle> triangles(const Graph& g)
{
    std::vector<Triangle> out;
    for (int a = 0; a < g.order(); ++a) {
        const VertexSet later_a = g.neighbors(a) & ~prefix_set(a + 1);
        for (VertexSet s = later_a; s != 0; s &= s - 1) {
            const int b = lowest(s);
            for (VertexSet t = later_a & g.neighbors(b) & ~prefix_set(b + 1); t != 0; t &= t - 1)
                out.push_back({a, b, lowest(t)});
        }
    }
    return out;
}

std::size_t triangle_count(const Graph& g)
{
    std::size_t count = 0;
    for (int a = 0; a < g.order(); ++a) {
        const VertexSet later_a = g.neighbors(a) & ~prefix_set(a + 1);
        for (VertexSet s = later_a; s != 0; s &= s - 1) {
            const int b = lowest(s);
            count += set_size(later_a & g.neighbors(b) & ~prefix_set(b + 1));
        }
    }
    return count;
}

bool is_triangle_free(const Graph& g)
{
    for (int a = 0; a < g.order(); ++a)
        for (VertexSet s = g.neighbors(a) & ~prefix_set(a + 1); s != 0; s &= s - 1)
            if ((g.neighbors(a) & g.neighbors(lowest(s))) != 0)
                return false;
    return true;
}

namespace {

    struct Layering {
        std::array<int, kMaxVertices> side{};
        std::array<int, kMaxVertices> parent{};
        std::array<int, kMaxVertices> depth{};
        std::optional<Edge> conflict;
    };

    Layering layer(const Graph& g)
    {
        Layering out;
        out.side.fill(-1);
        for (int root = 0; root < g.order(); ++root) {
            if (out.side[root] != -1)
                continue;
            out.side[root] = 0;
            out.parent[root] = -1;
            out.depth[root] = 0;
            std::deque<int> queue{root};
            while (! queue.empty()) {
                const int v = queue.front();
                queue.pop_front();
                for (VertexSet s = g.neighbors(v); s != 0; s &= s - 1) {
                    const int w = lowest(s);
                    if (out.side[w] == -1) {
                        out.side[w] = 1 - out.side[v];
                        out.parent[w] = v;
                        out.depth[w] = out.depth[v] + 1;
                        queue.push_back(w);
                    }
                    else if (out.side[w] == out.side[v] && ! out.conflict)
                        out.conflict = make_edge(v, w);
                }
            }
        }
        return out;
    }

} // namespace

std::optional<Bipartition> bipartition(const Graph& g)
{
    const Layering l = layer(g);
    if (l.conflict)
        return std::nullopt;
    Bipartition p;
    for (int v = 0; v < g.order(); ++v)
        (l.side[v] == 0 ? p.u : p.w) |= bit(v);
    return p;
}

bool is_bipartite(const Graph& g) { return bipartition(g).has_value(); }

bool is_co_bipartite(const Graph& g) { return is_bipartite(complement(g)); }

std::vector<int> odd_cycle(const Graph& g)
{
    const Layering l = layer(g);
    if (! l.conflict)
        return {};
    // Both endpoints sit on the same BFS layer parity; walk up to the common ancestor.
    int a = l.conflict->u;
    int b = l.conflict->v;
    std::vector<int> left{a}, right{b};
    while (l.depth[a] > l.depth[b]) {
        a = l.parent[a];
        left.push_back(a);
    }
    while (l.depth[b] > l.depth[a]) {
        b = l.parent[b];
        right.push_back(b);
    }
    while (a != b) {
        a = l.parent[a];
        b = l.parent[b];
        left.push_back(a);
        right.push_back(b);
    }
    right.pop_back();
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

namespace {

    bool visit_independent(const Graph& g, int v, VertexSet chosen, VertexSet allowed,
        const std::function<bool(VertexSet)>& visit)
    {
        if (v < 0)
            return visit(chosen);
        if (! visit_independent(g, v - 1, chosen, allowed, visit))
            return false;
        if ((allowed >> v) & 1U)
            return visit_independent(g, v - 1, chosen | bit(v), allowed & ~g.neighbors(v), visit);
        return true;
    }

} // namespace

void for_each_independent_set(const Graph& g, const std::function<bool(VertexSet)>& visit)
{
    visit_independent(g, g.order() - 1, 0, g.vertices(), visit);
}

std::size_t independent_set_count(const Graph& g)
{
    std::size_t count = 0;
    for_each_independent_set(g, [&](VertexSet) {
        ++count;
        return true;
    });
    return count;
}

bool is_independent(const Graph& g, VertexSet s)
{
    for (VertexSet t = s; t != 0; t &= t - 1)
        if ((g.neighbors(lowest(t)) & s) != 0)
            return false;
    return true;
}

bool is_clique(const Graph& g, VertexSet s)
{
    for (VertexSet t = s; t != 0; t &= t - 1) {
        const int v = lowest(t);
        if ((s & ~bit(v) & ~g.neighbors(v)) != 0)
            return false;
    }
    return true;
}

std::vector<Edge> greedy_clique_matching(const Graph& g, VertexSet inside, VertexSet exclude)
{
    if ((inside & ~g.vertices()) != 0)
        throw GraphError("matching vertex set outside the graph");
    if (! is_clique(g, inside))
        throw GraphError("matching vertex set does not induce a clique");
    const auto vs = members(inside & ~exclude);
    std::vector<Edge> out;
    for (std::size_t i = 0; i + 1 < vs.size(); i += 2)
        out.push_back({vs[i], vs[i + 1]});
    return out;
}

int bipartite_edit_distance(const Graph& g)
{
    const int n = g.order();
    if (n > kMaxExactEditOrder)
        throw GraphError("exact bipartite edit distance supports n <= 28, got " + std::to_string(n));
    if (n <= 1)
        return 0;
    // Gray-code walk over the 2^(n-1) sides of vertices 1..n-1; vertex 0 stays in U.
    VertexSet w_side = 0;
    int cut = 0;
    int best = 0;
    const std::uint64_t steps = std::uint64_t{1} << (n - 1);
    for (std::uint64_t i = 1; i < steps; ++i) {
        const int v = 1 + std::countr_zero(i);
        const VertexSet same = (w_side >> v) & 1U ? w_side : g.vertices() & ~w_side;
        const int same_count = set_size(g.neighbors(v) & same & ~bit(v));
        cut += 2 * same_count - g.degree(v);
        w_side ^= bit(v);
        best = std::max(best, cut);
    }
    return g.edge_count() - best;
}

namespace graphs {

    Graph empty(int n) { return Graph(n); }

    Graph complete(int n)
    {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                g.add_edge(u, v);
        return g;
    }

    Graph cycle(int n)
    {
        if (n < 3)
            throw GraphError("cycle needs at least 3 vertices");
        Graph g(n);
        for (int v = 0; v < n; ++v)
            g.add_edge(v, (v + 1) % n);
        return g;
    }

    Graph path(int n)
    {
        Graph g(n);
        for (int v = 0; v + 1 < n; ++v)
            g.add_edge(v, v + 1);
        return g;
    }

    Graph complete_bipartite(int a, int b)
    {
        Graph g(a + b);
        for (int u = 0; u < a; ++u)
            for (int v = a; v < a + b; ++v)
                g.add_edge(u, v);
        return g;
    }

    Graph petersen()
    {
        Graph g(10);
        for (int i = 0; i < 5; ++i) {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        return g;
    }

    Graph disjoint_union(const Graph& g, const Graph& h)
    {
        Graph out(g.order() + h.order());
        for (const Edge& e : g.edges())
            out.add_edge(e.u, e.v);
        for (const Edge& e : h.edges())
            out.add_edge(g.order() + e.u, g.order() + e.v);
        return out;
    }

    Graph blowup(const Graph& base, std::span<const int> sizes)
    {
        if (static_cast<int>(sizes.size()) != base.order())
            throw GraphError("blowup needs one class size per vertex");
        std::vector<int> start(sizes.size() + 1, 0);
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (sizes[i] < 0)
                throw GraphError("negative class size");
            start[i + 1] = start[i] + sizes[i];
        }
        Graph g(start.back());
        for (const Edge& e : base.edges())
            for (int x = start[e.u]; x < start[e.u + 1]; ++x)
                for (int y = start[e.v]; y < start[e.v + 1]; ++y)
                    g.add_edge(x, y);
        return g;
    }

    Graph complete_minus_matching(int n, int k)
    {
        if (k < 0 || 2 * k > n)
            throw GraphError("matching of size " + std::to_string(k) + " does not fit in K_" + std::to_string(n));
        Graph g = complete(n);
        for (int i = 0; i < k; ++i)
            g.remove_edge(2 * i, 2 * i + 1);
        return g;
    }

} // namespace graphs

} // namespace ctfpack

std::size_t std::hash<ctfpack::Graph>::operator()(const ctfpack::Graph& g) const noexcept
{
    std::size_t h = static_cast<std::size_t>(g.order()) * 0x9e3779b97f4a7c15ULL;
    for (auto row : g.rows())
        h = (h ^ row) * 0x100000001b3ULL + (h >> 29);
    return h;
}
