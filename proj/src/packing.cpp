#include "ctfpack/packing.hpp"

#include "ctfpack/graph6.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>

namespace ctfpack {

namespace {

    Rational order_pairs(int n)
    {
        return Rational(n) * (n - 1);
    }

    void require_density_order(const Graph& g)
    {
        if (g.order() < 2)
            throw PackingError("packing density needs n >= 2, got n=" + std::to_string(g.order()));
    }

    /// Maps triangles of a relabelled host back through `original[i]`.
    void add_mapped(TriangleWeights& into, const TriangleWeights& from, std::span<const int> original,
        const Rational& scale)
    {
        for (const auto& [t, w] : from)
            into[make_triangle(original[t.a], original[t.b], original[t.c])] += scale * w;
    }

} // namespace

EtaReport eta(const Graph& g, const LpOptions& options)
{
    require_density_order(g);
    EtaReport r;
    r.graph = g;
    r.nu_star = nu_star(g, options);
    r.eta = r.nu_star / order_pairs(g.order());
    const Graph h = complement(g);
    r.co_triangle_free = is_triangle_free(h);
    r.co_bipartite = is_bipartite(h);
    return r;
}

Rational eta_general(const Graph& g, const LpOptions& options)
{
    require_density_order(g);
    Rational r = (nu_star(g, options) + nu_star(complement(g), options)) / order_pairs(g.order());
    r.canonicalize();
    return r;
}

PackingReport verify_packing(const Graph& g, const Packing& p)
{
    PackingReport report;
    const int n = g.order();
    std::vector<Rational> load(static_cast<std::size_t>(n) * n);
    Rational total = 0;
    for (const auto& [t, w] : p.weights) {
        const std::string name = "{" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + "}";
        if (t.a < 0 || t.c >= n || ! (t.a < t.b && t.b < t.c)) {
            report.violations.push_back("triangle " + name + " is not a vertex triple of the host");
            continue;
        }
        bool present = true;
        for (const Edge& e : t.edges())
            present = present && g.has_edge(e.u, e.v);
        if (! present)
            report.violations.push_back("triangle " + name + " is not a triangle of the host");
        if (sgn(w) < 0 || w > 1)
            report.violations.push_back("weight " + to_fraction(w) + " on " + name + " outside [0,1]");
        total += w;
        for (const Edge& e : t.edges())
            load[static_cast<std::size_t>(e.u) * n + e.v] += w;
    }
    for (const Edge& e : g.edges()) {
        const Rational& l = load[static_cast<std::size_t>(e.u) * n + e.v];
        if (l > 1)
            report.violations.push_back("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} load " +
                to_fraction(l));
        else if (l == 1)
            ++report.tight_edges;
    }
    report.size = 3 * total;
    report.feasible = report.violations.empty();
    return report;
}

Packing average_packings(const Graph& g, std::span<const Packing> subgraph_packings)
{
    const int n = g.order();
    if (n < 3)
        throw PackingError("averaging needs n >= 3");
    if (static_cast<int>(subgraph_packings.size()) != n)
        throw PackingError("averaging needs one packing per vertex-deleted subgraph");
    Packing out;
    out.host = g;
    const Rational scale(1, n - 2);
    for (int i = 0; i < n; ++i) {
        const Packing& p = subgraph_packings[i];
        for (const auto& [t, w] : p.weights)
            if (t.contains(i))
                throw PackingError("packing " + std::to_string(i) + " uses the deleted vertex");
        const PackingReport check = verify_packing(g, p);
        if (! check.feasible)
            throw PackingError("packing " + std::to_string(i) + " is infeasible: " + check.violations.front());
        for (const auto& [t, w] : p.weights)
            if (sgn(w) != 0)
                out.weights[t] += scale * w;
    }
    return out;
}

namespace {

    Packing solve_base_decomposition(int k)
    {
        const Graph g = graphs::complete_minus_matching(7, k);
        const LpResult r = solve_packing_lp(g);
        if (auto check = verify_certificate(g, r); ! check)
            throw CertificateError("base decomposition certificate rejected: " + check.diagnostic);
        if (r.nu_star != g.edge_count())
            throw PackingError("K_7 minus a " + std::to_string(k) + "-matching has no fractional decomposition");
        return r.primal;
    }

    std::mutex decomposition_mutex;
    std::map<std::pair<int, int>, Packing> decomposition_cache;

    Packing decompose(int n, int k)
    {
        {
            std::lock_guard lock(decomposition_mutex);
            if (auto it = decomposition_cache.find({n, k}); it != decomposition_cache.end())
                return it->second;
        }
        Packing result;
        if (n == 7)
            result = solve_base_decomposition(k);
        else {
            // Vertex-deleted subgraphs are again complete minus a matching; relabel so
            // the surviving pairs come first, decompose, map back, then average.
            result.host = graphs::complete_minus_matching(n, k);
            const Rational scale(1, n - 2);
            for (int i = 0; i < n; ++i) {
                std::vector<int> original;
                for (int p = 0; p < k; ++p)
                    if (2 * p != i && 2 * p + 1 != i) {
                        original.push_back(2 * p);
                        original.push_back(2 * p + 1);
                    }
                const int remaining = static_cast<int>(original.size()) / 2;
                for (int v = 0; v < n; ++v)
                    if (v != i && (v >= 2 * k || (v ^ 1) == i))
                        original.push_back(v);
                const Packing sub = decompose(n - 1, remaining);
                add_mapped(result.weights, sub.weights, original, scale);
            }
        }
        result.host = graphs::complete_minus_matching(n, k);
        std::lock_guard lock(decomposition_mutex);
        decomposition_cache.emplace(std::pair{n, k}, result);
        return result;
    }

} // namespace

Packing decompose_complete_minus_matching(int n, int k)
{
    if (n < 7)
        throw PackingError("decomposition needs n >= 7, got n=" + std::to_string(n));
    if (n > kMaxVertices)
        throw PackingError("decomposition needs n <= 62");
    if (k < 0 || 2 * k > n)
        throw PackingError("matching size " + std::to_string(k) + " outside [0, " + std::to_string(n / 2) + "]");
    return decompose(n, k);
}

std::optional<CriticalWitness> is_critical(const Graph& g)
{
    const Graph co = complement(g);
    if (! is_triangle_free(co))
        throw PackingError("is_critical needs a co-triangle-free graph");
    if (is_bipartite(co))
        return std::nullopt;
    for (int v = 0; v < g.order(); ++v) {
        const auto split = bipartition(delete_vertex(co, v));
        if (! split)
            continue;
        // Undo the index shift of vertices above v.
        auto lift = [v](VertexSet s) {
            const VertexSet low = s & prefix_set(v);
            return low | ((s & ~prefix_set(v)) << 1);
        };
        CriticalWitness w;
        w.apex = v;
        w.u = lift(split->u);
        w.w = lift(split->w);
        w.a = g.neighbors(v) & w.u;
        w.x = w.u & ~w.a;
        w.b = g.neighbors(v) & w.w;
        w.y = w.w & ~w.b;
        return w;
    }
    return std::nullopt;
}

Packing critical_packing(const Graph& g, const CriticalWitness& w)
{
    const int n = g.order();
    const int v = w.apex;
    if (n < 18)
        throw PackingError("critical packing needs n >= 18, got n=" + std::to_string(n));
    if (v < 0 || v >= n)
        throw PackingError("apex out of range");
    if ((w.u & w.w) != 0 || (w.u | w.w) != (g.vertices() & ~bit(v)))
        throw PackingError("U and W do not partition V \\ {v}");
    if (! is_clique(g, w.u) || ! is_clique(g, w.w))
        throw PackingError("U or W is not a clique of G");
    if (set_size(w.u) < 7 || set_size(w.w) < 7)
        throw PackingError("min(|U|, |W|) = " + std::to_string(std::min(set_size(w.u), set_size(w.w))) + " < 7");
    if (w.a != (g.neighbors(v) & w.u) || w.x != (w.u & ~w.a))
        throw PackingError("A, X do not split U by adjacency to the apex");
    if (w.b != (g.neighbors(v) & w.w) || w.y != (w.w & ~w.b))
        throw PackingError("B, Y do not split W by adjacency to the apex");
    if (w.x == 0 || w.y == 0)
        throw PackingError("X and Y must be non-empty (G would be co-bipartite)");
    for (int x : members(w.x))
        if ((g.neighbors(x) & w.y) != w.y)
            throw PackingError("G[X,Y] is not complete bipartite at vertex " + std::to_string(x));

    Packing out;
    out.host = g;
    auto add_fan = [&](const std::vector<Edge>& matching, int apex) {
        for (const Edge& e : matching)
            out.weights[make_triangle(e.u, e.v, apex)] = 1;
    };

    std::vector<Edge> mx, my;
    const bool y_even = set_size(w.y) % 2 == 0;
    const bool x_even = set_size(w.x) % 2 == 0;
    if (y_even) {
        const int x = lowest(w.x);
        my = greedy_clique_matching(g, w.y);
        add_fan(my, x);
        const int y = lowest(w.y);
        mx = greedy_clique_matching(g, w.x, bit(x));
        add_fan(mx, y);
    }
    else if (x_even) {
        const int y = lowest(w.y);
        mx = greedy_clique_matching(g, w.x);
        add_fan(mx, y);
        const int x = lowest(w.x);
        my = greedy_clique_matching(g, w.y, bit(y));
        add_fan(my, x);
    }
    else {
        const int x = lowest(w.x);
        my = greedy_clique_matching(g, w.y);
        add_fan(my, x);
        VertexSet covered = 0;
        for (const Edge& e : my)
            covered |= bit(e.u) | bit(e.v);
        const int y = lowest(w.y & ~covered);
        mx = greedy_clique_matching(g, w.x, bit(x));
        add_fan(mx, y);
    }
    const auto ma = greedy_clique_matching(g, w.a);
    const auto mb = greedy_clique_matching(g, w.b);
    add_fan(ma, v);
    add_fan(mb, v);

    // Residual edges inside U and W form cliques minus the matchings used above.
    auto residual = [&](VertexSet side, const std::vector<Edge>& m1, const std::vector<Edge>& m2) {
        std::vector<int> original;
        VertexSet matched = 0;
        for (const auto* m : {&m1, &m2})
            for (const Edge& e : *m) {
                original.push_back(e.u);
                original.push_back(e.v);
                matched |= bit(e.u) | bit(e.v);
            }
        const int k = static_cast<int>(original.size()) / 2;
        for (int u : members(side & ~matched))
            original.push_back(u);
        const Packing d = decompose_complete_minus_matching(set_size(side), k);
        add_mapped(out.weights, d.weights, original, Rational(1));
    };
    residual(w.u, ma, mx);
    residual(w.w, mb, my);
    return out;
}

namespace {

    class IntegerPacker {
    public:
        explicit IntegerPacker(const Graph& g) : g_(g), tris_(triangles(g)), edges_(g.edges())
        {
            index_.assign(kMaxVertices * kMaxVertices, -1);
            for (std::size_t i = 0; i < edges_.size(); ++i) {
                index_[edges_[i].u * kMaxVertices + edges_[i].v] = static_cast<int>(i);
                index_[edges_[i].v * kMaxVertices + edges_[i].u] = static_cast<int>(i);
            }
            through_.resize(edges_.size());
            for (std::size_t t = 0; t < tris_.size(); ++t)
                for (const Edge& e : tris_[t].edges())
                    through_[edge_id(e)].push_back(static_cast<int>(t));
            blocked_.assign(edges_.size(), 0);
        }

        int solve()
        {
            search(0, 0);
            return best_;
        }

    private:
        int edge_id(const Edge& e) const { return index_[e.u * kMaxVertices + e.v]; }

        bool available(int t) const
        {
            for (const Edge& e : tris_[t].edges())
                if (blocked_[edge_id(e)])
                    return false;
            return true;
        }

        /// Each triangle consumes two free edges at each of its corners.
        int upper_bound() const
        {
            std::array<int, kMaxVertices> deg{};
            int free_edges = 0;
            for (std::size_t e = 0; e < edges_.size(); ++e)
                if (! blocked_[e]) {
                    ++free_edges;
                    ++deg[edges_[e].u];
                    ++deg[edges_[e].v];
                }
            int half_degrees = 0;
            for (int v = 0; v < g_.order(); ++v)
                half_degrees += deg[v] / 2;
            return std::min(free_edges / 3, half_degrees / 3);
        }

        void search(std::size_t from, int packed)
        {
            best_ = std::max(best_, packed);
            if (packed + upper_bound() <= best_)
                return;
            std::size_t e = from;
            int chosen_edge = -1;
            for (; e < edges_.size(); ++e) {
                if (blocked_[e])
                    continue;
                if (std::any_of(through_[e].begin(), through_[e].end(), [&](int t) { return available(t); })) {
                    chosen_edge = static_cast<int>(e);
                    break;
                }
            }
            if (chosen_edge < 0)
                return;
            for (int t : through_[chosen_edge]) {
                if (! available(t))
                    continue;
                for (const Edge& te : tris_[t].edges())
                    blocked_[edge_id(te)] = 1;
                search(e + 1, packed + 1);
                for (const Edge& te : tris_[t].edges())
                    blocked_[edge_id(te)] = 0;
            }
            // Leave the chosen edge uncovered.
            blocked_[chosen_edge] = 1;
            search(e + 1, packed);
            blocked_[chosen_edge] = 0;
        }

        const Graph& g_;
        std::vector<Triangle> tris_;
        std::vector<Edge> edges_;
        std::vector<int> index_;
        std::vector<std::vector<int>> through_;
        std::vector<char> blocked_;
        int best_ = 0;
    };

} // namespace

int nu_integer(const Graph& g)
{
    if (g.order() > kMaxIntegerPackingOrder)
        throw PackingError("exact integer packing supports n <= 12, got n=" + std::to_string(g.order()));
    return 3 * IntegerPacker(g).solve();
}

int f_small(int n)
{
    if (n < 0 || n > 6)
        throw PackingError("f_small supports 0 <= n <= 6, got n=" + std::to_string(n));
    std::vector<Edge> pairs;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            pairs.push_back({i, j});
    int best = std::numeric_limits<int>::max();
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Graph red(n);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if ((mask >> k) & 1U)
                red.add_edge(pairs[k].u, pairs[k].v);
        best = std::min(best, nu_integer(red) + nu_integer(complement(red)));
    }
    return best;
}

Conjecture51Report conjecture51_hypothesis(const Graph& g, const LpOptions& options)
{
    if (g.order() > kMaxExactEditOrder)
        throw PackingError("conjecture check supports n <= 28, got n=" + std::to_string(g.order()));
    Conjecture51Report r;
    r.eta_general = eta_general(g, options);
    r.min_side_edit = std::min(bipartite_edit_distance(g), bipartite_edit_distance(complement(g)));
    r.within_bound = 8 * r.min_side_edit <= g.order();
    return r;
}

void write_packing(std::ostream& out, const Packing& p)
{
    out << p.host.order() << '\n' << graph6_encode(p.host) << '\n' << to_fraction(p.size()) << '\n';
    for (const auto& [t, w] : p.weights)
        if (sgn(w) > 0)
            out << t.a << ' ' << t.b << ' ' << t.c << ' ' << to_fraction(w) << '\n';
}

} // namespace ctfpack
