#include "ctfpack/canon.hpp"

#include "ctfpack/graph6.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>

namespace ctfpack {

namespace {

    using Cells = std::vector<VertexSet>;
    using Perm = std::array<std::int8_t, kMaxVertices>;
    using Rows = std::array<VertexSet, kMaxVertices>;

    /// Splits cells until every cell has a uniform neighbour count into every
    /// other cell. Fragments are ordered by ascending count, so the result only
    /// depends on the structure of g and the input cell order.
    void refine(const Graph& g, Cells& cells, std::deque<VertexSet> queue)
    {
        std::array<std::pair<int, int>, kMaxVertices> scratch;
        while (! queue.empty()) {
            const VertexSet splitter = queue.front();
            queue.pop_front();
            for (std::size_t c = 0; c < cells.size(); ++c) {
                const VertexSet cell = cells[c];
                if ((cell & (cell - 1)) == 0)
                    continue;
                int k = 0;
                int lo = kMaxVertices, hi = -1;
                for (VertexSet s = cell; s != 0; s &= s - 1) {
                    const int v = lowest(s);
                    const int count = set_size(g.neighbors(v) & splitter);
                    scratch[k++] = {count, v};
                    lo = std::min(lo, count);
                    hi = std::max(hi, count);
                }
                if (lo == hi)
                    continue;
                std::sort(scratch.begin(), scratch.begin() + k);
                Cells fragments;
                for (int i = 0; i < k; ++i) {
                    if (i == 0 || scratch[i].first != scratch[i - 1].first)
                        fragments.push_back(0);
                    fragments.back() |= bit(scratch[i].second);
                }
                cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
                cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c), fragments.begin(), fragments.end());
                for (VertexSet f : fragments)
                    queue.push_back(f);
                c += fragments.size() - 1;
            }
        }
    }

    struct UnionFind {
        std::array<int, kMaxVertices> parent;

        explicit UnionFind(int n) { std::iota(parent.begin(), parent.begin() + n, 0); }

        int find(int v)
        {
            while (parent[v] != v)
                v = parent[v] = parent[parent[v]];
            return v;
        }

        void unite(int a, int b)
        {
            a = find(a);
            b = find(b);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    };

    class Search {
    public:
        explicit Search(const Graph& g) : g_(g), n_(g.order()) { add_twin_generators(); }

        void run()
        {
            Cells cells;
            if (n_ > 0)
                cells.push_back(g_.vertices());
            // Degree classes are the first refinement step; sorting by degree is invariant.
            refine(g_, cells, std::deque<VertexSet>(cells.begin(), cells.end()));
            descend(cells);
        }

        std::vector<int> position() const
        {
            std::vector<int> pos(n_);
            for (int i = 0; i < n_; ++i)
                pos[best_lab_[i]] = i;
            return pos;
        }

        Graph canonical_graph() const
        {
            Graph h(n_);
            for (int i = 0; i < n_; ++i)
                for (VertexSet s = best_rows_[i] & ~prefix_set(i + 1); s != 0; s &= s - 1)
                    h.add_edge(i, lowest(s));
            return h;
        }

    private:
        void add_twin_generators()
        {
            // Vertices with equal neighbourhoods outside the pair are swapped by an automorphism.
            std::vector<bool> placed(n_, false);
            for (int u = 0; u < n_; ++u) {
                if (placed[u])
                    continue;
                for (int v = u + 1; v < n_; ++v) {
                    if (placed[v])
                        continue;
                    const VertexSet mask = ~(bit(u) | bit(v));
                    if (((g_.neighbors(u) ^ g_.neighbors(v)) & mask) != 0)
                        continue;
                    Perm p = identity();
                    p[u] = static_cast<std::int8_t>(v);
                    p[v] = static_cast<std::int8_t>(u);
                    generators_.push_back(p);
                    placed[v] = true;
                }
            }
        }

        Perm identity() const
        {
            Perm p{};
            for (int v = 0; v < n_; ++v)
                p[v] = static_cast<std::int8_t>(v);
            return p;
        }

        bool fixes_prefix(const Perm& p) const
        {
            return std::all_of(prefix_.begin(), prefix_.end(), [&](int v) { return p[v] == v; });
        }

        void descend(Cells& cells)
        {
            auto target = std::find_if(cells.begin(), cells.end(), [](VertexSet c) { return (c & (c - 1)) != 0; });
            if (target == cells.end()) {
                leaf(cells);
                return;
            }
            const auto index = static_cast<std::size_t>(target - cells.begin());
            const VertexSet cell = *target;
            VertexSet explored = 0;
            for (VertexSet s = cell; s != 0; s &= s - 1) {
                const int v = lowest(s);
                if (explored != 0 && equivalent_to_explored(v, explored))
                    continue;
                explored |= bit(v);

                Cells child = cells;
                child[index] = bit(v);
                child.insert(child.begin() + static_cast<std::ptrdiff_t>(index) + 1, cell & ~bit(v));
                refine(g_, child, std::deque<VertexSet>{bit(v)});
                prefix_.push_back(v);
                descend(child);
                prefix_.pop_back();
            }
        }

        bool equivalent_to_explored(int v, VertexSet explored)
        {
            UnionFind orbits(n_);
            for (const Perm& p : generators_)
                if (fixes_prefix(p))
                    for (int x = 0; x < n_; ++x)
                        orbits.unite(x, p[x]);
            const int root = orbits.find(v);
            for (VertexSet s = explored; s != 0; s &= s - 1)
                if (orbits.find(lowest(s)) == root)
                    return true;
            return false;
        }

        void leaf(const Cells& cells)
        {
            std::array<int, kMaxVertices> lab{};
            std::array<int, kMaxVertices> pos{};
            for (int i = 0; i < n_; ++i) {
                lab[i] = lowest(cells[i]);
                pos[lab[i]] = i;
            }
            Rows rows{};
            for (int i = 0; i < n_; ++i)
                for (VertexSet s = g_.neighbors(lab[i]); s != 0; s &= s - 1)
                    rows[i] |= bit(pos[lowest(s)]);

            if (! have_best_) {
                accept(rows, lab);
                return;
            }
            const int cmp = compare(rows, best_rows_);
            if (cmp < 0)
                accept(rows, lab);
            else if (cmp == 0) {
                // Equal leaves differ by an automorphism: cur vertex -> best vertex at the same position.
                Perm p{};
                bool trivial = true;
                for (int v = 0; v < n_; ++v) {
                    p[v] = static_cast<std::int8_t>(best_lab_[pos[v]]);
                    trivial = trivial && p[v] == v;
                }
                if (! trivial)
                    generators_.push_back(p);
            }
        }

        int compare(const Rows& a, const Rows& b) const
        {
            for (int i = 0; i < n_; ++i)
                if (a[i] != b[i])
                    return a[i] < b[i] ? -1 : 1;
            return 0;
        }

        void accept(const Rows& rows, const std::array<int, kMaxVertices>& lab)
        {
            best_rows_ = rows;
            best_lab_ = lab;
            have_best_ = true;
        }

        const Graph& g_;
        int n_;
        std::vector<Perm> generators_;
        std::vector<int> prefix_;
        bool have_best_ = false;
        Rows best_rows_{};
        std::array<int, kMaxVertices> best_lab_{};
    };

} // namespace

CanonicalLabeling canonical_labeling(const Graph& g)
{
    Search search(g);
    search.run();
    CanonicalLabeling out;
    out.position = search.position();
    out.graph = search.canonical_graph();
    out.form = graph6_encode(out.graph);
    return out;
}

CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

bool are_isomorphic(const Graph& g, const Graph& h)
{
    if (g.order() != h.order() || g.edge_count() != h.edge_count())
        return false;
    return canonical_form(g) == canonical_form(h);
}

std::vector<Graph> dedup(std::span<const Graph> graphs)
{
    if (graphs.empty())
        return {};
    std::map<CanonicalForm, Graph> unique;
    for (const Graph& g : graphs) {
        if (g.order() != graphs.front().order())
            throw GraphError("dedup: mixed vertex counts");
        unique.try_emplace(canonical_form(g), g);
    }
    std::vector<Graph> out;
    out.reserve(unique.size());
    for (auto& [form, g] : unique)
        out.push_back(std::move(g));
    return out;
}

} // namespace ctfpack
