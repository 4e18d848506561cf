#pragma once

#include "ctfpack/graph.hpp"

#include <array>
#include <vector>

namespace ctfpack::detail {

/// Packing LP in standard form: one row per edge, one column per triangle,
/// maximise sum x subject to A x + s = 1, x, s >= 0. Variable j < columns()
/// is triangle j; columns() + i is the slack of row i.
struct PackingModel {
    explicit PackingModel(const Graph& g);

    int rows() const { return static_cast<int>(edges.size()); }
    int columns() const { return static_cast<int>(triangles.size()); }
    int row_of(int u, int v) const { return row_index[u * kMaxVertices + v]; }

    std::vector<Edge> edges;
    std::vector<Triangle> triangles;
    std::vector<std::array<int, 3>> column_rows;
    std::vector<int> row_index;
};

inline PackingModel::PackingModel(const Graph& g) :
    edges(g.edges()), triangles(ctfpack::triangles(g)), row_index(kMaxVertices * kMaxVertices, -1)
{
    for (std::size_t i = 0; i < edges.size(); ++i) {
        row_index[edges[i].u * kMaxVertices + edges[i].v] = static_cast<int>(i);
        row_index[edges[i].v * kMaxVertices + edges[i].u] = static_cast<int>(i);
    }
    column_rows.reserve(triangles.size());
    for (const Triangle& t : triangles)
        column_rows.push_back({row_of(t.a, t.b), row_of(t.a, t.c), row_of(t.b, t.c)});
}

} // namespace ctfpack::detail
