#pragma once

#include "ctfpack/graph.hpp"

#include <span>
#include <string>
#include <vector>

namespace ctfpack {

/// graph6 bytes of the canonically relabelled graph.
using CanonicalForm = std::string;

struct CanonicalLabeling {
    /// position[v] is the canonical index of input vertex v.
    std::vector<int> position;
    Graph graph;
    CanonicalForm form;
};

/// Colour refinement plus individualisation search; the result is the
/// lexicographically smallest relabelled adjacency matrix among the leaves of
/// the search tree. Subtrees equivalent under automorphisms found so far
/// (including twin transpositions) are skipped.
CanonicalLabeling canonical_labeling(const Graph& g);
CanonicalForm canonical_form(const Graph& g);

bool are_isomorphic(const Graph& g, const Graph& h);

/// One representative per isomorphism class (first occurrence kept), sorted by
/// canonical form bytes. All inputs must share the same vertex count.
std::vector<Graph> dedup(std::span<const Graph> graphs);

} // namespace ctfpack
