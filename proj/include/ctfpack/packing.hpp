#pragma once

#include "ctfpack/graph.hpp"
#include "ctfpack/lp.hpp"
#include "ctfpack/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctfpack {

class PackingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Packing density eta = nu* / (n(n-1)).
struct EtaReport {
    Graph graph;
    Rational nu_star;
    Rational eta;
    bool co_triangle_free = false;
    bool co_bipartite = false;
};

EtaReport eta(const Graph& g, const LpOptions& options = {});

/// (nu*(g) + nu*(complement g)) / (n(n-1)); symmetric under complementation.
Rational eta_general(const Graph& g, const LpOptions& options = {});

struct PackingReport {
    bool feasible = true;
    Rational size;
    int tight_edges = 0;
    std::vector<std::string> violations;
};

/// Recomputes every edge load exactly.
PackingReport verify_packing(const Graph& g, const Packing& p);

/// Averages packings of the n vertex-deleted subgraphs: w = (1/(n-2)) * sum w_i.
/// Entry i must avoid vertex i and use g's labels.
Packing average_packings(const Graph& g, std::span<const Packing> subgraph_packings);

/// Fractional triangle decomposition of K_n minus the matching
/// {0,1},{2,3},...,{2k-2,2k-1}; n >= 7, built by averaging from LP-solved n = 7 bases.
Packing decompose_complete_minus_matching(int n, int k);

/// Apex v with G - v co-bipartite; (U, W) bipartition of the complement of G - v,
/// A = N(v) & U, X = U \ A, B = N(v) & W, Y = W \ B. Sets use g's labels.
struct CriticalWitness {
    int apex = 0;
    VertexSet u = 0;
    VertexSet w = 0;
    VertexSet a = 0;
    VertexSet b = 0;
    VertexSet x = 0;
    VertexSet y = 0;
};

/// Requires g co-triangle-free. Empty when g is co-bipartite or no single
/// deletion makes it co-bipartite; otherwise the witness for the smallest apex.
std::optional<CriticalWitness> is_critical(const Graph& g);

/// Matching-based integer triangles through the cross pairs and the apex, plus
/// fractional decompositions of the two residual cliques-minus-matchings.
/// Requires n >= 18 and min(|U|, |W|) >= 7.
Packing critical_packing(const Graph& g, const CriticalWitness& w);

inline constexpr int kMaxIntegerPackingOrder = 12;

/// Maximum size (in edges) of an edge-disjoint triangle packing, by branch and bound (n <= 12).
int nu_integer(const Graph& g);

/// Minimum over 2-colourings of K_n of the best monochromatic packing size (n <= 6).
int f_small(int n);

struct Conjecture51Report {
    Rational eta_general;
    int min_side_edit = 0;
    bool within_bound = false;
};

/// min(edit(g), edit(complement g)) against n/8, next to eta_general (n <= 28).
Conjecture51Report conjecture51_hypothesis(const Graph& g, const LpOptions& options = {});

/// The text certificate format with an empty dual section.
void write_packing(std::ostream& out, const Packing& p);

} // namespace ctfpack
