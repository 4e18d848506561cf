#pragma once

#include "ctfpack/graph.hpp"
#include "ctfpack/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace ctfpack {

using TriangleWeights = std::map<Triangle, Rational>;
using EdgeWeights = std::map<Edge, Rational>;

/// Fractional triangle packing: weight per triangle, size counted in edges.
struct Packing {
    Graph host;
    TriangleWeights weights;

    /// 3 * total weight.
    Rational size() const;
};

enum class LpStatus { optimal, infeasible_model_error };

/// How the exact optimum was confirmed.
enum class LpRoute {
    trivial,        ///< no triangles
    reconstructed,  ///< rationalised floating-point primal/dual pair matched exactly
    exact_simplex,  ///< exact Bland simplex (possibly warm-started from the float basis)
};

struct LpResult {
    Rational nu_star;
    Packing primal;
    /// Fractional triangle cover: every triangle has total edge weight >= 1.
    EdgeWeights dual;
    LpStatus status = LpStatus::optimal;
    LpRoute route = LpRoute::trivial;
    std::int64_t exact_pivots = 0;
};

struct LpOptions {
    /// Solve in floating point first and confirm exactly; off means exact simplex from the slack basis.
    bool presolve = true;
};

class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CertificateCheck {
    bool ok = true;
    std::string diagnostic;

    explicit operator bool() const { return ok; }
};

LpResult solve_packing_lp(const Graph& g, const LpOptions& options = {});

/// Recomputes primal loads, dual coverage and both objectives from scratch.
CertificateCheck verify_certificate(const Graph& g, const LpResult& r);

/// Solves and verifies; throws CertificateError when verification fails.
Rational nu_star(const Graph& g, const LpOptions& options = {});

/// nu_star(g) == e(g).
bool has_fractional_decomposition(const Graph& g, const LpOptions& options = {});

/// One-sided certificate deciding nu_star(g) <= bound.
struct ThresholdCertificate {
    enum class Kind { exceeds, at_most };

    Kind kind = Kind::at_most;
    Rational bound;
    /// Feasible packing of size > bound when kind == exceeds.
    TriangleWeights packing;
    /// Triangle cover of value 3 * sum <= bound when kind == at_most.
    EdgeWeights cover;
    /// False when the exact solver had to decide.
    bool from_presolve = false;
};

/// Decides nu_star(g) <= bound with an exactly verified certificate. The
/// floating-point presolve is rounded into candidate certificates; when they
/// are inconclusive (for example nu_star == bound) the exact solver decides.
ThresholdCertificate decide_nu_star_at_most(const Graph& g, const Rational& bound, const LpOptions& options = {});

CertificateCheck verify_threshold_certificate(const Graph& g, const ThresholdCertificate& c);

/// Text format: n, graph6, nu_star as p/q, then "a b c p/q" per positive
/// primal weight and "a b p/q" per positive dual weight.
void write_certificate(std::ostream& out, const Graph& g, const LpResult& r);

struct ParsedCertificate {
    Graph graph;
    LpResult result;
};

ParsedCertificate read_certificate(std::istream& in);

/// Counters shared by every solve in the process, for reporting.
struct LpCounters {
    std::int64_t solves = 0;
    std::int64_t verified = 0;
    std::int64_t rejected = 0;
    std::int64_t threshold_presolve = 0;
    std::int64_t threshold_exact = 0;
};

LpCounters lp_counters();

} // namespace ctfpack
