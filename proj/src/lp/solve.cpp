#include "ctfpack/lp.hpp"

#include "ctfpack/graph6.hpp"
#include "lp/exact_simplex.hpp"
#include "lp/float_simplex.hpp"

#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ctfpack {

namespace {

    struct AtomicCounters {
        std::atomic<std::int64_t> solves{0};
        std::atomic<std::int64_t> verified{0};
        std::atomic<std::int64_t> rejected{0};
        std::atomic<std::int64_t> threshold_presolve{0};
        std::atomic<std::int64_t> threshold_exact{0};
    };

    AtomicCounters& counters()
    {
        static AtomicCounters c;
        return c;
    }

    std::string describe(const Triangle& t)
    {
        return "{" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + "}";
    }

    std::string describe(const Edge& e) { return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}"; }

    /// Best rational approximation with denominator <= max_den (continued fractions).
    Rational approximate(double value, long max_den)
    {
        if (! std::isfinite(value) || std::abs(value) < 1e-12)
            return 0;
        const bool negative = value < 0;
        double rest = std::abs(value);
        long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        for (int step = 0; step < 64; ++step) {
            const double whole = std::floor(rest);
            if (whole > 1e12)
                break;
            const long a = static_cast<long>(whole);
            const long h2 = a * h1 + h0;
            const long k2 = a * k1 + k0;
            if (k2 > max_den)
                break;
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            const double frac = rest - whole;
            if (frac < 1e-12)
                break;
            rest = 1.0 / frac;
        }
        Rational r(h1, k1 == 0 ? 1 : k1);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }

    LpResult trivial_result(const Graph& g)
    {
        LpResult r;
        r.primal.host = g;
        r.nu_star = 0;
        r.route = LpRoute::trivial;
        return r;
    }

    LpResult assemble(const Graph& g, const detail::PackingModel& model, const std::vector<Rational>& x,
        const std::vector<Rational>& y, LpRoute route)
    {
        LpResult r;
        r.primal.host = g;
        r.route = route;
        Rational total = 0;
        for (int j = 0; j < model.columns(); ++j)
            if (sgn(x[j]) > 0) {
                r.primal.weights.emplace(model.triangles[j], x[j]);
                total += x[j];
            }
        for (int i = 0; i < model.rows(); ++i)
            if (sgn(y[i]) != 0)
                r.dual.emplace(model.edges[i], y[i]);
        r.nu_star = 3 * total;
        return r;
    }

    CertificateCheck check_result(const Graph& g, const LpResult& r);

    std::optional<LpResult> reconstruct(const Graph& g, const detail::PackingModel& model,
        const detail::FloatSolution& hint)
    {
        std::vector<Rational> x(model.columns()), y(model.rows());
        for (int j = 0; j < model.columns(); ++j)
            x[j] = approximate(hint.x[j], 1'000'000);
        for (int i = 0; i < model.rows(); ++i)
            y[i] = approximate(hint.y[i], 1'000'000);
        LpResult r = assemble(g, model, x, y, LpRoute::reconstructed);
        if (! check_result(g, r))
            return std::nullopt;
        return r;
    }

    LpResult solve_exact(const Graph& g, const detail::PackingModel& model, const detail::FloatSolution* hint)
    {
        detail::ExactSimplex simplex(model);
        if (hint == nullptr || ! hint->optimal || ! simplex.load(hint->head))
            simplex.load_slacks();
        const detail::ExactSolution s = simplex.run();
        LpResult r = assemble(g, model, s.x, s.y, LpRoute::exact_simplex);
        r.exact_pivots = s.pivots;
        return r;
    }

    LpResult solve_model(const Graph& g, const detail::PackingModel& model, const LpOptions& options,
        const detail::FloatSolution* hint)
    {
        ++counters().solves;
        if (model.columns() == 0)
            return trivial_result(g);
        detail::FloatSolution local;
        if (options.presolve && hint == nullptr) {
            local = detail::solve_float(model);
            hint = &local;
        }
        if (options.presolve && hint->optimal)
            if (auto r = reconstruct(g, model, *hint))
                return *r;
        return solve_exact(g, model, options.presolve ? hint : nullptr);
    }

    /// Fixed-denominator rounding of the float primal, rescaled onto the feasible side.
    std::optional<ThresholdCertificate> round_packing(const detail::PackingModel& model,
        const detail::FloatSolution& hint, const Rational& bound)
    {
        constexpr std::int64_t kDen = std::int64_t{1} << 24;
        std::vector<std::int64_t> num(model.columns());
        std::vector<std::int64_t> load(model.rows(), 0);
        std::int64_t total = 0;
        for (int j = 0; j < model.columns(); ++j) {
            num[j] = static_cast<std::int64_t>(std::floor(std::max(0.0, hint.x[j]) * static_cast<double>(kDen)));
            total += num[j];
            for (int r : model.column_rows[j])
                load[r] += num[j];
        }
        std::int64_t den = kDen;
        for (auto l : load)
            den = std::max(den, l);
        // size = 3 * total / den must exceed bound.
        if (mpz_class(3 * total) * bound.get_den() <= mpz_class(den) * bound.get_num())
            return std::nullopt;
        ThresholdCertificate c;
        c.kind = ThresholdCertificate::Kind::exceeds;
        c.bound = bound;
        c.from_presolve = true;
        for (int j = 0; j < model.columns(); ++j)
            if (num[j] > 0) {
                Rational w(num[j], den);
                w.canonicalize();
                c.packing.emplace(model.triangles[j], w);
            }
        return c;
    }

    /// Fixed-denominator rounding of the float dual, rescaled until every triangle is covered.
    std::optional<ThresholdCertificate> round_cover(const detail::PackingModel& model,
        const detail::FloatSolution& hint, const Rational& bound)
    {
        constexpr std::int64_t kDen = std::int64_t{1} << 24;
        std::vector<std::int64_t> num(model.rows());
        std::int64_t total = 0;
        for (int i = 0; i < model.rows(); ++i) {
            num[i] = static_cast<std::int64_t>(std::ceil(std::max(0.0, hint.y[i]) * static_cast<double>(kDen)));
            total += num[i];
        }
        std::int64_t den = std::numeric_limits<std::int64_t>::max();
        for (const auto& rs : model.column_rows)
            den = std::min(den, num[rs[0]] + num[rs[1]] + num[rs[2]]);
        if (den <= 0)
            return std::nullopt;
        if (mpz_class(3 * total) * bound.get_den() > mpz_class(den) * bound.get_num())
            return std::nullopt;
        ThresholdCertificate c;
        c.kind = ThresholdCertificate::Kind::at_most;
        c.bound = bound;
        c.from_presolve = true;
        for (int i = 0; i < model.rows(); ++i)
            if (num[i] > 0) {
                Rational w(num[i], den);
                w.canonicalize();
                c.cover.emplace(model.edges[i], w);
            }
        return c;
    }

    Rational checked_sum(const TriangleWeights& w)
    {
        Rational s = 0;
        for (const auto& [t, v] : w)
            s += v;
        return s;
    }

    CertificateCheck fail(std::string message) { return {false, std::move(message)}; }

    CertificateCheck check_packing(const Graph& g, const TriangleWeights& weights)
    {
        const int n = g.order();
        std::vector<Rational> load(static_cast<std::size_t>(n) * n);
        for (const auto& [t, w] : weights) {
            if (t.a < 0 || t.c >= n || ! (t.a < t.b && t.b < t.c))
                return fail("primal: malformed triangle " + describe(t));
            for (const Edge& e : t.edges())
                if (! g.has_edge(e.u, e.v))
                    return fail("primal: triangle " + describe(t) + " uses non-edge " + describe(e));
            if (sgn(w) < 0 || w > 1)
                return fail("primal: weight " + to_fraction(w) + " on " + describe(t) + " outside [0,1]");
            for (const Edge& e : t.edges())
                load[static_cast<std::size_t>(e.u) * n + e.v] += w;
        }
        for (const Edge& e : g.edges()) {
            const Rational& l = load[static_cast<std::size_t>(e.u) * n + e.v];
            if (l > 1)
                return fail("primal: edge " + describe(e) + " overloaded with " + to_fraction(l));
        }
        return {};
    }

    CertificateCheck check_cover(const Graph& g, const EdgeWeights& cover)
    {
        const int n = g.order();
        std::vector<Rational> y(static_cast<std::size_t>(n) * n);
        for (const auto& [e, w] : cover) {
            if (e.u < 0 || e.v >= n || e.u >= e.v || ! g.has_edge(e.u, e.v))
                return fail("dual: weight on non-edge " + describe(e));
            if (sgn(w) < 0)
                return fail("dual: negative weight on " + describe(e));
            y[static_cast<std::size_t>(e.u) * n + e.v] = w;
        }
        Rational cover_sum;
        for (const Triangle& t : triangles(g)) {
            cover_sum = 0;
            for (const Edge& e : t.edges())
                cover_sum += y[static_cast<std::size_t>(e.u) * n + e.v];
            if (cover_sum < 1)
                return fail("dual: triangle " + describe(t) + " covered only " + to_fraction(cover_sum) + " < 1");
        }
        return {};
    }

    Rational cover_value(const EdgeWeights& cover)
    {
        Rational s = 0;
        for (const auto& [e, w] : cover)
            s += w;
        return 3 * s;
    }

} // namespace

Rational Packing::size() const { return 3 * checked_sum(weights); }

LpResult solve_packing_lp(const Graph& g, const LpOptions& options)
{
    const detail::PackingModel model(g);
    return solve_model(g, model, options, nullptr);
}

namespace {

    CertificateCheck check_result(const Graph& g, const LpResult& r)
    {
        if (r.status != LpStatus::optimal)
            return fail("status is not optimal");
        if (auto c = check_packing(g, r.primal.weights); ! c)
            return c;
        if (auto c = check_cover(g, r.dual); ! c)
            return c;
        const Rational primal = r.primal.size();
        const Rational dual = cover_value(r.dual);
        if (primal != r.nu_star)
            return fail("primal size " + to_fraction(primal) + " differs from nu_star " + to_fraction(r.nu_star));
        if (dual != r.nu_star)
            return fail("dual value " + to_fraction(dual) + " differs from nu_star " + to_fraction(r.nu_star));
        return {};
    }

} // namespace

CertificateCheck verify_certificate(const Graph& g, const LpResult& r)
{
    CertificateCheck c = check_result(g, r);
    ++(c ? counters().verified : counters().rejected);
    return c;
}

Rational nu_star(const Graph& g, const LpOptions& options)
{
    const LpResult r = solve_packing_lp(g, options);
    if (auto check = verify_certificate(g, r); ! check)
        throw CertificateError("LP certificate rejected for " + graph6_encode(g) + ": " + check.diagnostic);
    return r.nu_star;
}

bool has_fractional_decomposition(const Graph& g, const LpOptions& options)
{
    return nu_star(g, options) == g.edge_count();
}

ThresholdCertificate decide_nu_star_at_most(const Graph& g, const Rational& bound, const LpOptions& options)
{
    const detail::PackingModel model(g);
    ThresholdCertificate c;
    c.bound = bound;
    if (model.columns() == 0) {
        c.kind = sgn(bound) >= 0 ? ThresholdCertificate::Kind::at_most : ThresholdCertificate::Kind::exceeds;
        c.from_presolve = true;
    }
    else {
        std::optional<detail::FloatSolution> hint;
        if (options.presolve) {
            hint = detail::solve_float(model);
            if (hint->optimal) {
                std::optional<ThresholdCertificate> rounded;
                if (3.0 * hint->objective > bound.get_d())
                    rounded = round_packing(model, *hint, bound);
                else
                    rounded = round_cover(model, *hint, bound);
                if (rounded && verify_threshold_certificate(g, *rounded)) {
                    ++counters().threshold_presolve;
                    return *rounded;
                }
            }
        }
        const LpResult exact = solve_model(g, model, options, hint ? &*hint : nullptr);
        if (auto check = verify_certificate(g, exact); ! check)
            throw CertificateError("LP certificate rejected for " + graph6_encode(g) + ": " + check.diagnostic);
        if (exact.nu_star <= bound) {
            c.kind = ThresholdCertificate::Kind::at_most;
            c.cover = exact.dual;
        }
        else {
            c.kind = ThresholdCertificate::Kind::exceeds;
            c.packing = exact.primal.weights;
        }
        ++counters().threshold_exact;
    }
    if (auto check = verify_threshold_certificate(g, c); ! check)
        throw CertificateError("threshold certificate rejected for " + graph6_encode(g) + ": " + check.diagnostic);
    return c;
}

CertificateCheck verify_threshold_certificate(const Graph& g, const ThresholdCertificate& c)
{
    if (c.kind == ThresholdCertificate::Kind::exceeds) {
        if (! c.cover.empty())
            return fail("exceeds certificate carries a cover");
        if (auto check = check_packing(g, c.packing); ! check)
            return check;
        const Rational size = 3 * checked_sum(c.packing);
        if (size <= c.bound)
            return fail("packing size " + to_fraction(size) + " does not exceed " + to_fraction(c.bound));
        return {};
    }
    if (! c.packing.empty())
        return fail("at-most certificate carries a packing");
    if (auto check = check_cover(g, c.cover); ! check)
        return check;
    const Rational value = cover_value(c.cover);
    if (value > c.bound)
        return fail("cover value " + to_fraction(value) + " exceeds " + to_fraction(c.bound));
    return {};
}

void write_certificate(std::ostream& out, const Graph& g, const LpResult& r)
{
    out << g.order() << '\n' << graph6_encode(g) << '\n' << to_fraction(r.nu_star) << '\n';
    for (const auto& [t, w] : r.primal.weights)
        if (sgn(w) > 0)
            out << t.a << ' ' << t.b << ' ' << t.c << ' ' << to_fraction(w) << '\n';
    for (const auto& [e, w] : r.dual)
        if (sgn(w) > 0)
            out << e.u << ' ' << e.v << ' ' << to_fraction(w) << '\n';
}

ParsedCertificate read_certificate(std::istream& in)
{
    auto bad = [](const std::string& why) { return std::invalid_argument("certificate: " + why); };
    std::string line;
    if (! std::getline(in, line))
        throw bad("missing vertex count");
    const int n = std::stoi(line);
    if (! std::getline(in, line))
        throw bad("missing graph6 line");
    ParsedCertificate out;
    out.graph = graph6_decode(line);
    if (out.graph.order() != n)
        throw bad("vertex count does not match graph6 header");
    if (! std::getline(in, line))
        throw bad("missing nu_star");
    out.result.nu_star = parse_rational(line);
    out.result.primal.host = out.graph;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream fields(line);
        std::vector<std::string> parts;
        for (std::string f; fields >> f;)
            parts.push_back(f);
        if (parts.size() == 4)
            out.result.primal.weights[make_triangle(std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2]))] =
                parse_rational(parts[3]);
        else if (parts.size() == 3)
            out.result.dual[make_edge(std::stoi(parts[0]), std::stoi(parts[1]))] = parse_rational(parts[2]);
        else
            throw bad("unrecognised line '" + line + "'");
    }
    return out;
}

LpCounters lp_counters()
{
    return {counters().solves.load(), counters().verified.load(), counters().rejected.load(),
        counters().threshold_presolve.load(), counters().threshold_exact.load()};
}

} // namespace ctfpack
