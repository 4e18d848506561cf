#include "ctfpack/cli.hpp"

#include "ctfpack/canon.hpp"
#include "ctfpack/enumerate.hpp"
#include "ctfpack/graph6.hpp"
#include "ctfpack/lp.hpp"
#include "ctfpack/packing.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace ctfpack::cli {

namespace {

    /// Signals a failed check whose diagnostic has already been printed.
    struct VerificationFailure : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    struct GraphInput {
        std::string graph6;
        bool complement = false;

        void attach(CLI::App* cmd, bool with_complement)
        {
            cmd->add_option("--graph,-g", graph6, "graph6 string (otherwise graph6 lines on stdin)");
            if (with_complement)
                cmd->add_flag("--complement", complement, "operate on the complement");
        }

        std::vector<Graph> load(std::istream& in) const
        {
            std::vector<Graph> gs;
            if (! graph6.empty())
                gs.push_back(graph6_decode(graph6));
            else
                gs = read_graph6_stream(in);
            if (gs.empty())
                throw CLI::ValidationError("no input graph (use --graph or pipe graph6 lines)");
            if (complement)
                for (Graph& g : gs)
                    g = ctfpack::complement(g);
            return gs;
        }
    };

    std::string plain(const Rational& r)
    {
        return r.get_den() == 1 ? r.get_num().get_str() : to_fraction(r);
    }

    std::string yes_no(bool b) { return b ? "yes" : "no"; }

    std::string default_state_dir()
    {
        if (const char* env = std::getenv(kStateDirEnv); env != nullptr && *env != '\0')
            return env;
        return "ctfpack-state";
    }

    Graph random_graph(std::mt19937_64& rng, int n, double p)
    {
        std::bernoulli_distribution coin(p);
        Graph g(n);
        for (int v = 1; v < n; ++v)
            for (int u = 0; u < v; ++u)
                if (coin(rng))
                    g.add_edge(u, v);
        return g;
    }

    std::vector<int> random_permutation(std::mt19937_64& rng, int n)
    {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        return perm;
    }

    int selftest(std::ostream& out)
    {
        int failures = 0;
        auto check = [&](const std::string& name, const std::function<bool()>& body) {
            bool passed = false;
            std::string detail;
            try {
                passed = body();
            }
            catch (const std::exception& e) {
                detail = std::string(" (") + e.what() + ")";
            }
            out << (passed ? "ok   " : "FAIL ") << name << detail << '\n';
            failures += passed ? 0 : 1;
        };
        std::mt19937_64 rng(20240611);

        check("graph6 round trip", [&] {
            for (int i = 0; i < 200; ++i) {
                const Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 40), 0.4);
                if (graph6_decode(graph6_encode(g)) != g)
                    return false;
            }
            return graph6_encode(graphs::complete(3)) == "Bw" && graph6_decode("A?") == Graph(2);
        });
        check("canonical form invariant under relabelling", [&] {
            for (int i = 0; i < 100; ++i) {
                const Graph g = random_graph(rng, 4 + static_cast<int>(rng() % 14), 0.35);
                if (canonical_form(g) != canonical_form(relabel(g, random_permutation(rng, g.order()))))
                    return false;
            }
            return ! are_isomorphic(graphs::cycle(6), graphs::disjoint_union(graphs::cycle(3), graphs::cycle(3)));
        });
        check("nu* of small graphs", [] {
            return nu_star(graphs::complete(3)) == 3 && nu_star(graphs::complete(4)) == 6 &&
                nu_star(graphs::complete_minus_matching(4, 1)) == 3 && nu_star(graphs::cycle(5)) == 0;
        });
        check("weak duality and integer bound", [&] {
            for (int i = 0; i < 30; ++i) {
                const Graph g = random_graph(rng, 5 + static_cast<int>(rng() % 5), 0.6);
                const LpResult r = solve_packing_lp(g);
                if (! verify_certificate(g, r) || nu_integer(g) > r.nu_star)
                    return false;
            }
            return true;
        });
        check("mutated certificate rejected", [] {
            const Graph g = graphs::complete(5);
            LpResult r = solve_packing_lp(g);
            if (! verify_certificate(g, r))
                return false;
            auto it = r.primal.weights.begin();
            while (it != r.primal.weights.end() && sgn(it->second) == 0)
                ++it;
            it->second += Rational(1, 7);
            return ! verify_certificate(g, r);
        });
        check("complete minus matching decompositions (n <= 9)", [] {
            for (int n = 7; n <= 9; ++n)
                for (int k = 0; 2 * k <= n; ++k) {
                    const Graph g = graphs::complete_minus_matching(n, k);
                    const PackingReport r = verify_packing(g, decompose_complete_minus_matching(n, k));
                    if (! r.feasible || r.tight_edges != g.edge_count())
                        return false;
                }
            return true;
        });
        check("averaging over vertex-deleted subgraphs", [&] {
            for (int i = 0; i < 10; ++i) {
                const int n = 5 + static_cast<int>(rng() % 3);
                const Graph g = random_graph(rng, n, 0.7);
                Rational sum = 0;
                std::vector<Packing> parts;
                for (int v = 0; v < n; ++v) {
                    Graph sub = g;
                    for (int u = 0; u < n; ++u)
                        if (u != v && sub.has_edge(u, v))
                            sub.remove_edge(u, v);
                    const LpResult r = solve_packing_lp(sub);
                    if (! verify_certificate(sub, r))
                        return false;
                    Packing p = r.primal;
                    p.host = g;
                    parts.push_back(p);
                    sum += r.nu_star;
                }
                const Packing avg = average_packings(g, parts);
                const PackingReport rep = verify_packing(g, avg);
                if (! rep.feasible || rep.size * (n - 2) != sum || nu_star(g) < rep.size)
                    return false;
            }
            return true;
        });
        check("f(5) = 0", [] { return f_small(5) == 0; });
        check("level 6 matches oracle", [] {
            PipelineConfig cfg;
            cfg.bipartite_drop_n = 0;
            return init_level(6, cfg).survivors == brute_force_level(6, cfg).survivors;
        });
        out << (failures == 0 ? "selftest passed" : "selftest failed: " + std::to_string(failures) + " check(s)") << '\n';
        return failures == 0 ? ok : verification_failed;
    }

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fractional triangle packings of co-triangle-free graphs", args.empty() ? "ctfpack" : args[0]};
    app.require_subcommand(1);
    std::function<int()> action;

    // enumerate
    PipelineConfig cfg;
    std::string state_dir = default_state_dir();
    std::string json_path;
    bool no_presolve = false;
    auto* enumerate = app.add_subcommand("enumerate", "run the level-by-level search");
    enumerate->add_option("--start", cfg.start_n, "first level, built exhaustively (4..8)")->capture_default_str();
    enumerate->add_option("--max", cfg.max_n, "last level attempted (<= 30)")->capture_default_str();
    enumerate->add_option("--drop-bipartite-at", cfg.bipartite_drop_n, "level at which bipartite graphs are removed once; 0 disables")
        ->capture_default_str();
    enumerate->add_option("--state-dir", state_dir, std::string("level files and stats sidecars (default from ") + kStateDirEnv + ")")
        ->capture_default_str();
    enumerate->add_option("--workers", cfg.workers, "worker threads per level")->capture_default_str();
    enumerate->add_flag("--no-presolve", no_presolve, "decide every LP with the exact solver only");
    enumerate->add_option("--report-json", json_path, "also write the run report as JSON");
    enumerate->callback([&] {
        action = [&] {
            cfg.state_dir = state_dir;
            cfg.presolve = ! no_presolve;
            try {
                validate(cfg);
            }
            catch (const PipelineError& e) {
                throw CLI::ValidationError(e.what());
            }
            cfg.on_level = [&](const Level& l) {
                err << "level n=" << l.n << " candidates=" << l.stats.candidates << " duplicates=" << l.stats.duplicates
                    << " pruned_eta=" << l.stats.pruned_eta << " pruned_bipartite=" << l.stats.pruned_bipartite
                    << " survivors=" << l.stats.survivors << std::endl;
            };
            const RunReport report = run_pipeline(cfg);
            out << report.to_text();
            if (! json_path.empty()) {
                std::ofstream f(json_path);
                if (! (f << report.to_json() << '\n'))
                    throw std::filesystem::filesystem_error("cannot write report", json_path, std::error_code());
            }
            const LpCounters c = lp_counters();
            err << "lp solves=" << c.solves << " verified=" << c.verified << " threshold_presolve=" << c.threshold_presolve
                << " threshold_exact=" << c.threshold_exact << std::endl;
            if (report.terminal_n > 0)
                out << "empty level at n=" << report.terminal_n << '\n';
            else
                out << "no empty level up to n=" << cfg.max_n << '\n';
            return ok;
        };
    });

    // nu-star
    GraphInput nu_in;
    std::string certificate_path;
    auto* nu = app.add_subcommand("nu-star", "exact fractional triangle packing number");
    nu_in.attach(nu, true);
    nu->add_option("--certificate", certificate_path, "write the verified primal/dual certificate of the last graph");
    nu->callback([&] {
        action = [&] {
            for (const Graph& g : nu_in.load(in)) {
                const LpResult r = solve_packing_lp(g);
                if (auto check = verify_certificate(g, r); ! check)
                    throw CertificateError(check.diagnostic);
                out << to_fraction(r.nu_star) << '\n';
                if (! certificate_path.empty()) {
                    std::ofstream f(certificate_path);
                    write_certificate(f, g, r);
                    if (! f)
                        throw std::filesystem::filesystem_error("cannot write certificate", certificate_path, std::error_code());
                }
            }
            return ok;
        };
    });

    // eta
    GraphInput eta_in;
    auto* eta_cmd = app.add_subcommand("eta", "packing density nu*/(n(n-1))");
    eta_in.attach(eta_cmd, true);
    eta_cmd->callback([&] {
        action = [&] {
            for (const Graph& g : eta_in.load(in)) {
                const EtaReport r = eta(g);
                const int pairs = g.order() * (g.order() - 1);
                out << plain(r.nu_star) << '/' << pairs << " = " << plain(r.eta) << '\n';
            }
            return ok;
        };
    });

    // eta-general
    GraphInput general_in;
    auto* general = app.add_subcommand("eta-general", "(nu*(G) + nu*(complement G)) / (n(n-1))");
    general_in.attach(general, false);
    general->callback([&] {
        action = [&] {
            for (const Graph& g : general_in.load(in))
                out << to_fraction(eta_general(g)) << '\n';
            return ok;
        };
    });

    // check-decomposition
    std::vector<int> cmm;
    std::string packing_path;
    auto* decomp = app.add_subcommand("check-decomposition", "build and verify a fractional triangle decomposition");
    decomp->add_option("--complete-minus-matching", cmm, "n k: K_n minus a k-edge matching")->expected(2)->required();
    decomp->add_option("--output", packing_path, "write the decomposition in certificate format");
    decomp->callback([&] {
        action = [&] {
            const int n = cmm[0];
            const int k = cmm[1];
            const Packing p = decompose_complete_minus_matching(n, k);
            const Graph g = graphs::complete_minus_matching(n, k);
            const PackingReport r = verify_packing(g, p);
            out << "n=" << n << " k=" << k << " edges=" << g.edge_count() << " size=" << to_fraction(r.size)
                << " tight=" << r.tight_edges << '\n';
            if (! packing_path.empty()) {
                std::ofstream f(packing_path);
                write_packing(f, p);
                if (! f)
                    throw std::filesystem::filesystem_error("cannot write packing", packing_path, std::error_code());
            }
            if (! r.feasible || r.tight_edges != g.edge_count()) {
                for (const auto& v : r.violations)
                    err << "violation: " << v << '\n';
                throw VerificationFailure("not a fractional decomposition");
            }
            out << "decomposition verified\n";
            return ok;
        };
    });

    // critical-pack
    GraphInput critical_in;
    auto* critical = app.add_subcommand("critical-pack", "explicit packing of a critical co-triangle-free graph");
    critical_in.attach(critical, true);
    critical->callback([&] {
        action = [&] {
            for (const Graph& g : critical_in.load(in)) {
                const auto w = is_critical(g);
                if (! w)
                    throw CLI::ValidationError("graph " + graph6_encode(g) + " is not critical");
                const Packing p = critical_packing(g, *w);
                const PackingReport r = verify_packing(g, p);
                const int n = g.order();
                Rational bound(n * n - 17, 4);
                bound.canonicalize();
                const Rational nu = nu_star(g);
                out << "n=" << n << " apex=" << w->apex << " |U|=" << set_size(w->u) << " |W|=" << set_size(w->w)
                    << " size=" << to_fraction(r.size) << " bound=" << to_fraction(bound) << " nu_star=" << to_fraction(nu)
                    << " feasible=" << yes_no(r.feasible) << '\n';
                if (! r.feasible || r.size < bound || nu < r.size)
                    throw VerificationFailure("critical packing check failed");
            }
            return ok;
        };
    });

    // delta-bip
    GraphInput delta_in;
    auto* delta = app.add_subcommand("delta-bip", "minimum edge deletions to reach a bipartite graph");
    delta_in.attach(delta, true);
    delta->callback([&] {
        action = [&] {
            for (const Graph& g : delta_in.load(in))
                out << bipartite_edit_distance(g) << '\n';
            return ok;
        };
    });

    // f-small
    int f_n = 0;
    auto* fsmall = app.add_subcommand("f-small", "min over 2-colourings of K_n of the monochromatic packing size");
    fsmall->add_option("n", f_n, "order (<= 6)")->required()->check(CLI::Range(0, 6));
    fsmall->callback([&] {
        action = [&] {
            out << f_small(f_n) << '\n';
            return ok;
        };
    });

    // conjecture51
    GraphInput conj_in;
    auto* conj = app.add_subcommand("conjecture51", "bipartite edit distance of G or its complement against n/8");
    conj_in.attach(conj, false);
    conj->callback([&] {
        action = [&] {
            for (const Graph& g : conj_in.load(in)) {
                const Conjecture51Report r = conjecture51_hypothesis(g);
                out << "eta_general=" << to_fraction(r.eta_general) << " min_side_edit=" << r.min_side_edit
                    << " within_bound=" << yes_no(r.within_bound) << '\n';
            }
            return ok;
        };
    });

    // oracle-check
    int oracle_max = 9;
    int oracle_start = 6;
    int oracle_drop = 0;
    auto* oracle = app.add_subcommand("oracle-check", "compare pipeline levels with direct enumeration");
    oracle->add_option("--max-n", oracle_max, "largest level compared")->check(CLI::Range(4, 9))->capture_default_str();
    oracle->add_option("--start", oracle_start, "first level")->check(CLI::Range(4, 8))->capture_default_str();
    oracle->add_option("--drop-bipartite-at", oracle_drop, "0 disables")->capture_default_str();
    oracle->callback([&] {
        action = [&] {
            PipelineConfig c;
            c.start_n = oracle_start;
            c.max_n = oracle_max;
            c.bipartite_drop_n = oracle_drop;
            try {
                validate(c);
            }
            catch (const PipelineError& e) {
                throw CLI::ValidationError(e.what());
            }
            bool all = true;
            Level level = init_level(oracle_start, c);
            for (int n = oracle_start;; ++n) {
                if (n == c.bipartite_drop_n)
                    level = apply_bipartite_deletion(level, c);
                const Level expected = brute_force_level(n, c);
                const bool same = expected.survivors == level.survivors;
                all = all && same;
                out << "n=" << n << " pipeline=" << level.survivors.size() << " oracle=" << expected.survivors.size()
                    << (same ? " match" : " MISMATCH") << '\n';
                if (n == oracle_max)
                    break;
                level = extend_level(level, c);
            }
            if (! all)
                throw VerificationFailure("pipeline differs from the oracle");
            return ok;
        };
    });

    auto* self = app.add_subcommand("selftest", "run the built-in invariant checks");
    self->callback([&] { action = [&] { return selftest(out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (! reversed.empty())
        reversed.pop_back();
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    }
    catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    }
    catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (app.get_subcommands().empty())
            err << app.help();
        return usage;
    }

    try {
        return action();
    }
    catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << '\n';
        return verification_failed;
    }
    catch (const CertificateError& e) {
        err << "verification failed: " << e.what() << '\n';
        return verification_failed;
    }
    catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return io_error;
    }
    catch (const PipelineError& e) {
        err << "i/o error: " << e.what() << '\n';
        return io_error;
    }
    catch (const std::invalid_argument& e) {
        // GraphError, PackingError and malformed numbers.
        err << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const Graph6Error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
}

} // namespace ctfpack::cli
