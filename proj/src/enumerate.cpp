#include "ctfpack/enumerate.hpp"

#include "ctfpack/graph6.hpp"
#include "ctfpack/lp.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace ctfpack {

namespace {

    constexpr std::size_t kParentBatch = 512;

    /// Runs body(i) for i in [0, count) on `workers` threads; results must be
    /// written to per-index slots so the outcome does not depend on scheduling.
    void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body)
    {
        if (workers <= 1 || count <= 1) {
            for (std::size_t i = 0; i < count; ++i)
                body(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        const int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), count));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                try {
                    for (std::size_t i = next++; i < count; i = next++)
                        body(i);
                }
                catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (! failure)
                        failure = std::current_exception();
                    next = count;
                }
            });
        for (auto& th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    bool drop_applies(const PipelineConfig& cfg, int n) { return cfg.bipartite_drop_n > 0 && n > cfg.bipartite_drop_n; }

    /// Dedups, then bipartite filter (when n is past the drop level), then the density filter.
    Level filter_unique(int n, std::vector<CanonicalForm> unique, LevelStats stats, bool reject_bipartite,
        const PipelineConfig& cfg)
    {
        std::sort(unique.begin(), unique.end());
        std::vector<char> verdict(unique.size(), 0);
        std::atomic<std::int64_t> bipartite{0}, dense{0};
        parallel_for(unique.size(), cfg.workers, [&](std::size_t i) {
            const Graph h = graph6_decode(unique[i]);
            if (reject_bipartite && is_bipartite(h)) {
                ++bipartite;
                return;
            }
            if (! passes_eta_filter(h, cfg.presolve)) {
                ++dense;
                return;
            }
            verdict[i] = 1;
        });
        Level level;
        level.n = n;
        level.stats = stats;
        level.stats.pruned_bipartite += bipartite;
        level.stats.pruned_eta += dense;
        for (std::size_t i = 0; i < unique.size(); ++i)
            if (verdict[i])
                level.survivors.push_back(std::move(unique[i]));
        level.stats.survivors = static_cast<std::int64_t>(level.survivors.size());
        level.bipartite_free = reject_bipartite;
        return level;
    }

    std::string level_bytes(const Level& level)
    {
        std::string out;
        for (const auto& s : level.survivors) {
            out += s;
            out += '\n';
        }
        return out;
    }

    void write_atomically(const std::filesystem::path& path, const std::string& bytes)
    {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (! out)
                throw PipelineError("cannot write " + tmp.string());
            out << bytes;
            if (! out.flush())
                throw PipelineError("write failed for " + tmp.string());
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
            throw PipelineError("cannot rename " + tmp.string() + ": " + ec.message());
    }

    std::string read_file(const std::filesystem::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw PipelineError("cannot read " + path.string());
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    std::string hex(std::uint64_t v)
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
        return buf;
    }

    double seconds_since(std::chrono::steady_clock::time_point start)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

} // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed)
{
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<Graph> Level::graphs() const
{
    std::vector<Graph> out;
    out.reserve(survivors.size());
    for (const auto& s : survivors)
        out.push_back(graph6_decode(s));
    return out;
}

std::uint64_t Level::checksum() const { return fnv1a(level_bytes(*this)); }

void validate(const PipelineConfig& cfg)
{
    if (cfg.start_n < 4)
        throw PipelineError("start_n must be at least 4");
    if (cfg.start_n > 8)
        throw PipelineError("start_n above 8 is beyond exhaustive initialisation");
    if (cfg.max_n < cfg.start_n || cfg.max_n > 30)
        throw PipelineError("max_n must lie in [start_n, 30]");
    if (cfg.bipartite_drop_n != 0 && cfg.bipartite_drop_n <= cfg.start_n)
        throw PipelineError("bipartite_drop_n must exceed start_n (or be 0 to disable)");
    if (cfg.workers < 1)
        throw PipelineError("workers must be positive");
}

Rational eta_quarter_bound(int n)
{
    Rational b(n * (n - 1), 4);
    b.canonicalize();
    return b;
}

bool passes_eta_filter(const Graph& h, bool presolve)
{
    const auto cert = decide_nu_star_at_most(complement(h), eta_quarter_bound(h.order()), {.presolve = presolve});
    return cert.kind == ThresholdCertificate::Kind::at_most;
}

Level init_level(int n0, const PipelineConfig& cfg)
{
    if (n0 < 1 || n0 > 8)
        throw PipelineError("init_level supports 1 <= n <= 8, got " + std::to_string(n0));
    std::vector<Edge> pairs;
    for (int j = 1; j < n0; ++j)
        for (int i = 0; i < j; ++i)
            pairs.push_back({i, j});
    LevelStats stats;
    std::set<CanonicalForm> unique;
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Graph g(n0);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if ((mask >> k) & 1U)
                g.add_edge(pairs[k].u, pairs[k].v);
        if (! is_triangle_free(g))
            continue;
        ++stats.candidates;
        if (! unique.insert(canonical_form(g)).second)
            ++stats.duplicates;
    }
    const bool reject = cfg.bipartite_drop_n > 0 && n0 >= cfg.bipartite_drop_n;
    return filter_unique(n0, {unique.begin(), unique.end()}, stats, reject, cfg);
}

Level extend_level(const Level& parent, const PipelineConfig& cfg)
{
    const int n = parent.n + 1;
    if (n > kMaxVertices)
        throw PipelineError("cannot extend beyond 62 vertices");
    if (cfg.bipartite_drop_n > 0 && parent.n == cfg.bipartite_drop_n && ! parent.bipartite_free)
        throw PipelineError("level " + std::to_string(parent.n) + " must have its bipartite graphs removed before extension");

    const std::vector<Graph> parents = parent.graphs();
    for (const Graph& p : parents)
        if (p.order() != parent.n || ! is_triangle_free(p))
            throw PipelineError("parent level contains an invalid graph " + graph6_encode(p));

    LevelStats stats;
    std::unordered_set<CanonicalForm> seen;
    std::vector<CanonicalForm> unique;
    for (std::size_t begin = 0; begin < parents.size(); begin += kParentBatch) {
        const std::size_t end = std::min(parents.size(), begin + kParentBatch);
        std::vector<std::vector<CanonicalForm>> batch(end - begin);
        parallel_for(end - begin, cfg.workers, [&](std::size_t k) {
            const Graph& p = parents[begin + k];
            auto& out = batch[k];
            for_each_independent_set(p, [&](VertexSet s) {
                out.push_back(canonical_form(p.with_vertex(s)));
                return true;
            });
        });
        for (auto& forms : batch)
            for (auto& f : forms) {
                ++stats.candidates;
                if (seen.insert(f).second)
                    unique.push_back(std::move(f));
                else
                    ++stats.duplicates;
            }
    }
    seen.clear();
    return filter_unique(n, std::move(unique), stats, drop_applies(cfg, n), cfg);
}

Level apply_bipartite_deletion(const Level& level, const PipelineConfig& cfg)
{
    if (cfg.bipartite_drop_n <= 0 || level.n != cfg.bipartite_drop_n)
        throw PipelineError("bipartite deletion applies only at n=" + std::to_string(cfg.bipartite_drop_n) +
            ", got level " + std::to_string(level.n));
    Level out = level;
    out.survivors.clear();
    for (const auto& s : level.survivors)
        if (! is_bipartite(graph6_decode(s)))
            out.survivors.push_back(s);
    const auto removed = static_cast<std::int64_t>(level.survivors.size() - out.survivors.size());
    out.stats.pruned_bipartite += removed;
    out.stats.survivors = static_cast<std::int64_t>(out.survivors.size());
    out.bipartite_free = true;
    return out;
}

Level brute_force_level(int n, const PipelineConfig& cfg)
{
    if (n < 1 || n > 9)
        throw PipelineError("brute_force_level supports 1 <= n <= 9, got " + std::to_string(n));
    // Every isomorphism class has a labelling with non-increasing degrees, so
    // restricting to those labellings loses no class.
    LevelStats stats;
    std::set<CanonicalForm> unique;
    Graph g(n);
    std::vector<int> degree(n, 0);
    std::function<void(int, int)> place = [&](int i, int j) {
        if (j == n) {
            // Row i is final.
            if (i > 0 && degree[i] > degree[i - 1])
                return;
            for (int k = i + 1; k < n; ++k)
                if (degree[k] > degree[i])
                    return;
            if (i + 1 >= n - 1) {
                if (n >= 2 && degree[n - 1] > degree[n - 2])
                    return;
                ++stats.candidates;
                if (! unique.insert(canonical_form(g)).second)
                    ++stats.duplicates;
                return;
            }
            place(i + 1, i + 2);
            return;
        }
        place(i, j + 1);
        if ((g.neighbors(i) & g.neighbors(j)) == 0) {
            g.add_edge(i, j);
            ++degree[i];
            ++degree[j];
            if (i == 0 || degree[i] <= degree[i - 1])
                place(i, j + 1);
            --degree[i];
            --degree[j];
            g.remove_edge(i, j);
        }
    };
    if (n == 1) {
        ++stats.candidates;
        unique.insert(canonical_form(g));
    }
    else
        place(0, 1);
    const bool reject = cfg.bipartite_drop_n > 0 && n >= cfg.bipartite_drop_n;
    return filter_unique(n, {unique.begin(), unique.end()}, stats, reject, cfg);
}

namespace state {

    std::filesystem::path level_path(const std::filesystem::path& dir, int n)
    {
        char name[32];
        std::snprintf(name, sizeof name, "level_%02d.g6", n);
        return dir / name;
    }

    std::filesystem::path stats_path(const std::filesystem::path& dir, int n)
    {
        char name[32];
        std::snprintf(name, sizeof name, "level_%02d.stats", n);
        return dir / name;
    }

    void write_level(const std::filesystem::path& dir, const Level& level)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw PipelineError("cannot create state directory " + dir.string() + ": " + ec.message());
        const std::string bytes = level_bytes(level);
        write_atomically(level_path(dir, level.n), bytes);
        std::ostringstream s;
        s << "n=" << level.n << '\n'
          << "candidates=" << level.stats.candidates << '\n'
          << "duplicates=" << level.stats.duplicates << '\n'
          << "pruned_eta=" << level.stats.pruned_eta << '\n'
          << "pruned_bipartite=" << level.stats.pruned_bipartite << '\n'
          << "survivors=" << level.stats.survivors << '\n'
          << "bipartite_free=" << (level.bipartite_free ? 1 : 0) << '\n'
          << "checksum=" << hex(fnv1a(bytes)) << '\n';
        write_atomically(stats_path(dir, level.n), s.str());
    }

    bool has_level(const std::filesystem::path& dir, int n)
    {
        return std::filesystem::exists(level_path(dir, n)) && std::filesystem::exists(stats_path(dir, n));
    }

    Level read_level(const std::filesystem::path& dir, int n)
    {
        std::map<std::string, std::string> kv;
        std::istringstream sidecar(read_file(stats_path(dir, n)));
        for (std::string line; std::getline(sidecar, line);) {
            const auto eq = line.find('=');
            if (eq != std::string::npos)
                kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
        auto number = [&](const char* key) -> std::int64_t {
            const auto it = kv.find(key);
            if (it == kv.end())
                throw PipelineError(std::string("stats sidecar for level ") + std::to_string(n) + " lacks " + key);
            return std::stoll(it->second);
        };
        const std::string bytes = read_file(level_path(dir, n));
        if (kv["checksum"] != hex(fnv1a(bytes)))
            throw PipelineError("checksum mismatch for level " + std::to_string(n));
        Level level;
        level.n = static_cast<int>(number("n"));
        if (level.n != n)
            throw PipelineError("stats sidecar names level " + std::to_string(level.n));
        level.stats = {number("candidates"), number("duplicates"), number("pruned_eta"), number("pruned_bipartite"),
            number("survivors")};
        level.bipartite_free = number("bipartite_free") != 0;
        std::istringstream lines(bytes);
        for (std::string line; std::getline(lines, line);)
            if (! line.empty())
                level.survivors.push_back(line);
        if (static_cast<std::int64_t>(level.survivors.size()) != level.stats.survivors)
            throw PipelineError("survivor count mismatch for level " + std::to_string(n));
        return level;
    }

} // namespace state

std::string RunReport::to_text() const
{
    std::ostringstream s;
    for (const auto& l : levels) {
        s << "level=" << l.n << " candidates=" << l.stats.candidates << " duplicates=" << l.stats.duplicates
          << " pruned_eta=" << l.stats.pruned_eta << " pruned_bipartite=" << l.stats.pruned_bipartite
          << " survivors=" << l.stats.survivors << " checksum=" << hex(l.checksum) << " seconds=" << l.seconds
          << (l.resumed ? " resumed=1" : "") << '\n';
    }
    s << "terminal_n=" << terminal_n << '\n' << "seconds=" << seconds << '\n';
    return s.str();
}

std::string RunReport::to_json() const
{
    nlohmann::json j;
    j["terminal_n"] = terminal_n;
    j["seconds"] = seconds;
    j["levels"] = nlohmann::json::array();
    for (const auto& l : levels)
        j["levels"].push_back({{"n", l.n}, {"candidates", l.stats.candidates}, {"duplicates", l.stats.duplicates},
            {"pruned_eta", l.stats.pruned_eta}, {"pruned_bipartite", l.stats.pruned_bipartite},
            {"survivors", l.stats.survivors}, {"checksum", hex(l.checksum)}, {"seconds", l.seconds},
            {"resumed", l.resumed}});
    return j.dump(2);
}

RunReport run_pipeline(const PipelineConfig& cfg)
{
    validate(cfg);
    if (cfg.state_dir.empty())
        throw PipelineError("run_pipeline needs a state directory");
    const auto run_start = std::chrono::steady_clock::now();
    RunReport report;

    auto finish = [&](const Level& level, double secs, bool resumed) {
        report.levels.push_back({level.n, level.stats, level.checksum(), secs, resumed});
        if (cfg.on_level)
            cfg.on_level(level);
    };

    Level current;
    bool have = false;
    for (int n = cfg.start_n; n <= cfg.max_n && state::has_level(cfg.state_dir, n); ++n) {
        current = state::read_level(cfg.state_dir, n);
        have = true;
        finish(current, 0.0, true);
        if (current.survivors.empty())
            break;
    }
    if (! have) {
        const auto t = std::chrono::steady_clock::now();
        current = init_level(cfg.start_n, cfg);
        state::write_level(cfg.state_dir, current);
        finish(current, seconds_since(t), false);
    }
    while (! current.survivors.empty() && current.n < cfg.max_n) {
        const auto t = std::chrono::steady_clock::now();
        Level next = extend_level(current, cfg);
        if (next.n == cfg.bipartite_drop_n)
            next = apply_bipartite_deletion(next, cfg);
        state::write_level(cfg.state_dir, next);
        finish(next, seconds_since(t), false);
        current = std::move(next);
    }
    report.terminal_n = current.survivors.empty() ? current.n : 0;
    report.seconds = seconds_since(run_start);
    return report;
}

} // namespace ctfpack
