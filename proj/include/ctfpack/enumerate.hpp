#pragma once

#include "ctfpack/canon.hpp"
#include "ctfpack/graph.hpp"
#include "ctfpack/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ctfpack {

struct LevelStats {
    std::int64_t candidates = 0;
    std::int64_t duplicates = 0;
    std::int64_t pruned_eta = 0;
    std::int64_t pruned_bipartite = 0;
    std::int64_t survivors = 0;

    bool operator==(const LevelStats&) const = default;
};

/// Survivor set L_n: triangle-free graphs H on n vertices with
/// nu*(complement H) <= n(n-1)/4, one canonical representative per class.
struct Level {
    int n = 0;
    /// Canonical forms in increasing byte order; these are the level file lines.
    std::vector<CanonicalForm> survivors;
    LevelStats stats;
    /// Set once bipartite survivors have been removed at or above the drop level.
    bool bipartite_free = false;

    std::vector<Graph> graphs() const;
    std::uint64_t checksum() const;
};

struct PipelineConfig {
    int start_n = 6;
    int max_n = 30;
    /// 0 disables the one-off bipartite deletion.
    int bipartite_drop_n = 17;
    std::filesystem::path state_dir;
    bool presolve = true;
    int workers = 1;
    /// Called once per finished level (after persistence); may be empty.
    std::function<void(const Level&)> on_level;
};

class PipelineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void validate(const PipelineConfig& cfg);

/// Largest pruning budget: n(n-1)/4.
Rational eta_quarter_bound(int n);

/// True when nu*(complement h) <= n(n-1)/4, decided by a verified certificate.
bool passes_eta_filter(const Graph& h, bool presolve = true);

/// Exhaustive over all 2^C(n0,2) labelled graphs (n0 <= 8).
Level init_level(int n0, const PipelineConfig& cfg = {});

/// One-vertex triangle-free extensions (new vertex adjacent to an independent
/// set of the parent), deduplicated, then bipartite and density filters.
Level extend_level(const Level& parent, const PipelineConfig& cfg);

/// Removes bipartite survivors; only valid on the configured drop level.
Level apply_bipartite_deletion(const Level& level, const PipelineConfig& cfg);

/// Independent oracle (n <= 9): enumerates labelled triangle-free graphs with
/// non-increasing degree sequence directly, then applies the same filters.
Level brute_force_level(int n, const PipelineConfig& cfg = {});

struct LevelRecord {
    int n = 0;
    LevelStats stats;
    std::uint64_t checksum = 0;
    double seconds = 0.0;
    bool resumed = false;
};

struct RunReport {
    std::vector<LevelRecord> levels;
    /// n of the first empty level, or 0 when max_n was reached first.
    int terminal_n = 0;
    double seconds = 0.0;

    std::string to_text() const;
    std::string to_json() const;
};

/// Levels are persisted to cfg.state_dir before the next one starts; a rerun
/// resumes from the highest stored level after re-validating its checksum.
RunReport run_pipeline(const PipelineConfig& cfg);

namespace state {

    std::filesystem::path level_path(const std::filesystem::path& dir, int n);
    std::filesystem::path stats_path(const std::filesystem::path& dir, int n);

    /// Writes the graph6 file and then the stats sidecar, each via rename.
    void write_level(const std::filesystem::path& dir, const Level& level);
    /// Throws PipelineError when the stored checksum does not match the file.
    Level read_level(const std::filesystem::path& dir, int n);
    bool has_level(const std::filesystem::path& dir, int n);

} // namespace state

/// FNV-1a over the level file bytes.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

} // namespace ctfpack
