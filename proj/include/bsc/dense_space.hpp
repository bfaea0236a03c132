#pragma once

// Whole-graph audit of the rank metric: breadth-first search from the zero
// matrix over every vertex, compared with rank(v), plus sampled rank-metric
// checks for configurations too large to enumerate.

#include "bsc/local.hpp"
#include "bsc/params.hpp"
#include "bsc/report.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace bsc {

/// Largest vertex count the BFS audit will enumerate.
constexpr std::uint64_t kMaxAuditVertices = 2'000'000;

struct BfsAuditReport {
    std::uint64_t vertices = 0;
    std::uint64_t visited = 0;
    std::vector<std::uint64_t> sphere_sizes;  ///< by BFS distance
    std::uint64_t rank_mismatches = 0;
    json first_mismatch;
};

/// Runs the full BFS. Throws InvalidParameters if the vertex count exceeds `limit`.
BfsAuditReport bfs_distance_audit(const GraphParams& p, std::uint64_t limit = kMaxAuditVertices);

/// Report entries "bfs-rank-metric" and "bfs-sphere-sizes" (skipped when too large).
std::vector<CheckResult> bfs_audit_checks(const GraphParams& p, std::uint64_t limit = kMaxAuditVertices);

/// Same, reusing a per-(q, D, N) result file in `cache_dir` when present and current.
std::vector<CheckResult> bfs_audit_checks_cached(const GraphParams& p, const std::filesystem::path& cache_dir,
                                                 std::uint64_t limit = kMaxAuditVertices);

/// Vertices of a small configuration as integers: row r contributes its
/// base-q row code times (q^cols)^r. Differences are row-table lookups and
/// ranks come from a table over all codes.
class DenseCodec {
public:
    /// Throws InvalidParameters above `limit` vertices.
    explicit DenseCodec(const GraphParams& p, std::uint64_t limit = kMaxAuditVertices);

    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(rank_.size()); }
    int rows() const noexcept { return rows_; }
    std::uint32_t encode(const MatVertex& m) const;
    MatVertex decode(std::uint32_t code) const;
    /// Row codes of a vertex, least significant row first.
    void split(std::uint32_t code, std::uint32_t* row_codes) const;
    /// Code of a - b from row codes.
    std::uint32_t sub_rows(const std::uint32_t* a, const std::uint32_t* b) const
    {
        std::uint32_t code = 0;
        for (int r = rows_ - 1; r >= 0; --r) code = code * row_span_ + row_sub_[a[r] * row_span_ + b[r]];
        return code;
    }
    int rank_of(std::uint32_t code) const noexcept { return rank_[code]; }

private:
    int q_, rows_, cols_;
    std::uint32_t row_span_;
    std::vector<std::uint32_t> row_sub_;
    std::vector<std::uint8_t> rank_;
};

/// Sampled rank-metric checks on a built context: triangle inequality on
/// triples drawn from {x, y} + Gamma(x) + Gamma(y), and for random vertices v a
/// neighbour of v strictly closer to x (so rank distance is realised by a path).
CheckResult rank_metric_spot_checks(const LocalContext& ctx, int samples, std::uint64_t seed);

}  // namespace bsc
