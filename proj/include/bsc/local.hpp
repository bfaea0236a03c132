#pragma once

// Neighbourhoods of a pair of vertices x, y at distance k and the counting
// that reproduces the quotient matrices of the y-partition of Gamma(x).
//
// Gamma(x) = { x + R_i } and Gamma(y) = { y + R_i } for the same list R of
// rank-one matrices, so the local graphs of x and y share one adjacency
// structure: x + R_i ~ x + R_j iff R_i - R_j has rank one.

#include "bsc/field.hpp"
#include "bsc/params.hpp"
#include "bsc/report.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bsc {

/// Raised when a neighbour of x fits none of the six classification patterns.
class StructuralViolation : public std::runtime_error {
public:
    StructuralViolation(const MatVertex& z, int dist_to_other, int n_minus, int n_plus);
    const json& witness() const noexcept { return witness_; }

private:
    json witness_;
};

/// Raised when a count that must be constant over a class is not.
class EquitabilityViolation : public std::runtime_error {
public:
    EquitabilityViolation(const std::string& what, json witness);
    const json& witness() const noexcept { return witness_; }

private:
    json witness_;
};

enum class CrossTableMode { memory, recompute };

std::vector<MatVertex> neighbors(const GraphParams& p, const MatVertex& v);
int distance(const GraphParams& p, const MatVertex& u, const MatVertex& v);

/// x = 0, y = identity on the first k diagonal positions.
std::pair<MatVertex, MatVertex> canonical_pair(const GraphParams& p, int k);
/// x uniform; y = x + sum of k outer products u_i v_i^t with independent u's and v's.
std::pair<MatVertex, MatVertex> random_pair(const GraphParams& p, int k, std::uint64_t seed);

class LocalContext {
public:
    /// Builds Gamma(x), Gamma(y), the shared local adjacency, both partitions
    /// and (in memory mode) the Gamma(x) x Gamma(y) distance table.
    /// Throws StructuralViolation if the classification fails.
    static LocalContext build(const GraphParams& p, const MatVertex& x, const MatVertex& y,
                              CrossTableMode mode = CrossTableMode::memory, int threads = 1);

    const GraphParams& params() const noexcept { return params_; }
    const PrimeField& field() const noexcept { return field_; }
    int k() const noexcept { return k_; }
    const MatVertex& x() const noexcept { return x_; }
    const MatVertex& y() const noexcept { return y_; }
    int threads() const noexcept { return threads_; }
    void set_threads(int t) noexcept { threads_ = t < 1 ? 1 : t; }

    std::size_t kappa() const noexcept { return offsets_.size(); }
    const std::vector<MatVertex>& offsets() const noexcept { return offsets_; }
    MatVertex neighbor_x(std::size_t i) const;
    MatVertex neighbor_y(std::size_t j) const;

    /// Adjacency lists of the local graph on indices 0..kappa-1 (sorted).
    const std::vector<std::vector<std::uint32_t>>& local_adjacency() const noexcept { return adjacency_; }
    bool locally_adjacent(std::size_t i, std::size_t j) const;

    /// distance(x + R_i, y) and distance(y + R_j, x).
    int dist_x_side(std::size_t i) const noexcept { return dist_x_side_[i]; }
    int dist_y_side(std::size_t j) const noexcept { return dist_y_side_[j]; }

    /// Class label 0..5 (class O_{label+1}) of x + R_i in the y-partition of Gamma(x).
    int label_x(std::size_t i) const noexcept { return label_x_[i]; }
    /// Class label of y + R_j in the x-partition of Gamma(y).
    int label_y(std::size_t j) const noexcept { return label_y_[j]; }
    const std::vector<std::uint32_t>& class_x(int c) const { return class_x_.at(c); }
    const std::vector<std::uint32_t>& class_y(int c) const { return class_y_.at(c); }
    /// (n-, n+) recorded for x + R_i during classification.
    std::pair<int, int> counts_x(std::size_t i) const noexcept { return {n_minus_x_[i], n_plus_x_[i]}; }
    std::pair<int, int> counts_y(std::size_t j) const noexcept { return {n_minus_y_[j], n_plus_y_[j]}; }

    CrossTableMode cross_mode() const noexcept { return mode_; }
    /// distance(x + R_i, y + R_j).
    int cross_distance(std::size_t i, std::size_t j) const;
    /// Computes the cross distance without the table.
    int cross_distance_direct(std::size_t i, std::size_t j) const;

    /// Stable 64-bit hash of (x, y), used for cache file names.
    std::uint64_t pair_hash() const noexcept;
    static std::uint64_t pair_hash(const MatVertex& x, const MatVertex& y) noexcept;

    void save(const std::filesystem::path& file) const;
    /// Returns nullopt if the file is absent, of another version, or for another configuration.
    static std::optional<LocalContext> load(const std::filesystem::path& file, const GraphParams& p,
                                            const MatVertex& x, const MatVertex& y, CrossTableMode mode,
                                            int threads);
    static std::filesystem::path cache_file(const std::filesystem::path& dir, const GraphParams& p, int k,
                                            std::uint64_t pair_hash);

private:
    LocalContext(const GraphParams& p, const MatVertex& x, const MatVertex& y, int threads);
    void compute_side_distances();
    void compute_adjacency();
    void classify();
    void build_cross_table();

    GraphParams params_;
    PrimeField field_;
    int k_ = 0;
    MatVertex x_, y_, w_;  // w = y - x
    int threads_ = 1;
    CrossTableMode mode_ = CrossTableMode::memory;

    std::vector<MatVertex> offsets_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
    std::vector<std::uint8_t> dist_x_side_, dist_y_side_;
    std::vector<std::uint8_t> label_x_, label_y_;
    std::vector<std::uint32_t> n_minus_x_, n_plus_x_, n_minus_y_, n_plus_y_;
    std::array<std::vector<std::uint32_t>, 6> class_x_, class_y_;
    std::vector<std::uint8_t> cross_;
};

/// Expected (n-, n+) pattern for classes O2..O5 (index 1..4), as printed.
std::array<std::pair<std::int64_t, std::int64_t>, 6> classification_patterns(const GraphParams& p, int k);

/// Counts into each class from every vertex of each class, Gamma(x) side.
/// Throws EquitabilityViolation with the first non-constant row vertex.
IntMatrix6 empirical_C(const LocalContext& ctx);
/// Same on the Gamma(y) side, with the x-partition.
IntMatrix6 empirical_C_y_side(const LocalContext& ctx);

/// D^(l) for every l in [k-2, k+2]: number of vertices of O'_j at distance l
/// from a vertex of O_i, verified constant over all of O_i.
std::map<int, IntMatrix6> empirical_D(const LocalContext& ctx);

std::vector<CheckResult> verify_partition(const LocalContext& ctx, const ClosedForms& cf);

struct LocalSpectrumReport {
    bool annihilator_zero = false;
    bool f_equals_J = false;
    std::array<std::int64_t, 5> traces{};        ///< trace(A^m), m = 0..4
    std::array<Rational, 5> eigenvalues;         ///< a1, q^{N-D}-q-1, q^D-q-1, -1, -q
    std::array<Rational, 5> multiplicities;      ///< recovered from the traces
    std::array<BigInt, 5> expected_multiplicities;
    json witness;
};

/// Largest local graph handled by the dense integer products.
constexpr std::size_t kMaxDenseLocal = 2048;

/// Exact integer check of the local spectrum; nullopt when kappa exceeds kMaxDenseLocal.
std::optional<LocalSpectrumReport> local_spectrum(const LocalContext& ctx);
std::vector<CheckResult> local_spectrum_check(const LocalContext& ctx);

}  // namespace bsc
