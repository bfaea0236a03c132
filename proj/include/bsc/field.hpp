#pragma once

// Arithmetic over a prime field GF(q) and small matrices over it.
//
// A vertex of the bilinear forms graph is a D x (N-D) matrix over GF(q).
// Entries are stored as residues, one byte each, row-major in a fixed-size
// buffer so vertices are trivially copyable and can be hashed as byte
// strings. Addition and subtraction work on eight entries per 64-bit word.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bsc {

/// Residue in [0, q). The modulus lives in the PrimeField that produced it.
struct FieldElement {
    std::uint8_t value = 0;

    friend constexpr bool operator==(FieldElement, FieldElement) = default;
};

enum class FieldOp { add, sub, mul, inv };

class PrimeField {
public:
    /// Largest modulus supported by the packed representation.
    static constexpr int max_modulus = 61;

    /// Throws std::invalid_argument unless q is an odd prime <= max_modulus.
    explicit PrimeField(int q);

    int modulus() const noexcept { return q_; }

    FieldElement element(long value) const noexcept;

    FieldElement add(FieldElement a, FieldElement b) const noexcept;
    FieldElement sub(FieldElement a, FieldElement b) const noexcept;
    FieldElement mul(FieldElement a, FieldElement b) const noexcept;
    FieldElement neg(FieldElement a) const noexcept;
    /// Throws std::domain_error for zero.
    FieldElement inv(FieldElement a) const;

    FieldElement apply(FieldOp op, FieldElement a, FieldElement b) const;

    // Raw residue forms used by the elimination kernels.
    std::uint8_t mul_raw(std::uint8_t a, std::uint8_t b) const noexcept { return mul_table_[a * q_ + b]; }
    std::uint8_t inv_raw(std::uint8_t a) const noexcept { return inv_table_[a]; }

private:
    int q_;
    std::vector<std::uint8_t> mul_table_;
    std::vector<std::uint8_t> inv_table_;
};

bool is_prime(long n) noexcept;

/// A rows x cols matrix over GF(q). Entries are residues; the modulus is
/// supplied by the caller for every arithmetic operation.
class MatVertex {
public:
    static constexpr int max_entries = 64;
    static constexpr int words = max_entries / 8;

    MatVertex() = default;
    MatVertex(int rows, int cols);

    static MatVertex zero(int rows, int cols) { return MatVertex(rows, cols); }
    /// Entries in row-major order; every value must already be reduced.
    static MatVertex from_entries(int rows, int cols, std::span<const std::uint8_t> entries);
    /// Parses a row-major digit string such as "0120;1002;..." (';' and ',' are ignored).
    static MatVertex parse(int rows, int cols, std::string_view text, int q);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    int size() const noexcept { return rows_ * cols_; }

    std::uint8_t operator()(int r, int c) const noexcept { return bytes()[r * cols_ + c]; }
    void set(int r, int c, std::uint8_t value) noexcept { bytes_mut()[r * cols_ + c] = value; }

    std::span<const std::uint8_t> entries() const noexcept { return {bytes(), static_cast<std::size_t>(size())}; }
    bool is_zero() const noexcept;

    /// Canonical byte-string key: the row-major residues.
    std::string key() const { return std::string(reinterpret_cast<const char*>(bytes()), size()); }
    std::uint64_t hash() const noexcept;

    /// Row-major digits separated by ';' between rows.
    std::string to_string() const;

    friend bool operator==(const MatVertex& a, const MatVertex& b) noexcept
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator<(const MatVertex& a, const MatVertex& b) noexcept { return a.key() < b.key(); }

    // Packed words, eight entries each. Unused entries are always zero.
    const std::array<std::uint64_t, words>& packed() const noexcept { return data_; }
    std::array<std::uint64_t, words>& packed() noexcept { return data_; }

private:
    const std::uint8_t* bytes() const noexcept { return reinterpret_cast<const std::uint8_t*>(data_.data()); }
    std::uint8_t* bytes_mut() noexcept { return reinterpret_cast<std::uint8_t*>(data_.data()); }

    std::int32_t rows_ = 0;
    std::int32_t cols_ = 0;
    std::array<std::uint64_t, words> data_{};
};

struct MatVertexHash {
    std::size_t operator()(const MatVertex& m) const noexcept { return static_cast<std::size_t>(m.hash()); }
};

/// a + b entrywise mod q. Throws std::invalid_argument on shape mismatch.
MatVertex mat_add(const PrimeField& field, const MatVertex& a, const MatVertex& b);
/// a - b entrywise mod q. Throws std::invalid_argument on shape mismatch.
MatVertex mat_sub(const PrimeField& field, const MatVertex& a, const MatVertex& b);
MatVertex transpose(const MatVertex& m);
/// u v^t.
MatVertex outer_product(const PrimeField& field, std::span<const std::uint8_t> u, std::span<const std::uint8_t> v);

/// Rank over GF(q) by Gaussian elimination; first nonzero pivot in column order.
int rank(const PrimeField& field, const MatVertex& m);
/// True iff rank(m) == 1; cheaper than a full elimination.
bool is_rank_one(const PrimeField& field, const MatVertex& m);
/// rank(a - b) without materialising the difference in the caller.
int rank_distance(const PrimeField& field, const MatVertex& a, const MatVertex& b);

/// All rank-one rows x cols matrices, each exactly once, as u v^t with u
/// normalised to leading entry 1 and v any nonzero vector. Count is
/// (q^rows - 1)(q^cols - 1)/(q - 1). Ordering is lexicographic in (u, v).
std::vector<MatVertex> enumerate_rank_one(const PrimeField& field, int rows, int cols);

/// Closed-form count of rank-one rows x cols matrices over GF(q).
std::uint64_t rank_one_count(int q, int rows, int cols);

}  // namespace bsc
