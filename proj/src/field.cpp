#include "bsc/field.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace bsc {

namespace {

constexpr std::uint64_t kLaneOnes = 0x0101010101010101ULL;
constexpr std::uint64_t kLaneHigh = 0x8080808080808080ULL;

// Lanes hold values < 2q <= 122, so adding (128 - q) sets the high bit
// exactly in lanes that reached q. No lane carries into its neighbour.
inline std::uint64_t reduce_lanes(std::uint64_t t, std::uint64_t q) noexcept
{
    const std::uint64_t ge = ((t + (128 - q) * kLaneOnes) & kLaneHigh) >> 7;
    return t - ge * q;
}

inline std::uint64_t add_lanes(std::uint64_t a, std::uint64_t b, std::uint64_t q) noexcept
{
    return reduce_lanes(a + b, q);
}

// a - b = a + (q - b) with (q - b) reduced so that zero lanes stay zero.
inline std::uint64_t sub_lanes(std::uint64_t a, std::uint64_t b, std::uint64_t q, std::uint64_t valid) noexcept
{
    const std::uint64_t negb = reduce_lanes((q * kLaneOnes & valid) - b, q);
    return add_lanes(a, negb, q);
}

std::uint64_t valid_mask(int size, int word) noexcept
{
    const int remaining = size - word * 8;
    if (remaining >= 8) return ~0ULL;
    if (remaining <= 0) return 0;
    return (1ULL << (remaining * 8)) - 1;
}

void require_same_shape(const MatVertex& a, const MatVertex& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch: " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
}

}  // namespace

bool is_prime(long n) noexcept
{
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(int q) : q_(q)
{
    if (q == 2 || !is_prime(q) || q > max_modulus)
        throw std::invalid_argument("GF(q) requires an odd prime q <= " + std::to_string(max_modulus) + ", got " +
                                    std::to_string(q));
    mul_table_.resize(static_cast<std::size_t>(q) * q);
    inv_table_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            const int p = (a * b) % q;
            mul_table_[a * q + b] = static_cast<std::uint8_t>(p);
            if (p == 1) inv_table_[a] = static_cast<std::uint8_t>(b);
        }
    }
}

FieldElement PrimeField::element(long value) const noexcept
{
    long r = value % q_;
    if (r < 0) r += q_;
    return FieldElement{static_cast<std::uint8_t>(r)};
}

FieldElement PrimeField::add(FieldElement a, FieldElement b) const noexcept
{
    const int s = a.value + b.value;
    return FieldElement{static_cast<std::uint8_t>(s >= q_ ? s - q_ : s)};
}

FieldElement PrimeField::sub(FieldElement a, FieldElement b) const noexcept
{
    const int s = a.value - b.value;
    return FieldElement{static_cast<std::uint8_t>(s < 0 ? s + q_ : s)};
}

FieldElement PrimeField::mul(FieldElement a, FieldElement b) const noexcept
{
    return FieldElement{mul_raw(a.value, b.value)};
}

FieldElement PrimeField::neg(FieldElement a) const noexcept
{
    return FieldElement{static_cast<std::uint8_t>(a.value == 0 ? 0 : q_ - a.value)};
}

FieldElement PrimeField::inv(FieldElement a) const
{
    if (a.value == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) + ")");
    return FieldElement{inv_raw(a.value)};
}

FieldElement PrimeField::apply(FieldOp op, FieldElement a, FieldElement b) const
{
    switch (op) {
    case FieldOp::add: return add(a, b);
    case FieldOp::sub: return sub(a, b);
    case FieldOp::mul: return mul(a, b);
    case FieldOp::inv: return inv(a);
    }
    throw std::invalid_argument("unknown field operation");
}

MatVertex::MatVertex(int rows, int cols) : rows_(rows), cols_(cols)
{
    if (rows < 1 || cols < 1 || rows * cols > max_entries)
        throw std::invalid_argument("MatVertex shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                                    " outside supported range (entries <= " + std::to_string(max_entries) + ")");
}

MatVertex MatVertex::from_entries(int rows, int cols, std::span<const std::uint8_t> entries)
{
    MatVertex m(rows, cols);
    if (entries.size() != static_cast<std::size_t>(rows * cols))
        throw std::invalid_argument("entry count does not match shape");
    std::memcpy(m.bytes_mut(), entries.data(), entries.size());
    return m;
}

MatVertex MatVertex::parse(int rows, int cols, std::string_view text, int q)
{
    std::vector<std::uint8_t> digits;
    for (char c : text) {
        if (c == ';' || c == ',' || c == ' ') continue;
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
        if (v < 0 || v >= q) throw std::invalid_argument(std::string("invalid matrix digit '") + c + "'");
        digits.push_back(static_cast<std::uint8_t>(v));
    }
    return from_entries(rows, cols, digits);
}

bool MatVertex::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

std::uint64_t MatVertex::hash() const noexcept
{
    // splitmix-style mix over the packed words
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(rows_) << 8 | cols_);
    for (std::uint64_t w : data_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= h >> 31;
        h *= 0xbf58476d1ce4e5b9ULL;
    }
    return h ^ (h >> 29);
}

std::string MatVertex::to_string() const
{
    std::string out;
    for (int r = 0; r < rows_; ++r) {
        if (r) out.push_back(';');
        for (int c = 0; c < cols_; ++c) {
            const int v = (*this)(r, c);
            out.push_back(static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10));
        }
    }
    return out;
}

MatVertex mat_add(const PrimeField& field, const MatVertex& a, const MatVertex& b)
{
    require_same_shape(a, b);
    MatVertex out(a.rows(), a.cols());
    const std::uint64_t q = static_cast<std::uint64_t>(field.modulus());
    const int used = (a.size() + 7) / 8;
    for (int w = 0; w < used; ++w) out.packed()[w] = add_lanes(a.packed()[w], b.packed()[w], q);
    return out;
}

MatVertex mat_sub(const PrimeField& field, const MatVertex& a, const MatVertex& b)
{
    require_same_shape(a, b);
    MatVertex out(a.rows(), a.cols());
    const std::uint64_t q = static_cast<std::uint64_t>(field.modulus());
    const int used = (a.size() + 7) / 8;
    for (int w = 0; w < used; ++w)
        out.packed()[w] = sub_lanes(a.packed()[w], b.packed()[w], q, valid_mask(a.size(), w));
    return out;
}

MatVertex transpose(const MatVertex& m)
{
    MatVertex t(m.cols(), m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) t.set(c, r, m(r, c));
    return t;
}

MatVertex outer_product(const PrimeField& field, std::span<const std::uint8_t> u, std::span<const std::uint8_t> v)
{
    MatVertex m(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (std::size_t r = 0; r < u.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            m.set(static_cast<int>(r), static_cast<int>(c), field.mul_raw(u[r], v[c]));
    return m;
}

namespace {

int rank_of_entries(const PrimeField& field, std::uint8_t* e, int rows, int cols)
{
    const int q = field.modulus();
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (e[r * cols + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = col; c < cols; ++c) std::swap(e[pivot * cols + c], e[rank * cols + c]);
        const std::uint8_t inv = field.inv_raw(e[rank * cols + col]);
        for (int c = col; c < cols; ++c) e[rank * cols + c] = field.mul_raw(e[rank * cols + c], inv);
        for (int r = rank + 1; r < rows; ++r) {
            const std::uint8_t f = e[r * cols + col];
            if (f == 0) continue;
            for (int c = col; c < cols; ++c) {
                const int v = e[r * cols + c] - field.mul_raw(f, e[rank * cols + c]);
                e[r * cols + c] = static_cast<std::uint8_t>(v < 0 ? v + q : v);
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int rank(const PrimeField& field, const MatVertex& m)
{
    std::array<std::uint8_t, MatVertex::max_entries> e{};
    std::memcpy(e.data(), m.entries().data(), m.size());
    return rank_of_entries(field, e.data(), m.rows(), m.cols());
}

bool is_rank_one(const PrimeField& field, const MatVertex& m)
{
    const int rows = m.rows();
    const int cols = m.cols();
    int lead = -1;
    for (int r = 0; r < rows && lead < 0; ++r)
        for (int c = 0; c < cols; ++c)
            if (m(r, c) != 0) {
                lead = r;
                break;
            }
    if (lead < 0) return false;
    int pc = 0;
    while (m(lead, pc) == 0) ++pc;
    const std::uint8_t pinv = field.inv_raw(m(lead, pc));
    for (int r = lead + 1; r < rows; ++r) {
        // row r must equal (m(r,pc)/m(lead,pc)) * row lead
        const std::uint8_t f = field.mul_raw(m(r, pc), pinv);
        for (int c = 0; c < cols; ++c)
            if (m(r, c) != field.mul_raw(f, m(lead, c))) return false;
    }
    return true;
}

int rank_distance(const PrimeField& field, const MatVertex& a, const MatVertex& b)
{
    return rank(field, mat_sub(field, a, b));
}

std::uint64_t rank_one_count(int q, int rows, int cols)
{
    std::uint64_t qr = 1, qc = 1;
    for (int i = 0; i < rows; ++i) qr *= static_cast<std::uint64_t>(q);
    for (int i = 0; i < cols; ++i) qc *= static_cast<std::uint64_t>(q);
    return (qr - 1) * (qc - 1) / static_cast<std::uint64_t>(q - 1);
}

namespace {

// Nonzero vectors of length n in lexicographic order; if `normalized`, only
// those whose first nonzero entry is 1.
std::vector<std::vector<std::uint8_t>> nonzero_vectors(int q, int n, bool normalized)
{
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> v(n, 0);
    for (;;) {
        int i = n - 1;
        while (i >= 0 && v[i] == q - 1) {
            v[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++v[i];
        if (normalized) {
            const auto first = std::find_if(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
            if (*first != 1) continue;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

std::vector<MatVertex> enumerate_rank_one(const PrimeField& field, int rows, int cols)
{
    const int q = field.modulus();
    const auto us = nonzero_vectors(q, rows, true);
    const auto vs = nonzero_vectors(q, cols, false);
    std::vector<MatVertex> out;
    out.reserve(us.size() * vs.size());
    for (const auto& u : us)
        for (const auto& v : vs) out.push_back(outer_product(field, u, v));
    return out;
}

}  // namespace bsc
