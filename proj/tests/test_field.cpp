#include <doctest.h>

#include "bsc/field.hpp"

#include <random>
#include <set>

using namespace bsc;

namespace {

// Rank oracle: the row space has exactly q^rank elements. Enumerates every
// linear combination of the rows, so it shares no code with the eliminator.
int rowspace_rank(int q, const MatVertex& m)
{
    const int rows = m.rows(), cols = m.cols();
    std::set<std::vector<int>> span;
    std::vector<int> coeff(rows, 0);
    while (true) {
        std::vector<int> v(cols, 0);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) v[c] = (v[c] + coeff[r] * m(r, c)) % q;
        span.insert(v);
        int r = 0;
        while (r < rows && ++coeff[r] == q) coeff[r++] = 0;
        if (r == rows) break;
    }
    int rank = 0;
    for (std::size_t size = span.size(); size > 1; size /= q) ++rank;
    return rank;
}

MatVertex random_matrix(std::mt19937_64& rng, int q, int rows, int cols, double zero_bias = 0.0)
{
    std::uniform_int_distribution<int> entry(0, q - 1);
    std::bernoulli_distribution zero(zero_bias);
    MatVertex m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, zero(rng) ? 0 : static_cast<std::uint8_t>(entry(rng)));
    return m;
}

}  // namespace

TEST_CASE("field arithmetic")
{
    const PrimeField f3(3), f5(5);
    CHECK(f3.add(f3.element(2), f3.element(2)).value == 1);
    CHECK(f3.inv(f3.element(2)).value == 2);
    CHECK(f5.inv(f5.element(3)).value == 2);
    CHECK(f5.element(-1).value == 4);
    CHECK_THROWS_AS(f3.inv(f3.element(0)), std::domain_error);
    CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
    CHECK(f5.apply(FieldOp::sub, f5.element(1), f5.element(3)).value == 3);
}

TEST_CASE("field axioms exhaustively for small q")
{
    for (int q : {3, 5, 7, 11, 61}) {
        const PrimeField f(q);
        for (int a = 0; a < q; ++a) {
            const FieldElement ea = f.element(a);
            FieldElement acc = f.element(0);
            for (int i = 0; i < q; ++i) acc = f.add(acc, ea);
            CHECK(acc.value == 0);
            if (a) CHECK(f.mul(ea, f.inv(ea)).value == 1);
            for (int b = 0; b < q; ++b) {
                const FieldElement eb = f.element(b);
                CHECK(f.add(f.sub(ea, eb), eb) == ea);
                CHECK(f.mul(ea, eb).value == (a * b) % q);
            }
        }
    }
}

TEST_CASE("mat_add and mat_sub agree with entrywise arithmetic")
{
    std::mt19937_64 rng(11);
    for (int q : {3, 5, 7, 61}) {
        const PrimeField f(q);
        for (auto [rows, cols] : {std::pair{3, 4}, {4, 5}, {5, 6}, {8, 8}, {3, 7}}) {
            for (int trial = 0; trial < 50; ++trial) {
                const MatVertex a = random_matrix(rng, q, rows, cols), b = random_matrix(rng, q, rows, cols);
                const MatVertex s = mat_add(f, a, b), d = mat_sub(f, a, b);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < cols; ++c) {
                        REQUIRE(s(r, c) == (a(r, c) + b(r, c)) % q);
                        REQUIRE(d(r, c) == (a(r, c) - b(r, c) + q) % q);
                    }
                CHECK(mat_sub(f, a, a).is_zero());
                CHECK(mat_add(f, mat_sub(f, a, b), mat_sub(f, b, a)).is_zero());
            }
        }
    }
    const PrimeField f(3);
    CHECK_THROWS_AS(mat_sub(f, MatVertex(3, 4), MatVertex(3, 5)), std::invalid_argument);
}

TEST_CASE("rank matches the row-space oracle")
{
    std::mt19937_64 rng(7);
    for (int q : {3, 5}) {
        const PrimeField f(q);
        for (auto [rows, cols] : {std::pair{3, 4}, {3, 5}, {4, 5}}) {
            for (int trial = 0; trial < 150; ++trial) {
                const MatVertex m = random_matrix(rng, q, rows, cols, trial % 3 == 0 ? 0.7 : 0.2);
                const int r = rank(f, m);
                REQUIRE(r == rowspace_rank(q, m));
                CHECK(is_rank_one(f, m) == (r == 1));
            }
        }
    }
}

TEST_CASE("rank examples")
{
    const PrimeField f(3);
    CHECK(rank(f, MatVertex(3, 4)) == 0);
    MatVertex id(3, 4);
    for (int i = 0; i < 3; ++i) id.set(i, i, 1);
    CHECK(rank(f, id) == 3);
    const std::vector<std::uint8_t> u{1, 2, 0}, v{0, 1, 1, 2};
    CHECK(rank(f, outer_product(f, u, v)) == 1);
    CHECK(MatVertex::parse(3, 4, "1000;0100;0000", 3) == [] {
        MatVertex m(3, 4);
        m.set(0, 0, 1);
        m.set(1, 1, 1);
        return m;
    }());
}

TEST_CASE("rank properties on random samples")
{
    std::mt19937_64 rng(2024);
    for (int q : {3, 5, 7}) {
        const PrimeField f(q);
        for (int trial = 0; trial < 300; ++trial) {
            const MatVertex a = random_matrix(rng, q, 4, 5, 0.4), b = random_matrix(rng, q, 4, 5, 0.4);
            CHECK(rank(f, a) == rank(f, transpose(a)));
            CHECK(rank(f, mat_add(f, a, b)) <= rank(f, a) + rank(f, b));
            CHECK(rank_distance(f, a, b) == rank(f, mat_sub(f, a, b)));
        }
    }
}

TEST_CASE("enumerate_rank_one")
{
    for (auto [q, rows, cols, expected] : {std::tuple{3, 3, 4, 1040}, {3, 4, 5, 9680}, {5, 3, 4, 19344}}) {
        const PrimeField f(q);
        const auto list = enumerate_rank_one(f, rows, cols);
        // (q^rows - 1)(q^cols - 1)/(q - 1)
        CHECK(list.size() == static_cast<std::size_t>(expected));
        CHECK(rank_one_count(q, rows, cols) == static_cast<std::uint64_t>(expected));
        std::set<std::string> keys;
        for (const auto& m : list) {
            REQUIRE(rank(f, m) == 1);
            keys.insert(m.key());
        }
        CHECK(keys.size() == list.size());
    }
}

TEST_CASE("enumerate_rank_one is complete for a tiny shape")
{
    // every 2x3 matrix over GF(3) classified by the oracle
    const PrimeField f(3);
    const auto list = enumerate_rank_one(f, 2, 3);
    std::set<std::string> listed;
    for (const auto& m : list) listed.insert(m.key());
    int rank_one = 0;
    for (int code = 0; code < 729; ++code) {
        MatVertex m(2, 3);
        int c = code;
        for (int i = 0; i < 6; ++i, c /= 3) m.set(i / 3, i % 3, static_cast<std::uint8_t>(c % 3));
        if (rowspace_rank(3, m) == 1) {
            ++rank_one;
            CHECK(listed.count(m.key()) == 1);
        }
    }
    CHECK(rank_one == static_cast<int>(list.size()));
}
