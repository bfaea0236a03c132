#include <doctest.h>

#include "bsc/e_oracle.hpp"

#include <random>

using namespace bsc;

namespace {

const GraphParams kP{3, 3, 7};

const LocalContext& ctx()
{
    static const LocalContext c = [] {
        const auto [x, y] = canonical_pair(kP, 2);
        return LocalContext::build(kP, x, y);
    }();
    return c;
}

const AtomGram& atoms()
{
    static const AtomGram g = build_atom_gram(ctx());
    return g;
}

VertexSum random_sum(std::mt19937_64& rng, int terms)
{
    std::uniform_int_distribution<int> entry(0, 2), num(-5, 5), den(1, 4);
    VertexSum s;
    for (int t = 0; t < terms; ++t) {
        MatVertex v(3, 4);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c) v.set(r, c, static_cast<std::uint8_t>(entry(rng)));
        s.add(v, Rational(num(rng), den(rng)));
    }
    return s;
}

// Oracle: the plain double sum, one rank per pair and no grouping.
Rational naive_inner(const VertexSum& u, const VertexSum& v)
{
    const PrimeField f(3);
    const Spectrum s = spectrum(kP);
    Rational total = 0;
    for (const auto& [a, ca] : u.terms())
        for (const auto& [b, cb] : v.terms()) total += ca * cb * s.theta_star[rank_distance(f, a, b)];
    return total / Rational(kP.vertex_count());
}

}  // namespace

TEST_CASE("VertexSum arithmetic drops zero coefficients")
{
    const MatVertex a(3, 4);
    VertexSum s = VertexSum::single(a, 2);
    s.add(a, -2);
    CHECK(s.empty());
    VertexSum t = VertexSum::single(a, Rational(1, 3));
    CHECK((t - t).empty());
    CHECK((Rational(0) * t).empty());
    CHECK((t + t).terms().at(a) == Rational(2, 3));
}

TEST_CASE("e_inner basic values at (3,3,7)")
{
    const auto& c = ctx();
    const VertexSum x = VertexSum::single(c.x()), y = VertexSum::single(c.y());
    CHECK(e_inner(kP, x, x) == Rational(1040, 531441));
    CHECK(e_inner(kP, x, y) == Rational(68, 531441));
    CHECK(e_norm_zero(kP, VertexSum{}));
    CHECK_FALSE(e_norm_zero(kP, x));
    const RatMatrixX g = gram(kP, {x, y});
    CHECK(exact_determinant(g) == Rational(1040 * 1040 - 68 * 68, 531441L * 531441L));
}

TEST_CASE("e_inner is symmetric, bilinear and agrees with the naive double sum")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const VertexSum u = random_sum(rng, 8), v = random_sum(rng, 8), w = random_sum(rng, 5);
        const Rational c(trial - 7, 3);
        CHECK(e_inner(kP, u, v) == e_inner(kP, v, u));
        CHECK(e_inner(kP, u, v) == naive_inner(u, v));
        CHECK(e_inner(kP, u + c * w, v) == e_inner(kP, u, v) + c * e_inner(kP, w, v));
        CHECK(e_inner(kP, u, v, 3) == e_inner(kP, u, v, 1));
        CHECK(e_inner(kP, u, u) >= 0);
    }
}

TEST_CASE("the counted atom Gram equals e_inner on materialised sums")
{
    const auto& g = atoms();
    std::vector<VertexSum> lifted;
    for (int a = 0; a < kAtoms; ++a) lifted.push_back(lift_atoms(ctx(), atom_unit(a)));
    CHECK(lifted[atom_O].size() == 12);
    CHECK(lifted[atom_Oprime + 5].size() == 648);
    for (int a = 0; a < kAtoms; ++a)
        for (int b = a; b < kAtoms; ++b) {
            INFO(a, ",", b);
            CHECK(e_inner(kP, lifted[a], lifted[b]) == g.inner(atom_unit(a), atom_unit(b)));
        }
}

TEST_CASE("the y-in-S identity holds on the materialised vertex sum")
{
    const auto& c = ctx();
    // y + (1 - 1/3)/2 x - (1/3) O_1 + (1/3) O_2
    AtomVector xi = atom_y_hat() + Rational(1, 3) * atom_x_hat() - Rational(1, 3) * atom_class(0) + Rational(1, 3) * atom_class(1);
    CHECK(e_norm_zero(kP, lift_atoms(c, xi)));
    xi(atom_x) += Rational(1, 100);
    CHECK_FALSE(e_norm_zero(kP, lift_atoms(c, xi)));
}

TEST_CASE("all identities on x, y and the partitions hold at (3,3,7), k = 2")
{
    const ClosedForms cf = evaluate_closed_forms(kP, 2);
    const auto results = verify_e_identities(atoms(), cf);
    CHECK(results.size() >= 12);
    for (const auto& r : results) {
        INFO(r.name, " ", to_json(r, false).dump());
        CHECK(r.status == Status::pass);
    }
    for (const auto& r : verify_local_basis(ctx(), cf, 3)) {
        INFO(r.name, " ", to_json(r, false).dump());
        CHECK(r.status == Status::pass);
    }
}

TEST_CASE("a perturbed lambda breaks the strengthened balanced set check")
{
    for (int i = 1; i <= 6; ++i) {
        ClosedForms cf = evaluate_closed_forms(kP, 2);
        apply_perturbation(cf, Perturbation{"lambda", i, 1, Rational(1)});
        const auto results = verify_e_identities(atoms(), cf);
        const CheckResult* r = find_result(results, "thm-strengthened-bsc");
        REQUIRE(r != nullptr);
        CHECK(r->status == Status::fail);
        CHECK(r->witness["failures"][0]["i"].get<int>() == i);
    }
}
