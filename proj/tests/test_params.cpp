#include <doctest.h>

#include "bsc/params.hpp"

using namespace bsc;

namespace {

const std::vector<GraphParams> kConfigs{{3, 3, 7}, {3, 4, 9}, {5, 3, 7}, {3, 3, 8}, {5, 4, 9}, {3, 5, 11}, {7, 3, 7}};

Rational R(long n) { return Rational(n); }

// Tridiagonal intersection matrix L with L(i, i-1) = c_i, L(i, i) = a_i, L(i, i+1) = b_i.
RatMatrixX intersection_matrix(const GraphParams& p)
{
    RatMatrixX L = RatMatrixX::Zero(p.D + 1, p.D + 1);
    for (int i = 0; i <= p.D; ++i) {
        const auto in = intersection_numbers(p, i);
        if (i > 0) L(i, i - 1) = Rational(in.c);
        L(i, i) = Rational(in.a);
        if (i < p.D) L(i, i + 1) = Rational(in.b);
    }
    return L;
}

// Oracle for the dual eigenvalues: the standard sequence u_i of the
// eigenvalue theta (u_0 = 1, c_i u_{i-1} + a_i u_i + b_i u_{i+1} = theta u_i)
// scaled by the multiplicity m = |X| / sum_i k_i u_i^2.
std::pair<std::vector<Rational>, Rational> standard_sequence(const GraphParams& p, const Rational& theta)
{
    std::vector<Rational> u(p.D + 1);
    u[0] = 1;
    u[1] = theta / Rational(valency(p));
    for (int i = 1; i < p.D; ++i) {
        const auto in = intersection_numbers(p, i);
        u[i + 1] = (theta * u[i] - Rational(in.a) * u[i] - Rational(in.c) * u[i - 1]) / Rational(in.b);
    }
    Rational norm = 0;
    for (int i = 0; i <= p.D; ++i) norm += Rational(sphere_size(p, i)) * u[i] * u[i];
    return {u, Rational(p.vertex_count()) / norm};
}

}  // namespace

TEST_CASE("intersection numbers at (3,3,7)")
{
    const GraphParams p{3, 3, 7};
    const auto i2 = intersection_numbers(p, 2);
    CHECK(i2.c == 12);
    CHECK(i2.b == 648);
    CHECK(i2.a == 380);
    const auto i1 = intersection_numbers(p, 1);
    CHECK(i1.c == 1);
    CHECK(i1.b == 936);
    CHECK(i1.a == 103);
    const auto i0 = intersection_numbers(p, 0);
    CHECK(i0.c == 0);
    CHECK(i0.a == 0);
    CHECK(i0.b == 1040);
    CHECK(intersection_numbers(p, 3).c == 117);
    CHECK(sphere_size(p, 3) == 449280);
    CHECK_THROWS_AS(intersection_numbers(p, 4), InvalidParameters);
}

TEST_CASE("spectrum at (3,3,7)")
{
    const GraphParams p{3, 3, 7};
    const Spectrum s = spectrum(p);
    REQUIRE(s.theta.size() == 4);
    CHECK(s.theta[0] == 1040);
    CHECK(s.theta[1] == 311);
    CHECK(s.theta[2] == 68);
    CHECK(s.theta[3] == -13);
    CHECK(eigenspace_dimension(p) == 1040);
    CHECK(krein_q111(p) == 103);
    CHECK(s.dual(-1) == 0);
    CHECK(s.dual(4) == 0);
}

TEST_CASE("eigenvalues are the roots of the intersection matrix")
{
    for (const auto& p : kConfigs) {
        const RatMatrixX L = intersection_matrix(p);
        const Spectrum s = spectrum(p);
        for (int i = 0; i <= p.D; ++i) {
            const RatMatrixX shifted = L - s.theta[i] * RatMatrixX::Identity(p.D + 1, p.D + 1);
            CHECK(exact_determinant(shifted) == 0);
        }
    }
}

TEST_CASE("dual eigenvalues and multiplicity from the standard sequence")
{
    for (const auto& p : kConfigs) {
        const Spectrum s = spectrum(p);
        const auto [u, m] = standard_sequence(p, s.theta[1]);
        CHECK(m == Rational(eigenspace_dimension(p)));
        for (int i = 0; i <= p.D; ++i) CHECK(m * u[i] == s.theta_star[i]);
    }
}

TEST_CASE("sphere sizes sum to the vertex count")
{
    for (const auto& p : kConfigs) {
        BigInt total = 0;
        for (int i = 0; i <= p.D; ++i) total += sphere_size(p, i);
        CHECK(total == p.vertex_count());
    }
}

TEST_CASE("parameter validation")
{
    CHECK_NOTHROW(GraphParams{3, 3, 7}.validate());
    CHECK_THROWS_AS(GraphParams({2, 3, 7}).validate(), InvalidParameters);
    CHECK_THROWS_AS(GraphParams({9, 3, 7}).validate(), InvalidParameters);
    CHECK_THROWS_AS(GraphParams({3, 2, 7}).validate(), InvalidParameters);
    CHECK_THROWS_AS(GraphParams({3, 3, 6}).validate(), InvalidParameters);
    CHECK_THROWS_AS(GraphParams({3, 3, 7}).validate_distance(3), InvalidParameters);
    CHECK_THROWS_AS(GraphParams({3, 3, 7}).validate_distance(1), InvalidParameters);
    CHECK_NOTHROW(GraphParams({3, 4, 9}).validate_distance(3));
}

TEST_CASE("partition sizes")
{
    const auto s = partition_sizes({3, 3, 7}, 2);
    const std::array<long, 6> expected{12, 8, 12, 288, 72, 648};
    for (int i = 0; i < 6; ++i) CHECK(s[i] == expected[i]);
    CHECK(partition_sizes({3, 4, 9}, 2)[0] == 12);
    CHECK(partition_sizes({3, 4, 9}, 3)[5] == 5832);
    for (const auto& p : kConfigs)
        for (int k = 2; k <= p.D - 1; ++k) {
            BigInt sum = 0;
            for (const auto& v : partition_sizes(p, k)) {
                CHECK(v > 0);
                sum += v;
            }
            CHECK(sum == valency(p));
        }
}

TEST_CASE("scalar tables at (3,3,7), k = 2")
{
    const GraphParams p{3, 3, 7};
    const ScalarTables t = scalar_tables(p, 2);
    const std::array<long, 6> lambda{0, 2, 3, 72, 18, 216};
    const std::array<long, 6> vartheta{103, 77, 23, -1, -3, -3};
    for (int i = 0; i < 6; ++i) {
        CHECK(t.lambda(i) == R(lambda[i]));
        CHECK(t.vartheta(i) == R(vartheta[i]));
    }
    CHECK(t.lambda.sum() == 311);
    CHECK(t.mu(idx(PartitionClass::O1)) == 311);
    CHECK(t.mu(idx(PartitionClass::O6)) == 0);
    CHECK(t.gamma(5) == 0);
    CHECK(t.eps_offset == std::array<int, 6>{-1, 0, 0, 0, 0, 1});
    CHECK(t.epsfac(0) == R(311 * 311));
}

TEST_CASE("closed-form matrices at (3,3,7), k = 2")
{
    const GraphParams p{3, 3, 7};
    const RatMatrix6 C = closed_form_C(p, 2);
    for (int i = 0; i < 6; ++i) CHECK(C.row(i).sum() == 103);
    const RatMatrix6 top = closed_form_D(p, 2, 4);
    // single entry (q^D - q^{k+1})(q^{N-D} - q^{k+1})/(q-1) = 0 here since k+1 = D
    CHECK(is_zero(top));
    CHECK(closed_form_D(p, 2, 1)(0, 0) == 4);
    CHECK(closed_form_G(p, 2) == closed_form_G_transposed_form(p, 2));
    CHECK_THROWS_AS(closed_form_D(p, 2, 5), InvalidParameters);

    const GraphParams p4{3, 4, 9};
    const RatMatrix6 top4 = closed_form_D(p4, 2, 4);
    CHECK(top4(5, 5) == Rational((81 - 27) * (243 - 27) / 2));
    int nonzero = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) nonzero += top4(i, j) != 0;
    CHECK(nonzero == 1);
}

TEST_CASE("every closed-form identity holds across configurations")
{
    for (const auto& p : kConfigs) {
        for (const auto& r : verify_parameters(p)) {
            INFO(r.name, " ", to_json(r, false).dump());
            CHECK(r.status == Status::pass);
        }
        for (int k = 2; k <= p.D - 1; ++k) {
            const ClosedForms cf = evaluate_closed_forms(p, k);
            const auto results = verify_closed_form_identities(cf);
            CHECK(results.size() >= 14);
            for (const auto& r : results) {
                INFO(p.q, ",", p.D, ",", p.N, " k=", k, " ", r.name, " ", to_json(r, false).dump());
                CHECK(r.status == Status::pass);
            }
        }
    }
}

TEST_CASE("perturbing H(1,1) to 2 breaks C H = H diag(vartheta) at a named entry")
{
    ClosedForms cf = evaluate_closed_forms({3, 3, 7}, 2);
    apply_perturbation(cf, parse_perturbation("H:1:1:1"));
    CHECK(cf.mats.H(0, 0) == 2);
    const auto results = verify_closed_form_identities(cf);
    const CheckResult* r = find_result(results, "cf-h-eigenvectors");
    REQUIRE(r != nullptr);
    CHECK(r->status == Status::fail);
    REQUIRE(r->witness.contains("failures"));
    const auto& w = r->witness["failures"][0];
    CHECK(w["i"].get<int>() >= 1);
    CHECK(w["j"].get<int>() == 1);
}

TEST_CASE("every single-entry perturbation of C, H, lambda, mu is detected")
{
    const ClosedForms base = evaluate_closed_forms({3, 3, 7}, 2);
    for (const std::string table : {"C", "H", "lambda", "mu"}) {
        const bool vector_table = table == "lambda" || table == "mu";
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= (vector_table ? 1 : 6); ++j) {
                ClosedForms cf = base;
                apply_perturbation(cf, Perturbation{table, i, j, Rational(1, 7)});
                int failed = 0;
                for (const auto& r : verify_closed_form_identities(cf)) failed += r.failed();
                INFO(table, " ", i, ",", j);
                CHECK(failed > 0);
            }
    }
}

TEST_CASE("perturbation parsing")
{
    const Perturbation a = parse_perturbation("C:2:3:-1/2");
    CHECK(a.table == "C");
    CHECK(a.i == 2);
    CHECK(a.j == 3);
    CHECK(a.delta == Rational(-1, 2));
    const Perturbation b = parse_perturbation("mu:4:5");
    CHECK(b.i == 4);
    CHECK(b.delta == 5);
    CHECK_THROWS(parse_perturbation("C"));
    ClosedForms cf = evaluate_closed_forms({3, 3, 7}, 2);
    CHECK_THROWS(apply_perturbation(cf, parse_perturbation("Z:1:1:1")));
    CHECK_THROWS(apply_perturbation(cf, parse_perturbation("C:7:1:1")));
}
