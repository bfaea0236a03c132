#include <doctest.h>

#include "bsc/norton.hpp"

using namespace bsc;

namespace {

const std::vector<std::pair<GraphParams, int>> kCases{{{3, 3, 7}, 2}, {{3, 4, 9}, 2}, {{3, 4, 9}, 3}, {{5, 3, 7}, 2},
                                                      {{3, 5, 11}, 2}, {{3, 5, 11}, 4}, {{7, 3, 8}, 2}};

NortonOps ops_for(const GraphParams& p, int k) { return build_norton_ops(build_s_model(evaluate_closed_forms(p, k))); }

}  // namespace

TEST_CASE("operator basics at (3,3,7), k = 2")
{
    const NortonOps ops = ops_for({3, 3, 7}, 2);
    const SModel& m = ops.model;
    CHECK(ops.star_x(m.x) == (Rational(103) / m.X) * m.x);
    CHECK(ops.star_x(m.omega) == Rational(-3, 531441) * m.omega);
    CHECK(ops.word("x") == m.x);
    CHECK(ops.word("xy") == ops.word("yx"));
    CHECK(ops.word("xxy") == ops.star_x(ops.star_x(m.y)));
    CHECK_THROWS(ops.word(""));
    CHECK_THROWS(ops.word("xz"));
    const auto s = sym_star_asym_scalars({3, 3, 7}, 2);
    CHECK(s[3] / m.X == Rational(648, 1594323));
    Rational total = 0;
    for (const auto& v : s) total += v;
    // the O^v_j sum to zero, so the scalars do too
    CHECK(total == 0);
}

TEST_CASE("every Norton identity holds across configurations")
{
    for (const auto& [p, k] : kCases) {
        const NortonOps ops = ops_for(p, k);
        std::vector<CheckResult> all;
        for (auto part : {verify_norton_identities(ops), verify_omega(ops), verify_generation(ops), bbalanced_word_check(ops, 6)})
            all.insert(all.end(), part.begin(), part.end());
        for (const auto& r : all) {
            INFO(p.q, ",", p.D, ",", p.N, " k=", k, " ", r.name, " ", to_json(r, false).dump());
            CHECK(r.status == Status::pass);
        }
    }
}

TEST_CASE("all 2046 words up to length 10 at (3,3,7), k = 2")
{
    const auto results = bbalanced_word_check(ops_for({3, 3, 7}, 2), 10);
    REQUIRE(results.size() == 2);
    CHECK(results[0].name == "thm-bbalanced");
    CHECK(results[0].status == Status::pass);
    CHECK(results[0].witness["words"] == 2046);
    CHECK(results[1].status == Status::pass);
}

TEST_CASE("the word check sees a broken operator")
{
    NortonOps ops = ops_for({3, 3, 7}, 2);
    // Ly no longer the swap conjugate of Lx: some word must leave the span
    ops.Ly(0, 0) += Rational(1, 531441);
    const auto results = bbalanced_word_check(ops, 4);
    CHECK(results[0].status == Status::fail);
    CHECK(results[0].witness["failures"][0].contains("word"));
}

TEST_CASE("perturbed C is rejected or caught")
{
    for (int i = 1; i <= 6; ++i) {
        ClosedForms cf = evaluate_closed_forms({3, 3, 7}, 2);
        apply_perturbation(cf, Perturbation{"C", i, i, Rational(1)});
        const SModel m = build_s_model(cf);
        bool caught = false;
        try {
            const NortonOps ops = build_norton_ops(m);
            for (auto part : {verify_norton_identities(ops), verify_omega(ops), verify_generation(ops)})
                for (const auto& r : part) caught = caught || r.failed();
        } catch (const NortonInvariantError&) {
            caught = true;
        }
        INFO(i);
        CHECK(caught);
    }
}
