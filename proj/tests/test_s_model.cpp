#include <doctest.h>

#include "bsc/s_model.hpp"

using namespace bsc;

namespace {

const std::vector<std::pair<GraphParams, int>> kCases{{{3, 3, 7}, 2}, {{3, 4, 9}, 2}, {{3, 4, 9}, 3}, {{5, 3, 7}, 2},
                                                      {{3, 5, 11}, 3}, {{7, 4, 9}, 2}};

}  // namespace

TEST_CASE("coordinates at (3,3,7), k = 2")
{
    const SModel m = build_s_model(evaluate_closed_forms({3, 3, 7}, 2));
    for (int i = 0; i < 6; ++i) CHECK(m.x(i) == Rational(1, 311));
    CHECK(m.hvee[0].isZero());
    CHECK(m.omega == m.H.col(5));
    CHECK(s_inner(m, m.x, m.x) == Rational(1040, 531441));
    CHECK(s_inner(m, m.x, m.y) == Rational(68, 531441));
    const SymAsym d = decompose(m, m.asym());
    CHECK(d.sym.isZero());
    CHECK(d.asym == m.asym());
}

TEST_CASE("every S-model identity holds across configurations")
{
    for (const auto& [p, k] : kCases) {
        const SModel m = build_s_model(evaluate_closed_forms(p, k));
        for (const auto& r : verify_s_model(m)) {
            INFO(p.q, ",", p.D, ",", p.N, " k=", k, " ", r.name, " ", to_json(r, false).dump());
            CHECK(r.status == Status::pass);
        }
    }
}

TEST_CASE("decomposition is orthogonal and exact for random vectors")
{
    const SModel m = build_s_model(evaluate_closed_forms({3, 4, 9}, 3));
    for (int s = 0; s < 20; ++s) {
        SVector u;
        for (int i = 0; i < 6; ++i) u(i) = Rational((s * 7 + i * 3) % 11 - 5, 1 + (s + i) % 4);
        const SymAsym d = decompose(m, u);
        CHECK(d.sym + d.asym == u);
        CHECK(s_inner(m, d.sym, m.asym()) == 0);
        CHECK(decompose(m, d.sym).asym.isZero());
    }
}

TEST_CASE("the model agrees with counted inner products")
{
    const GraphParams p{3, 3, 7};
    const auto [x, y] = canonical_pair(p, 2);
    const auto ctx = LocalContext::build(p, x, y);
    const AtomGram ag = build_atom_gram(ctx);
    const SModel m = build_s_model(evaluate_closed_forms(p, 2));
    CHECK(verify_s_model_faithful(m, ag, 42).status == Status::pass);
}

TEST_CASE("perturbed closed forms are caught by the model checks")
{
    for (const char* spec : {"H:2:3:1", "lambda:4:1", "mu:3:1", "gamma:2:1", "G:1:2:1"}) {
        ClosedForms cf = evaluate_closed_forms({3, 3, 7}, 2);
        apply_perturbation(cf, parse_perturbation(spec));
        const SModel m = build_s_model(cf);
        int failed = 0;
        for (const auto& r : verify_s_model(m)) failed += r.failed();
        INFO(spec);
        CHECK(failed > 0);
    }
}

TEST_CASE("export is exact")
{
    const json j = export_s_model(build_s_model(evaluate_closed_forms({3, 3, 7}, 2)));
    CHECK(j["x"][0] == "1/311");
    CHECK(j["scalars"]["lambda"][5] == "216/1");
    CHECK(j["G"].size() == 6);
}
