// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
// exact (tolerance zero); the time budgets are reported but not gating.

#include "bsc/dense_space.hpp"
#include "bsc/heavy.hpp"
#include "bsc/norton.hpp"
#include "bsc/parallel.hpp"
#include "bsc/runner.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

using namespace bsc;

namespace {

// Exact comparison only; nothing in this suite is approximate.
constexpr int kTolerance = 0;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) detail << what;
        ok = ok && cond;
    }
};

const GraphParams kBase{3, 3, 7};

// Quotient and distance matrices at (3,3,7), k = 2, evaluated by hand from the
// general displays (independent of the library's closed-form code).
const std::int64_t kC337[6][6] = {{4, 4, 5, 72, 18, 0}, {6, 1, 6, 72, 18, 0}, {5, 4, 4, 72, 18, 0},
                                  {3, 2, 3, 77, 0, 18}, {3, 2, 3, 0, 23, 72}, {0, 0, 0, 8, 8, 87}};
const std::int64_t kD337[5][6][6] = {
    {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}},
    {{4, 4, 5, 72, 18, 0}, {6, 3, 3, 0, 0, 0}, {5, 2, 5, 0, 0, 0}, {3, 0, 0, 9, 0, 0}, {3, 0, 0, 0, 9, 0}, {0, 0, 0, 0, 0, 0}},
    {{7, 4, 7, 216, 54, 648}, {6, 5, 9, 288, 72, 0}, {7, 6, 7, 288, 72, 0}, {9, 8, 12, 279, 18, 54}, {9, 8, 12, 72, 63, 216}, {12, 0, 0, 24, 24, 57}},
    {{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 648}, {0, 0, 0, 0, 0, 648}, {0, 0, 0, 0, 54, 594}, {0, 0, 0, 216, 0, 432}, {0, 8, 12, 264, 48, 591}},
    {{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}}};

struct Config {
    GraphParams p;
    int k;
    ClosedForms cf;
    LocalContext ctx;
    std::optional<AtomGram> atoms;
    const AtomGram& gram()
    {
        if (!atoms) atoms = build_atom_gram(ctx);
        return *atoms;
    }
};

Config& config(const GraphParams& p, int k)
{
    static std::map<std::tuple<int, int, int, int>, std::unique_ptr<Config>> cache;
    auto& slot = cache[{p.q, p.D, p.N, k}];
    if (!slot) {
        const auto [x, y] = canonical_pair(p, k);
        slot.reset(new Config{p, k, evaluate_closed_forms(p, k), LocalContext::build(p, x, y, CrossTableMode::memory, default_thread_count()), {}});
    }
    return *slot;
}

void require_checks(Outcome& o, const std::vector<CheckResult>& rs)
{
    for (const auto& r : rs) o.require(r.status == Status::pass, "check " + r.name + " is " + to_string(r.status) + "; ");
}

std::string cfg_name(const GraphParams& p, int k)
{
    return "(" + std::to_string(p.q) + "," + std::to_string(p.D) + "," + std::to_string(p.N) + ") k=" + std::to_string(k);
}

void criterion1(Outcome& o)
{
    const GraphParams& p = kBase;
    const Spectrum s = spectrum(p);
    const std::vector<Rational> theta{1040, 311, 68, -13};
    o.require(s.theta == theta, "theta differs; ");
    o.require(valency(p) == 1040, "kappa differs; ");
    o.require(intersection_numbers(p, 1).a == 103, "a1 differs; ");
    o.require(s.theta_star.size() >= 1 && s.theta_star[0] == 1040, "dim EV differs; ");
    o.require(krein_q111(p) == 103, "q^1_11 differs; ");
    // three-term relation from scratch, theta* taken equal to theta (formally self-dual)
    for (int i = 0; i <= p.D; ++i) {
        const auto in = intersection_numbers(p, i);
        const Rational lhs = (i > 0 ? theta[i - 1] * in.c : Rational(0)) + theta[i] * in.a + (i < p.D ? theta[i + 1] * in.b : Rational(0));
        o.require(lhs == theta[1] * theta[i], "three-term relation fails at i=" + std::to_string(i) + "; ");
    }
    require_checks(o, verify_parameters(p));
}

void criterion2(Outcome& o)
{
    const BfsAuditReport r = bfs_distance_audit(kBase);
    o.require(r.vertices == 531441 && r.visited == 531441, "not every vertex visited; ");
    o.require(r.rank_mismatches == 0, "rank differs from BFS distance: " + r.first_mismatch.dump() + "; ");
    const std::vector<std::uint64_t> sizes{1, 1040, 81120, 449280};
    o.require(r.sphere_sizes == sizes, "sphere sizes differ; ");
    for (int i = 0; i <= kBase.D; ++i)
        o.require(i < static_cast<int>(r.sphere_sizes.size()) && BigInt(r.sphere_sizes[i]) == sphere_size(kBase, i), "sphere size vs b/c; ");
}

void criterion3_at(Outcome& o, const GraphParams& p, int k, bool pinned)
{
    Config& c = config(p, k);
    o.require(c.ctx.kappa() == static_cast<std::size_t>(valency(p)), "kappa; ");
    std::size_t covered = 0;
    for (int i = 0; i < 6; ++i) covered += c.ctx.class_x(i).size();
    o.require(covered == c.ctx.kappa(), "unclassified vertices; ");
    for (int i = 0; i < 6; ++i) {
        o.require(Rational(c.ctx.class_x(i).size()) == c.cf.mats.osize(i), "class size O" + std::to_string(i + 1) + "; ");
        o.require(c.ctx.class_y(i).size() == c.ctx.class_x(i).size(), "primed class size; ");
    }
    if (pinned) {
        const std::array<std::size_t, 6> sizes{12, 8, 12, 288, 72, 648};
        for (int i = 0; i < 6; ++i) o.require(c.ctx.class_x(i).size() == sizes[i], "pinned class size; ");
    }
    const IntMatrix6 C = empirical_C(c.ctx);
    const auto D = empirical_D(c.ctx);  // throws if a row count is not constant over O_i
    o.require(D.size() == 5, "D family size; ");
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            o.require(Rational(C(i, j)) == c.cf.mats.C(i, j), "C vs closed form; ");
            if (pinned) o.require(C(i, j) == kC337[i][j], "C vs display at " + std::to_string(i + 1) + "," + std::to_string(j + 1) + "; ");
            for (int l = k - 2; l <= k + 2; ++l) {
                o.require(Rational(D.at(l)(i, j)) == c.cf.mats.Dmat.at(l)(i, j), "D vs closed form; ");
                if (pinned) o.require(D.at(l)(i, j) == kD337[l - k + 2][i][j], "D(" + std::to_string(l) + ") vs display; ");
            }
        }
    o.require(empirical_C_y_side(c.ctx) == C, "y-side quotient differs; ");
    require_checks(o, verify_partition(c.ctx, c.cf));
    if (p.vertex_count() > BigInt(kMaxAuditVertices)) require_checks(o, {rank_metric_spot_checks(c.ctx, 20, 1)});
}

void criterion4(Outcome& o)
{
    Config& c = config(kBase, 2);
    const auto rep = local_spectrum(c.ctx);
    o.require(rep.has_value(), "local spectrum not computed; ");
    if (!rep) return;
    o.require(rep->annihilator_zero, "annihilator product is nonzero; ");
    const std::array<Rational, 5> mult{1, 12, 39, 520, 468};
    o.require(rep->multiplicities == mult, "multiplicities differ; ");
    const std::array<Rational, 5> eig{103, 77, 23, -1, -3};
    o.require(rep->eigenvalues == eig, "eigenvalues differ; ");
}

void criterion5_at(Outcome& o, const GraphParams& p, int k, bool pinned)
{
    Config& c = config(p, k);
    const AtomGram& ag = c.gram();
    const auto& lambda = c.cf.scalars.lambda;
    Rational total = 0;
    for (int i = 0; i < 6; ++i) {
        const AtomVector v = atom_class(i) - atom_class_prime(i) - lambda(i) * (atom_x_hat() - atom_y_hat());
        o.require(ag.norm2(v) == kTolerance, "norm not zero at i=" + std::to_string(i + 1) + "; ");
        total += lambda(i);
    }
    o.require(total == spectrum(p).theta[1], "sum of lambda is not theta_1; ");
    if (pinned) {
        const std::array<long, 6> want{0, 2, 3, 72, 18, 216};
        for (int i = 0; i < 6; ++i) o.require(lambda(i) == want[i], "lambda pinned; ");
        o.require(total == 311, "sum 311; ");
    }
    // the lambda used above must also be recoverable from the counted data alone
    const AtomVector d = atom_x_hat() - atom_y_hat();
    for (int i = 0; i < 6; ++i) {
        const Rational l = ag.inner(atom_class(i) - atom_class_prime(i), d) / ag.norm2(d);
        o.require(l == lambda(i), "counted lambda differs; ");
    }
}

void criterion6_at(Outcome& o, const GraphParams& p, int k)
{
    const SModel m = build_s_model(evaluate_closed_forms(p, k));
    const auto& t = m.scalars;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Rational want = i == j ? t.epsfac(j) * t.eta(j) / m.X : Rational(0);
            o.require(s_inner(m, m.h[i], m.h[j]) == want, "Gram of h; ");
        }
    for (int j = 0; j < 6; ++j) o.require(m.h[j] - m.hprime[j] == t.mu(j) * m.asym(), "h - h'; ");
    Rational gm = 0;
    for (int j = 0; j < 6; ++j) gm += t.gamma(j) * t.mu(j);
    o.require(gm == -1, "sum gamma mu; ");
    // Sym = orthogonal complement of x - y; build a basis and check dimensions and orthogonality
    std::vector<SVector> sym;
    for (int i = 0; i < 6; ++i) {
        const SymAsym d = decompose(m, m.O[i]);
        o.require(d.sym + d.asym == m.O[i], "decomposition does not sum; ");
        o.require(s_inner(m, d.sym, m.asym()) == 0, "sym part not orthogonal; ");
        sym.push_back(d.sym);
    }
    o.require(s_rank(m, sym) == 5, "dim Sym; ");
    o.require(s_rank(m, {m.asym()}) == 1, "dim ASym; ");
    std::vector<SVector> hv(m.hvee.begin() + 1, m.hvee.end());
    o.require(s_rank(m, hv) == 5, "rank of h-vee 2..6; ");
    for (const auto& v : hv) o.require(s_inner(m, v, m.asym()) == 0, "h-vee not symmetric; ");
    require_checks(o, verify_s_model(m));
}

void criterion7_at(Outcome& o, const GraphParams& p, int k, bool pinned)
{
    const NortonOps ops = build_norton_ops(build_s_model(evaluate_closed_forms(p, k)));
    const SModel& m = ops.model;
    for (int j = 0; j < 6; ++j) o.require(ops.star_x(m.h[j]) == m.scalars.vartheta(j) / m.X * m.h[j], "Lx h_j; ");
    const Rational w = Rational(-p.q) / m.X;
    o.require(ops.star_x(m.omega) == w * m.omega && ops.star_y(m.omega) == w * m.omega, "omega eigenvalue; ");
    if (pinned) o.require(w == Rational(-3, 531441), "pinned omega eigenvalue; ");
    const auto s = sym_star_asym_scalars(p, k);
    Rational total = 0;
    for (int j = 0; j < 6; ++j) {
        const SVector lhs = ops.star_x(m.ovee[j]) - ops.star_y(m.ovee[j]);  // O-vee_j * (x - y)
        o.require(lhs == s[j] / m.X * m.asym(), "SymStarASym j=" + std::to_string(j + 1) + "; ");
        total += s[j];
    }
    o.require(total == 0, "SymStarASym scalars do not sum to zero; ");
    if (pinned) o.require(s[3] / m.X == Rational(648, 1594323), "pinned s_4; ");
    std::vector<SVector> fx{m.y}, fy{m.x}, fb;
    for (int n = 1; n < 5; ++n) {
        fx.push_back(ops.star_x(fx.back()));
        fy.push_back(ops.star_y(fy.back()));
    }
    const SVector B = m.x + m.y;
    fb.push_back(B);
    for (int n = 1; n < 4; ++n) fb.push_back(ops.star_b(fb.back()));
    o.require(s_rank(m, fx) == 5 && s_rank(m, fy) == 5 && s_rank(m, fb) == 4, "generated family ranks; ");
    for (const auto& v : fx) o.require(s_inner(m, v, m.omega) == 0, "x family leaves omega-perp; ");
    for (const auto& v : fb) o.require(s_inner(m, v, m.omega) == 0 && s_inner(m, v, m.asym()) == 0, "B family; ");
    require_checks(o, verify_norton_identities(ops));
    require_checks(o, verify_omega(ops));
    require_checks(o, verify_generation(ops));
}

void criterion8_at(Outcome& o, const GraphParams& p, int k)
{
    const NortonOps ops = build_norton_ops(build_s_model(evaluate_closed_forms(p, k)));
    const SModel& m = ops.model;
    // independent enumeration: every word and its bar, checked against x - y directly
    long pairs = 0;
    for (int n = 1; n <= 10; ++n)
        for (long bits = 0; bits < (1L << n); ++bits) {
            std::string w, wb;
            for (int i = 0; i < n; ++i) {
                const bool one = (bits >> i) & 1;
                w += one ? 'y' : 'x';
                wb += one ? 'x' : 'y';
            }
            const SVector d = ops.word(w) - ops.word(wb);
            const SVector a = m.asym();
            // d is parallel to a iff d - (<d,a>/<a,a>) a = 0
            const SVector r = d - s_inner(m, d, a) / s_inner(m, a, a) * a;
            o.require(r == SVector::Zero(), "word " + w + "; ");
            ++pairs;
        }
    o.require(pairs == 2046, "word count; ");
    const auto rs = bbalanced_word_check(ops, 10);
    require_checks(o, rs);
    const CheckResult* r = find_result(rs, "thm-bbalanced");
    o.require(r && r->witness.contains("words") && r->witness["words"] == 2046, "library word count; ");
}

void criterion9(Outcome& o)
{
    const GraphParams p{3, 4, 9};
    o.require(valency(p) == 9680, "kappa 9680; ");
    o.require(p.vertex_count() > BigInt(kMaxAuditVertices), "BFS should be out of range; ");
    const auto bfs = bfs_audit_checks(p);
    for (const auto& r : bfs) o.require(r.status == Status::skipped, "BFS not skipped; ");
    for (int k : {2, 3}) {
        Outcome sub;
        criterion3_at(sub, p, k, false);
        criterion5_at(sub, p, k, false);
        criterion6_at(sub, p, k);
        criterion7_at(sub, p, k, false);
        criterion8_at(sub, p, k);
        o.require(sub.ok, cfg_name(p, k) + ": " + sub.detail.str());
        std::cerr << "  " << cfg_name(p, k) << (sub.ok ? " ok" : " failed") << std::endl;
    }
}

void criterion10(Outcome& o)
{
    Config& c = config(kBase, 2);
    const NortonOps ops = build_norton_ops(build_s_model(c.cf));
    const SModel& m = ops.model;
    const HeavyOracle oracle = HeavyOracle::for_atoms(c.ctx);
    const AtomVector x = atom_x_hat(), y = atom_y_hat();
    const SVector lxy = ops.star_x(m.y);
    for (int j = 0; j < 5; ++j) {
        const SVector t = m.h[j] + m.O[(j + 2) % 6];
        o.require(oracle.triple(x, y, lift(t)) == s_inner(m, lxy, t), "calibration with t" + std::to_string(j + 1) + "; ");
    }
    o.require(oracle.triple(x, y, x - y) == 0, "E x * E y not symmetric; ");
    for (const auto& r : heavy_checks(ops, oracle, 1)) o.require(r.status == Status::pass, "check " + r.name + "; ");
}

void criterion11(Outcome& o)
{
    const ClosedForms base = evaluate_closed_forms(kBase, 2);
    int perturbations = 0;
    for (const std::string table : {"C", "H", "lambda", "mu"}) {
        const bool vec = table == "lambda" || table == "mu";
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= (vec ? 1 : 6); ++j) {
                ClosedForms cf = base;
                apply_perturbation(cf, Perturbation{table, i, j, Rational(1)});
                std::vector<CheckResult> rs = verify_closed_form_identities(cf);
                try {
                    const SModel m = build_s_model(cf);
                    const auto s = verify_s_model(m);
                    rs.insert(rs.end(), s.begin(), s.end());
                    const auto e = verify_e_identities(config(kBase, 2).gram(), cf);
                    rs.insert(rs.end(), e.begin(), e.end());
                } catch (const std::exception&) {
                    // singular swap map; the closed-form suite must still name a failing check
                }
                bool named = false;
                for (const auto& r : rs) named = named || (r.failed() && !r.name.empty() && !r.witness.is_null());
                o.require(named, table + ":" + std::to_string(i) + ":" + std::to_string(j) + " undetected; ");
                ++perturbations;
            }
    }
    o.require(perturbations == 84, "perturbation count; ");
    // and end to end through the runner
    RunConfig rc;
    rc.checks = {"params", "e", "s", "norton"};
    rc.perturbations = {parse_perturbation("lambda:4:1")};
    o.require(run(rc).exit_code == 1, "runner did not fail on a perturbed lambda; ");
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<void(Outcome&)> body;
    };
    const std::vector<Criterion> criteria{
        {1, "parameter suite at (3,3,7)", 1, criterion1},
        {2, "BFS rank-metric audit at (3,3,7)", 300, criterion2},
        {3, "partition suite at (3,3,7) k=2", 120, [](Outcome& o) { criterion3_at(o, kBase, 2, true); }},
        {4, "local spectrum at (3,3,7)", 180, criterion4},
        {5, "strengthened balanced set condition at (3,3,7) k=2", 120, [](Outcome& o) { criterion5_at(o, kBase, 2, true); }},
        {6, "S-model identities at (3,3,7) k=2", 60, [](Outcome& o) { criterion6_at(o, kBase, 2); }},
        {7, "Norton suite at (3,3,7) k=2", 10, [](Outcome& o) { criterion7_at(o, kBase, 2, true); }},
        {8, "word check up to length 10 at (3,3,7) k=2", 10, [](Outcome& o) { criterion8_at(o, kBase, 2); }},
        {9, "criteria 3, 5-8 at (3,4,9) k=2,3", 2700, criterion9},
        {10, "heavy-mode calibration at (3,3,7) k=2", 1800, criterion10},
        {11, "negative controls", 60, criterion11},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char timing[96];
        std::snprintf(timing, sizeof timing, "%.1fs, budget %.0fs%s", s, c.budget_s, s > c.budget_s ? " exceeded" : "");
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << timing << ")";
        if (!o.ok) std::cout << " -- " << o.detail.str();
        std::cout << std::endl;
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
