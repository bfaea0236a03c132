#include "bsc/heavy.hpp"

#include "bsc/parallel.hpp"

#include <map>
#include <random>

namespace bsc {

namespace {

json rat(const Rational& r) { return to_string(r); }

RatMatrixX column(const AtomVector& v)
{
    RatMatrixX c(kAtoms, 1);
    for (int i = 0; i < kAtoms; ++i) c(i, 0) = v(i);
    return c;
}

}  // namespace

HeavyOracle HeavyOracle::build(const GraphParams& p, const std::vector<std::vector<MatVertex>>& groups, int threads,
                               std::uint64_t limit)
{
    const DenseCodec codec(p, limit);
    const int rows = codec.rows();
    const int nd = p.D + 1;
    HeavyOracle o;
    o.params_ = p;
    o.groups_ = groups.size();
    o.theta_star_ = spectrum(p).theta_star;
    o.X_ = Rational(p.vertex_count());

    std::vector<std::uint32_t> member_rows, member_group;
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (const MatVertex& m : groups[g]) {
            std::vector<std::uint32_t> r(rows);
            codec.split(codec.encode(m), r.data());
            member_rows.insert(member_rows.end(), r.begin(), r.end());
            member_group.push_back(static_cast<std::uint32_t>(g));
        }
    const std::size_t members = member_group.size();
    const std::size_t width = groups.size() * nd;

    using SigMap = std::map<std::vector<std::uint32_t>, std::int64_t>;
    std::vector<SigMap> partial(block_count(codec.size(), threads));
    parallel_blocks(codec.size(), threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
        std::vector<std::uint32_t> zr(rows), counts(width);
        for (std::size_t z = begin; z < end; ++z) {
            codec.split(static_cast<std::uint32_t>(z), zr.data());
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t i = 0; i < members; ++i) {
                const int d = codec.rank_of(codec.sub_rows(zr.data(), member_rows.data() + i * rows));
                ++counts[member_group[i] * nd + d];
            }
            ++partial[w][counts];
        }
    });
    SigMap merged;
    for (auto& m : partial)
        for (auto& [k, v] : m) merged[k] += v;
    for (auto& [k, v] : merged) o.sigs_.push_back({k, v});
    return o;
}

HeavyOracle HeavyOracle::for_atoms(const LocalContext& ctx, std::uint64_t limit)
{
    std::vector<std::vector<MatVertex>> groups(kAtoms);
    groups[atom_x] = {ctx.x()};
    groups[atom_y] = {ctx.y()};
    for (int c = 0; c < 6; ++c) {
        for (std::uint32_t i : ctx.class_x(c)) groups[atom_O + c].push_back(ctx.neighbor_x(i));
        for (std::uint32_t i : ctx.class_y(c)) groups[atom_Oprime + c].push_back(ctx.neighbor_y(i));
    }
    return build(ctx.params(), groups, ctx.threads(), limit);
}

std::vector<Rational> HeavyOracle::values(const RatMatrixX& coeffs) const
{
    if (static_cast<std::size_t>(coeffs.rows()) != groups_) throw std::invalid_argument("coefficient vector length differs from the group count");
    const int nd = params_.D + 1;
    std::vector<Rational> out;
    out.reserve(sigs_.size());
    for (const auto& s : sigs_) {
        Rational f = 0;
        for (std::size_t g = 0; g < groups_; ++g) {
            if (coeffs(g, 0) == 0) continue;
            Rational inner = 0;
            for (int d = 0; d < nd; ++d)
                if (const auto c = s.counts[g * nd + d]) inner += Rational(static_cast<long>(c)) * theta_star_[d];
            f += coeffs(g, 0) * inner;
        }
        out.push_back(f / X_);
    }
    return out;
}

Rational HeavyOracle::triple(const RatMatrixX& u, const RatMatrixX& v, const RatMatrixX& w) const
{
    const auto fu = values(u), fv = values(v), fw = values(w);
    Rational total = 0;
    for (std::size_t s = 0; s < sigs_.size(); ++s)
        if (fu[s] != 0 && fv[s] != 0 && fw[s] != 0) total += Rational(sigs_[s].multiplicity) * fu[s] * fv[s] * fw[s];
    return total;
}

Rational HeavyOracle::triple(const AtomVector& u, const AtomVector& v, const AtomVector& w) const
{
    if (groups_ != kAtoms) throw std::invalid_argument("oracle was not built over the atoms");
    return triple(column(u), column(v), column(w));
}

Rational brute_triple(const GraphParams& p, const VertexSum& u, const VertexSum& v, const VertexSum& w, int threads)
{
    // one group per distinct coefficient triple
    std::map<MatVertex, std::array<Rational, 3>> coeff;
    const VertexSum* sums[3] = {&u, &v, &w};
    for (int s = 0; s < 3; ++s)
        for (const auto& [vx, c] : sums[s]->terms()) coeff[vx][s] = c;
    std::map<std::array<Rational, 3>, std::vector<MatVertex>> by_triple;
    for (const auto& [vx, c] : coeff) by_triple[c].push_back(vx);
    std::vector<std::vector<MatVertex>> groups;
    RatMatrixX cu(by_triple.size(), 1), cv(by_triple.size(), 1), cw(by_triple.size(), 1);
    Eigen::Index g = 0;
    for (auto& [c, members] : by_triple) {
        groups.push_back(std::move(members));
        cu(g, 0) = c[0];
        cv(g, 0) = c[1];
        cw(g, 0) = c[2];
        ++g;
    }
    if (groups.empty()) return 0;
    return HeavyOracle::build(p, groups, threads).triple(cu, cv, cw);
}

namespace {

const char* kAnchorCalib = "brute-force <E x * lift(y), lift(t)> equals <Lx y, t>_G for five test vectors t";
const char* kAnchorCross = "brute-force <E x * lift(s), lift(t)> equals <Lx s, t>_G for random s, t";
const char* kAnchorXXX = "sum_z f_x(z)^3 = q^1_{11} theta*_0 / |X|^2";
const char* kAnchorAdj = "<E x * E O_j, E O_i> = |X|^{-2} sum_l C_lj G_li";
const char* kAnchorPerm = "<u * v, w> is symmetric in its three arguments";
const char* kAnchorXY = "<E x * E y, E x - E y> = 0 (E x * E y in Sym(S))";
const char* kAnchorConj = "Sym(S) * Sym(S) in Sym(S): <E O^v_i * E O^v_j, E x - E y> = 0 for all i, j (necessary condition)";

std::vector<CheckResult> skipped_heavy(const std::string& reason)
{
    return {make_skipped("heavy-triple-xxx", kAnchorXXX, reason),
            make_skipped("heavy-triple-adjacency", kAnchorAdj, reason),
            make_skipped("heavy-triple-permutation", kAnchorPerm, reason),
            make_skipped("heavy-calibration-lx-y", kAnchorCalib, reason),
            make_skipped("heavy-cross-validation", kAnchorCross, reason),
            make_skipped("heavy-x-star-y-sym", kAnchorXY, reason)};
}

SVector random_svector(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    SVector v;
    for (int i = 0; i < 6; ++i) v(i) = Rational(num(rng), den(rng));
    return v;
}

}  // namespace

std::vector<CheckResult> heavy_checks(const NortonOps& ops, const HeavyOracle& o, std::uint64_t seed)
{
    const SModel& m = ops.model;
    const Rational& X = m.X;
    const AtomVector x = atom_x_hat(), y = atom_y_hat();
    std::vector<CheckResult> out;
    {
        CheckBuilder b("heavy-triple-xxx", kAnchorXXX);
        const Rational got = o.triple(x, x, x), want = Rational(krein_q111(m.params)) * m.spec.theta_star[0] / (X * X);
        b.require(got == want, json{{"got", rat(got)}, {"expected", rat(want)}});
        b.note("signatures", o.signature_count());
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("heavy-triple-adjacency", kAnchorAdj);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                Rational want = 0;
                for (int l = 0; l < 6; ++l) want += m.C(l, j) * m.G(l, i);
                want /= X * X;
                const Rational got = o.triple(x, atom_class(j), atom_class(i));
                b.require(got == want, json{{"i", i + 1}, {"j", j + 1}, {"got", rat(got)}, {"expected", rat(want)}});
            }
        out.push_back(b.finish());
    }
    std::mt19937_64 rng(seed);
    {
        CheckBuilder b("heavy-triple-permutation", kAnchorPerm);
        for (int s = 0; s < 3; ++s) {
            const AtomVector u = lift(random_svector(rng)) + atom_y_hat(), v = lift(random_svector(rng)),
                             w = lift(random_svector(rng)) + atom_class_prime(s);
            const Rational base = o.triple(u, v, w);
            const Rational perms[5] = {o.triple(u, w, v), o.triple(v, u, w), o.triple(v, w, u), o.triple(w, u, v), o.triple(w, v, u)};
            for (int k = 0; k < 5; ++k) b.require(perms[k] == base, json{{"sample", s}, {"permutation", k + 1}});
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("heavy-calibration-lx-y", kAnchorCalib);
        const SVector lxy = ops.star_x(m.y);
        for (int s = 0; s < 5; ++s) {
            const SVector t = random_svector(rng);
            const Rational model = s_inner(m, lxy, t), brute = o.triple(x, lift(m.y), lift(t));
            b.require(model == brute, json{{"t", s}, {"model", rat(model)}, {"brute", rat(brute)}});
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("heavy-cross-validation", kAnchorCross);
        for (int s = 0; s < 10; ++s) {
            const SVector u = random_svector(rng), t = random_svector(rng);
            const Rational model = s_inner(m, ops.star_x(u), t), brute = o.triple(x, lift(u), lift(t));
            b.require(model == brute, json{{"pair", s}, {"model", rat(model)}, {"brute", rat(brute)}});
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("heavy-x-star-y-sym", kAnchorXY);
        const Rational v = o.triple(x, y, x - y);
        b.require(v == 0, json{{"inner", rat(v)}});
        out.push_back(b.finish());
    }
    return out;
}

std::vector<CheckResult> conjecture_probe(const NortonOps& ops, const HeavyOracle& o)
{
    const SModel& m = ops.model;
    const AtomVector a = atom_x_hat() - atom_y_hat();
    const AtomVector w = lift(m.omega);
    CheckResult r;
    r.name = "conj-sym-star-sym";
    r.anchor = kAnchorConj;
    json rows = json::array();
    bool consistent = true;
    bool symmetric = true;
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
            const AtomVector ui = lift(m.ovee[i]), uj = lift(m.ovee[j]);
            const Rational va = o.triple(ui, uj, a), vw = o.triple(ui, uj, w);
            symmetric = symmetric && o.triple(uj, a, ui) == va && o.triple(a, ui, uj) == va;
            consistent = consistent && va == 0;
            rows.push_back(json{{"i", i + 1}, {"j", j + 1}, {"with_asym", rat(va)}, {"with_omega", rat(vw)}});
        }
    r.status = consistent && symmetric ? Status::consistent : Status::refuted;
    r.witness = json{{"pairs", rows}, {"permutation_symmetric", symmetric}};
    return {r};
}

std::vector<CheckResult> heavy_checks(const NortonOps& ops, const LocalContext& ctx, std::uint64_t seed)
{
    try {
        return heavy_checks(ops, HeavyOracle::for_atoms(ctx), seed);
    } catch (const InvalidParameters& e) {
        return skipped_heavy(e.what());
    }
}

std::vector<CheckResult> conjecture_probe(const NortonOps& ops, const LocalContext& ctx)
{
    try {
        return conjecture_probe(ops, HeavyOracle::for_atoms(ctx));
    } catch (const InvalidParameters& e) {
        CheckResult r = make_skipped("conj-sym-star-sym", kAnchorConj, e.what());
        return {r};
    }
}

}  // namespace bsc
