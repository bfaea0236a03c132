#include "bsc/e_oracle.hpp"

#include "bsc/parallel.hpp"

#include <random>
#include <set>

namespace bsc {

void VertexSum::add(const MatVertex& v, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(v, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

VertexSum VertexSum::single(const MatVertex& v, const Rational& c)
{
    VertexSum s;
    s.add(v, c);
    return s;
}

VertexSum& VertexSum::operator+=(const VertexSum& o)
{
    for (const auto& [v, c] : o.terms_) add(v, c);
    return *this;
}

VertexSum& VertexSum::operator-=(const VertexSum& o)
{
    for (const auto& [v, c] : o.terms_) add(v, -c);
    return *this;
}

VertexSum& VertexSum::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [v, coeff] : terms_) coeff *= c;
    return *this;
}

namespace {

struct Group {
    Rational coeff;
    std::vector<const MatVertex*> members;
};

std::vector<Group> group_by_coefficient(const VertexSum& s)
{
    std::map<Rational, std::size_t> index;
    std::vector<Group> out;
    for (const auto& [v, c] : s.terms()) {
        auto [it, inserted] = index.try_emplace(c, out.size());
        if (inserted) out.push_back({c, {}});
        out[it->second].members.push_back(&v);
    }
    return out;
}

}  // namespace

Rational e_inner(const GraphParams& p, const VertexSum& u, const VertexSum& v, int threads)
{
    if (u.empty() || v.empty()) return 0;
    const PrimeField f(p.q);
    const Spectrum s = spectrum(p);
    const auto gu = group_by_coefficient(u), gv = group_by_coefficient(v);
    Rational total = 0;
    for (const Group& a : gu)
        for (const Group& b : gv) {
            const std::size_t blocks = block_count(a.members.size(), threads);
            std::vector<std::vector<std::int64_t>> hist(blocks, std::vector<std::int64_t>(p.D + 1, 0));
            parallel_blocks(a.members.size(), threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i)
                    for (const MatVertex* y : b.members) ++hist[w][rank_distance(f, *a.members[i], *y)];
            });
            Rational pair_sum = 0;
            for (int d = 0; d <= p.D; ++d) {
                std::int64_t n = 0;
                for (const auto& h : hist) n += h[d];
                if (n) pair_sum += Rational(n) * s.theta_star[d];
            }
            total += a.coeff * b.coeff * pair_sum;
        }
    return total / Rational(p.vertex_count());
}

bool e_norm_zero(const GraphParams& p, const VertexSum& u, int threads)
{
    return e_inner(p, u, u, threads) == 0;
}

RatMatrixX gram(const GraphParams& p, const std::vector<VertexSum>& vs, int threads)
{
    const Eigen::Index n = static_cast<Eigen::Index>(vs.size());
    RatMatrixX g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) g(i, j) = g(j, i) = e_inner(p, vs[i], vs[j], threads);
    return g;
}

AtomVector atom_unit(int atom)
{
    AtomVector v = AtomVector::Zero();
    v(atom) = 1;
    return v;
}
AtomVector atom_x_hat() { return atom_unit(atom_x); }
AtomVector atom_y_hat() { return atom_unit(atom_y); }
AtomVector atom_class(int i) { return atom_unit(atom_O + i); }
AtomVector atom_class_prime(int i) { return atom_unit(atom_Oprime + i); }

Rational AtomGram::inner(const AtomVector& u, const AtomVector& v) const
{
    return (u.transpose() * scaled * v)(0, 0) / Rational(vertex_count);
}

AtomGram build_atom_gram(const LocalContext& ctx)
{
    const GraphParams& p = ctx.params();
    const int k = ctx.k();
    const std::size_t n = ctx.kappa();
    const int nd = p.D + 1;
    AtomGram ag;
    ag.params = p;
    ag.k = k;
    ag.vertex_count = p.vertex_count();
    auto& H = ag.hist;
    H.assign(kAtoms, std::vector<std::vector<std::int64_t>>(kAtoms, std::vector<std::int64_t>(nd, 0)));
    auto sz = [&](bool x_side, int c) { return static_cast<std::int64_t>((x_side ? ctx.class_x(c) : ctx.class_y(c)).size()); };

    H[atom_x][atom_x][0] = H[atom_y][atom_y][0] = 1;
    H[atom_x][atom_y][k] = 1;
    for (int c = 0; c < 6; ++c) {
        H[atom_x][atom_O + c][1] = sz(true, c);
        H[atom_y][atom_Oprime + c][1] = sz(false, c);
        for (std::uint32_t i : ctx.class_y(c)) ++H[atom_x][atom_Oprime + c][ctx.dist_y_side(i)];
        for (std::uint32_t i : ctx.class_x(c)) ++H[atom_y][atom_O + c][ctx.dist_x_side(i)];
    }
    // Within one neighbourhood distances are 0, 1 or 2; both sides share the local graph.
    for (int side = 0; side < 2; ++side) {
        const bool xs = side == 0;
        const int base = xs ? atom_O : atom_Oprime;
        for (int a = 0; a < 6; ++a)
            for (std::uint32_t i : xs ? ctx.class_x(a) : ctx.class_y(a)) {
                std::array<std::int64_t, 6> adj{};
                for (std::uint32_t j : ctx.local_adjacency()[i]) ++adj[xs ? ctx.label_x(j) : ctx.label_y(j)];
                for (int b = 0; b < 6; ++b) {
                    const std::int64_t same = a == b ? 1 : 0;
                    H[base + a][base + b][0] += same;
                    H[base + a][base + b][1] += adj[b];
                    H[base + a][base + b][2] += sz(xs, b) - same - adj[b];
                }
            }
    }
    {
        const std::size_t blocks = block_count(n, ctx.threads());
        std::vector<std::vector<std::int64_t>> part(blocks, std::vector<std::int64_t>(36 * nd, 0));
        parallel_blocks(n, ctx.threads(), [&](std::size_t w, std::size_t begin, std::size_t end) {
            auto& h = part[w];
            for (std::size_t i = begin; i < end; ++i) {
                const int a = ctx.label_x(i);
                for (std::size_t j = 0; j < n; ++j) ++h[(a * 6 + ctx.label_y(j)) * nd + ctx.cross_distance(i, j)];
            }
        });
        for (const auto& h : part)
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b)
                    for (int d = 0; d < nd; ++d) H[atom_O + a][atom_Oprime + b][d] += h[(a * 6 + b) * nd + d];
    }
    for (int a = 0; a < kAtoms; ++a)
        for (int b = 0; b < a; ++b) {
            if (H[a][b] == std::vector<std::int64_t>(nd, 0)) H[a][b] = H[b][a];
            else H[b][a] = H[a][b];
        }

    const Spectrum s = spectrum(p);
    for (int a = 0; a < kAtoms; ++a)
        for (int b = 0; b < kAtoms; ++b) {
            Rational v = 0;
            for (int d = 0; d < nd; ++d)
                if (H[a][b][d]) v += Rational(H[a][b][d]) * s.theta_star[d];
            ag.scaled(a, b) = v;
        }
    return ag;
}

VertexSum lift_atoms(const LocalContext& ctx, const AtomVector& u)
{
    VertexSum s;
    s.add(ctx.x(), u(atom_x));
    s.add(ctx.y(), u(atom_y));
    for (int c = 0; c < 6; ++c) {
        if (u(atom_O + c) != 0)
            for (std::uint32_t i : ctx.class_x(c)) s.add(ctx.neighbor_x(i), u(atom_O + c));
        if (u(atom_Oprime + c) != 0)
            for (std::uint32_t i : ctx.class_y(c)) s.add(ctx.neighbor_y(i), u(atom_Oprime + c));
    }
    return s;
}

namespace {

using AtomColumns = Eigen::Matrix<Rational, kAtoms, Eigen::Dynamic>;

json rat(const Rational& r) { return to_string(r); }

AtomVector class_combination(const RatMatrix6& M, int j, bool prime)
{
    AtomVector v = AtomVector::Zero();
    for (int i = 0; i < 6; ++i) v((prime ? atom_Oprime : atom_O) + i) = M(i, j);
    return v;
}

void require_zero_norm(CheckBuilder& b, const AtomGram& ag, const AtomVector& u, json label)
{
    const Rational n2 = ag.norm2(u);
    if (n2 != 0) label["norm2"] = rat(n2);
    b.require(n2 == 0, label);
}

Eigen::Index atom_rank(const AtomGram& ag, const std::vector<AtomVector>& vs)
{
    AtomColumns cols(kAtoms, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t c = 0; c < vs.size(); ++c) cols.col(static_cast<Eigen::Index>(c)) = vs[c];
    return gram_rank(ag.scaled, cols);
}

}  // namespace

std::vector<CheckResult> verify_e_identities(const AtomGram& ag, const ClosedForms& cf)
{
    const GraphParams& p = ag.params;
    const int k = ag.k;
    const Spectrum& s = cf.spec;
    const ScalarTables& t = cf.scalars;
    const RatMatrix6& H = cf.mats.H;
    const Rational X(ag.vertex_count);
    const Rational qk1 = rpow(p.q, 1 - k);
    const AtomVector x = atom_x_hat(), y = atom_y_hat(), a = x - y;
    std::vector<AtomVector> O(6), Op(6), Ov(6), h(6), hp(6), hv(6);
    for (int i = 0; i < 6; ++i) {
        O[i] = atom_class(i);
        Op[i] = atom_class_prime(i);
        Ov[i] = O[i] - t.lambda(i) * x;
    }
    for (int j = 0; j < 6; ++j) {
        h[j] = class_combination(H, j, false);
        hp[j] = class_combination(H, j, true);
        hv[j] = h[j] - t.mu(j) * x;
    }
    std::vector<CheckResult> out;

    {
        CheckBuilder b("e-inner-basics", "<Ex,Ex> = theta*_0/|X|, <Ex,Ey> = theta*_k/|X|, Ex and Ey independent");
        b.require(ag.inner(x, x) == s.theta_star[0] / X, json{{"xx", rat(ag.inner(x, x))}});
        b.require(ag.inner(y, y) == s.theta_star[0] / X, json{{"yy", rat(ag.inner(y, y))}});
        b.require(ag.inner(x, y) == s.theta_star[k] / X, json{{"xy", rat(ag.inner(x, y))}});
        const Rational det = ag.inner(x, x) * ag.inner(y, y) - ag.inner(x, y) * ag.inner(x, y);
        b.require(det == (s.theta_star[0] * s.theta_star[0] - s.theta_star[k] * s.theta_star[k]) / (X * X) && det > 0,
                  json{{"det", rat(det)}});
        b.note("xy", rat(ag.inner(x, y)));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-osum", "theta_1 Ex = sum_i E O_i, and likewise for y and the O'_i");
        AtomVector u = s.theta[1] * x, v = s.theta[1] * y;
        for (int i = 0; i < 6; ++i) {
            u -= O[i];
            v -= Op[i];
        }
        require_zero_norm(b, ag, u, json{{"side", "x"}});
        require_zero_norm(b, ag, v, json{{"side", "y"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-y-in-S", "Ey + (1-q^{1-k})/(q-1) Ex - q^{1-k} E O_1 + q^{1-k} E O_2 = 0");
        const AtomVector xi = y + ((1 - qk1) / Rational(p.q - 1)) * x - qk1 * O[0] + qk1 * O[1];
        require_zero_norm(b, ag, xi, json{{"identity", "xi"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("s-dimension", "E O_1, ..., E O_6 are linearly independent (dim S = 6)");
        const Eigen::Index r = atom_rank(ag, O);
        b.require(r == 6, json{{"rank", r}});
        b.note("rank", r);
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("gram-matches-closed-form", "|X| <E O_i, E O_j> = G_ij = |X| <E O'_i, E O'_j>");
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const Rational g = X * ag.inner(O[i], O[j]), gp = X * ag.inner(Op[i], Op[j]);
                b.require(g == cf.mats.G(i, j), json{{"i", i + 1}, {"j", j + 1}, {"counted", rat(g)}, {"closed_form", rat(cf.mats.G(i, j))}});
                b.require(gp == g, json{{"i", i + 1}, {"j", j + 1}, {"prime", rat(gp)}, {"unprimed", rat(g)}});
            }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("thm-strengthened-bsc", "E O_i - E O'_i = lambda_i (Ex - Ey) for i = 1..6");
        json lam = json::array();
        Rational sum = 0;
        for (int i = 0; i < 6; ++i) {
            require_zero_norm(b, ag, O[i] - Op[i] - t.lambda(i) * a, json{{"i", i + 1}, {"lambda", rat(t.lambda(i))}});
            lam.push_back(rat(t.lambda(i)));
            sum += t.lambda(i);
        }
        b.require(sum == s.theta[1], json{{"lambda_sum", rat(sum)}, {"theta1", rat(s.theta[1])}});
        b.note("lambda", lam);
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("h-orthogonal", "<h_i, h_j> = delta_ij eps_j eta_j / |X| and likewise for h'_j");
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const Rational want = i == j ? t.epsfac(j) * t.eta(j) / X : Rational(0);
                const Rational g = ag.inner(h[i], h[j]), gp = ag.inner(hp[i], hp[j]);
                b.require(g == want, json{{"i", i + 1}, {"j", j + 1}, {"got", rat(g)}, {"expected", rat(want)}});
                b.require(gp == want, json{{"i", i + 1}, {"j", j + 1}, {"prime", true}, {"got", rat(gp)}, {"expected", rat(want)}});
            }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("h-minus-hprime", "h_j - h'_j = mu_j (Ex - Ey)");
        for (int j = 0; j < 6; ++j) require_zero_norm(b, ag, h[j] - hp[j] - t.mu(j) * a, json{{"j", j + 1}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("x-orth-h", "<Ex, h_1> = theta_1 eta_1 / |X|, <Ex, h_j> = 0 for j > 1, h_1 = theta_1 Ex");
        b.require(ag.inner(x, h[0]) == s.theta[1] * t.eta(0) / X, json{{"j", 1}, {"got", rat(ag.inner(x, h[0]))}});
        for (int j = 1; j < 6; ++j) b.require(ag.inner(x, h[j]) == 0, json{{"j", j + 1}, {"got", rat(ag.inner(x, h[j]))}});
        require_zero_norm(b, ag, h[0] - s.theta[1] * x, json{{"identity", "h1 - theta1 x"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("y-gamma-expansion", "Ey = sum_j gamma_j h_j");
        AtomVector u = y;
        for (int j = 0; j < 6; ++j) u -= t.gamma(j) * h[j];
        require_zero_norm(b, ag, u, json{{"identity", "y - sum gamma h"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("ovee-identities",
                       "sum_i E O^v_i = 0, Ex + Ey = q^{1-k}(E O^v_1 - E O^v_2), <E O^v_i, Ex - Ey> = 0");
        AtomVector sum = AtomVector::Zero();
        for (int i = 0; i < 6; ++i) sum += Ov[i];
        require_zero_norm(b, ag, sum, json{{"identity", "sum Ov"}});
        require_zero_norm(b, ag, x + y - qk1 * Ov[0] + qk1 * Ov[1], json{{"identity", "x + y"}});
        for (int i = 0; i < 6; ++i) b.require(ag.inner(Ov[i], a) == 0, json{{"i", i + 1}, {"inner", rat(ag.inner(Ov[i], a))}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("sym-asym-decomposition", "S = Sym(S) + ASym(S) orthogonally with dimensions 5 and 1");
        const Eigen::Index rs = atom_rank(ag, Ov);
        b.require(rs == 5, json{{"dim_sym", rs}});
        b.require(ag.norm2(a) != 0, json{{"asym", "zero"}});
        std::vector<AtomVector> all = Ov;
        all.push_back(a);
        const Eigen::Index r = atom_rank(ag, all);
        b.require(r == 6, json{{"dim_total", r}});
        b.note("dims", json::array({rs, 1}));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("hvee-identities", "h^v_1 = 0, Ex + Ey = sum_{j=2..5} gamma_j h^v_j, h^v_j = sum_i H_ij E O^v_i, "
                                          "h^v_2..h^v_6 a basis of Sym(S)");
        require_zero_norm(b, ag, hv[0], json{{"identity", "hv1"}});
        AtomVector u = x + y;
        for (int j = 1; j <= 4; ++j) u -= t.gamma(j) * hv[j];
        require_zero_norm(b, ag, u, json{{"identity", "x + y - sum gamma hv"}});
        for (int j = 0; j < 6; ++j) {
            AtomVector w = hv[j];
            for (int i = 0; i < 6; ++i) w -= H(i, j) * Ov[i];
            require_zero_norm(b, ag, w, json{{"identity", "hv vs H Ov"}, {"j", j + 1}});
        }
        const std::vector<AtomVector> basis(hv.begin() + 1, hv.end());
        const Eigen::Index r = atom_rank(ag, basis);
        b.require(r == 5, json{{"rank_hv2_to_hv6", r}});
        for (int j = 1; j < 6; ++j) b.require(ag.inner(hv[j], a) == 0, json{{"j", j + 1}, {"hv_not_sym", rat(ag.inner(hv[j], a))}});
        out.push_back(b.finish());
    }
    return out;
}

std::vector<CheckResult> verify_local_basis(const LocalContext& ctx, const ClosedForms& cf, std::uint64_t seed)
{
    const GraphParams& p = ctx.params();
    const Spectrum& s = cf.spec;
    const std::int64_t q = p.q;
    const Rational qD(ipow(p.q, p.D)), qM(ipow(p.q, p.N - p.D));
    const std::array<Rational, 4> etas{qM - q - 1, qD - q - 1, Rational(-1), Rational(-q)};
    std::vector<CheckResult> out;
    {
        CheckBuilder b("local-basis-scalars", "theta_1 theta*_1 != 0 and (theta*_1 - theta*_2)(eta + q + 1) != 0 "
                                              "for each nontrivial local eigenvalue eta");
        b.require(s.theta[1] * s.theta_star[1] != 0, json{{"theta1_thetastar1", "zero"}});
        json vals = json::array();
        for (const Rational& eta : etas) {
            const Rational v = (s.theta_star[1] - s.theta_star[2]) * (eta + q + 1);
            b.require(v != 0, json{{"eta", rat(eta)}});
            vals.push_back(rat(v));
        }
        b.note("thetastar1_minus_thetastar2", rat(s.theta_star[1] - s.theta_star[2]));
        b.note("values", vals);
        out.push_back(b.finish());
    }
    const char* f_anchor = "f(A) = J on the local graph, f of degree 4 with the nontrivial local eigenvalues as roots and f(a_1) = kappa";
    if (const auto rep = local_spectrum(ctx)) {
        CheckBuilder b("local-basis-f-of-A", f_anchor);
        b.require(rep->f_equals_J, rep->witness);
        out.push_back(b.finish());
    } else {
        out.push_back(make_skipped("local-basis-f-of-A", f_anchor,
                                   "local graph of size " + std::to_string(ctx.kappa()) + " exceeds the dense limit"));
    }
    {
        CheckBuilder b("local-basis-gram-spot", "the Gram matrix of E z for six random z in Gamma(x) is nonsingular");
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, ctx.kappa() - 1);
        std::set<std::size_t> chosen;
        while (chosen.size() < 6) chosen.insert(pick(rng));
        std::vector<VertexSum> vs;
        json idx = json::array();
        for (std::size_t i : chosen) {
            vs.push_back(VertexSum::single(ctx.neighbor_x(i)));
            idx.push_back(i);
        }
        const Rational det = exact_determinant(gram(p, vs));
        b.require(det != 0, json{{"indices", idx}});
        b.note("indices", idx);
        b.note("det", rat(det));
        out.push_back(b.finish());
    }
    return out;
}

}  // namespace bsc
