#include "bsc/norton.hpp"

namespace bsc {

namespace {

json rat(const Rational& r) { return to_string(r); }

json vec_json(const SVector& v)
{
    json a = json::array();
    for (int i = 0; i < 6; ++i) a.push_back(rat(v(i)));
    return a;
}

void require_equal(CheckBuilder& b, const SVector& got, const SVector& want, json label)
{
    if (got == want) return;
    label["got"] = vec_json(got);
    label["expected"] = vec_json(want);
    b.require(false, label);
}

bool in_asym(const SModel& m, const SVector& u)
{
    const SymAsym d = decompose(m, u);
    return d.sym.isZero();
}

bool in_sym(const SModel& m, const SVector& u)
{
    return s_inner(m, u, m.asym()) == 0;
}

}  // namespace

SVector NortonOps::word(const std::string& w) const
{
    if (w.empty()) throw std::invalid_argument("empty word");
    auto hat = [&](char c) -> const SVector& {
        if (c == 'x') return model.x;
        if (c == 'y') return model.y;
        throw std::invalid_argument(std::string("word letter must be x or y, got ") + c);
    };
    SVector v = hat(w.back());
    for (auto it = w.rbegin() + 1; it != w.rend(); ++it) {
        hat(*it);
        v = *it == 'x' ? star_x(v) : star_y(v);
    }
    return v;
}

NortonOps build_norton_ops(const SModel& m)
{
    NortonOps ops;
    ops.model = m;
    ops.Lx = m.C / m.X;
    ops.Ly = m.T * ops.Lx * m.T;
    const SVector xy = ops.Lx * m.y, yx = ops.Ly * m.x;
    if (xy != yx)
        throw NortonInvariantError("E x * E y computed through Lx and Ly disagree",
                                   json{{"Lx_y", vec_json(xy)}, {"Ly_x", vec_json(yx)}});
    return ops;
}

std::array<Rational, 6> sym_star_asym_scalars(const GraphParams& p, int k)
{
    const Rational q(p.q), qD(ipow(p.q, p.D)), qM(ipow(p.q, p.N - p.D));
    const Rational qk1(ipow(p.q, k - 1)), qk(ipow(p.q, k));
    return {qk1 * (qD + qM - 2 * qk1 - q),
            -2 * qk1 * (qk1 - 1),
            -(q - 2) * qk1 * (2 * qk1 - 1),
            (qD - 2 * qk) * (qM - qk) / q,
            (qD - qk) * (qM - 2 * qk) / q,
            -2 * (qD - qk) * (qM - qk) / q};
}

std::vector<CheckResult> verify_norton_identities(const NortonOps& ops)
{
    const SModel& m = ops.model;
    const GraphParams& p = m.params;
    const int k = m.k;
    const auto& s = m.spec;
    const auto& t = m.scalars;
    const Rational& X = m.X;
    const SVector a = m.asym();
    const Rational q111(krein_q111(p));
    std::vector<CheckResult> out;

    {
        CheckBuilder b("norton-commutativity", "E x * E y is the same through Lx and Ly");
        require_equal(b, ops.Lx * m.y, ops.Ly * m.x, json{{"identity", "Lx y = Ly x"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-x-star-x", "E x * E x = q^1_{11} |X|^{-1} E x, and likewise for y");
        require_equal(b, ops.star_x(m.x), (q111 / X) * m.x, json{{"side", "x"}});
        require_equal(b, ops.star_y(m.y), (q111 / X) * m.y, json{{"side", "y"}});
        b.note("q111", rat(q111));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-x-star-y",
                       "|X|(th_1-th_2) E x * E y = (th*_{k-1}-th*_k) E O_1 + (th*_{k+1}-th*_k) E O_6 + "
                       "(th_1-th_2) th*_k E x + (th_2-th_0) E y, and the symmetric O^v form");
        const SVector xy = ops.star_x(m.y);
        const Rational den = X * (s.theta[1] - s.theta[2]);
        const SVector first = ((s.theta_star[k - 1] - s.theta_star[k]) * m.O[0] +
                               (s.theta_star[k + 1] - s.theta_star[k]) * m.O[5] +
                               (s.theta[1] - s.theta[2]) * s.theta_star[k] * m.x + (s.theta[2] - s.theta[0]) * m.y) /
                              den;
        const SVector second = ((s.theta_star[k - 1] - s.theta_star[k]) * m.ovee[0] +
                                (s.theta_star[k + 1] - s.theta_star[k]) * m.ovee[5] +
                                (s.theta[2] - s.theta[0]) * (m.x + m.y)) /
                               den;
        require_equal(b, xy, first, json{{"form", "first"}});
        require_equal(b, xy, second, json{{"form", "second"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("prop-h-eigen", "E x * h_j = |X|^{-1} vartheta_j h_j and E y * h'_j = |X|^{-1} vartheta_j h'_j");
        for (int j = 0; j < 6; ++j) {
            require_equal(b, ops.star_x(m.h[j]), (t.vartheta(j) / X) * m.h[j], json{{"j", j + 1}});
            require_equal(b, ops.star_y(m.hprime[j]), (t.vartheta(j) / X) * m.hprime[j], json{{"j", j + 1}, {"prime", true}});
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-x-star-ovee",
                       "E x * O^v_j = |X|^{-1} sum_i C_ij O^v_i + |X|^{-1}(sum_i lambda_i C_ij - lambda_j q^1_{11}) E x, "
                       "and with y and E y");
        for (int j = 0; j < 6; ++j) {
            SVector base = SVector::Zero();
            Rational coef = -t.lambda(j) * q111;
            for (int i = 0; i < 6; ++i) {
                base += m.C(i, j) * m.ovee[i];
                coef += t.lambda(i) * m.C(i, j);
            }
            require_equal(b, ops.star_x(m.ovee[j]), base / X + (coef / X) * m.x, json{{"j", j + 1}, {"side", "x"}});
            require_equal(b, ops.star_y(m.ovee[j]), base / X + (coef / X) * m.y, json{{"j", j + 1}, {"side", "y"}});
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("prop-sym-star-asym", "E O^v_j * (E x - E y) = (s_j/|X|)(E x - E y) with the six listed s_j");
        const auto sj = sym_star_asym_scalars(p, k);
        json vals = json::array();
        for (int j = 0; j < 6; ++j) {
            const SVector got = ops.star_x(m.ovee[j]) - ops.star_y(m.ovee[j]);
            require_equal(b, got, (sj[j] / X) * a, json{{"j", j + 1}, {"s_j", rat(sj[j])}});
            vals.push_back(rat(sj[j] / X));
        }
        b.note("scalars", vals);
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("prop-star-sym-asym-closure",
                       "Sym * ASym in ASym, ASym * ASym in Sym, (E x + E y) * Sym in Sym, E x * E y in Sym");
        for (int j = 0; j < 6; ++j) {
            b.require(in_asym(m, ops.star_x(m.ovee[j]) - ops.star_y(m.ovee[j])), json{{"sym_star_asym", j + 1}});
            b.require(in_sym(m, ops.star_b(m.ovee[j])), json{{"xpy_star_sym", j + 1}});
        }
        const SVector aa = ops.star_x(m.x) - 2 * ops.star_x(m.y) + ops.star_y(m.y);
        b.require(in_sym(m, aa), json{{"asym_star_asym", vec_json(aa)}});
        b.require(in_sym(m, ops.star_x(m.y)), json{{"x_star_y", "not in Sym"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-x-star-y-h",
                       "E x * E y = |X|^{-1} sum_{j<=5} gamma_j vartheta_j h_j = |X|^{-1} sum_{j=2..5} gamma_j vartheta_j h^v_j");
        SVector via_h = SVector::Zero(), via_hv = SVector::Zero();
        for (int j = 0; j < 5; ++j) via_h += t.gamma(j) * t.vartheta(j) * m.h[j];
        for (int j = 1; j < 5; ++j) via_hv += t.gamma(j) * t.vartheta(j) * m.hvee[j];
        require_equal(b, ops.star_x(m.y), via_h / X, json{{"form", "h"}});
        require_equal(b, ops.star_x(m.y), via_hv / X, json{{"form", "hv"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-star-hvee",
                       "E x * h^v_j = |X|^{-1} vartheta_j h^v_j + |X|^{-1}(vartheta_j - vartheta_1) mu_j E x; "
                       "h^v_j * (E x - E y) and (E x + E y) * h^v_j accordingly");
        for (int j = 0; j < 6; ++j) {
            const Rational d = (t.vartheta(j) - t.vartheta(0)) * t.mu(j) / X;
            require_equal(b, ops.star_x(m.hvee[j]), (t.vartheta(j) / X) * m.hvee[j] + d * m.x, json{{"j", j + 1}, {"form", "x"}});
            require_equal(b, ops.star_x(m.hvee[j]) - ops.star_y(m.hvee[j]), d * a, json{{"j", j + 1}, {"form", "x - y"}});
            require_equal(b, ops.star_b(m.hvee[j]), (2 * t.vartheta(j) / X) * m.hvee[j] + d * (m.x + m.y),
                          json{{"j", j + 1}, {"form", "x + y"}});
        }
        out.push_back(b.finish());
    }
    return out;
}

std::vector<CheckResult> verify_omega(const NortonOps& ops)
{
    const SModel& m = ops.model;
    const SVector& w = m.omega;
    const SVector a = m.asym();
    const Rational ev = -Rational(m.params.q) / m.X;
    std::vector<CheckResult> out;
    {
        CheckBuilder b("prop-omega-eigen", "E x * omega = E y * omega = -q |X|^{-1} omega");
        require_equal(b, ops.star_x(w), ev * w, json{{"side", "x"}});
        require_equal(b, ops.star_y(w), ev * w, json{{"side", "y"}});
        b.require(!w.isZero(), json{{"omega", "zero"}});
        b.note("eigenvalue", rat(ev));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-omega-symmetric", "omega(x, y) = omega(y, x)");
        require_equal(b, m.sigma(w), w, json{{"identity", "sigma(omega) = omega"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-omega-perp-action", "E x, E y in omega-perp and E x * omega-perp, E y * omega-perp in omega-perp");
        b.require(s_inner(m, m.x, w) == 0, json{{"x_omega", rat(s_inner(m, m.x, w))}});
        b.require(s_inner(m, m.y, w) == 0, json{{"y_omega", rat(s_inner(m, m.y, w))}});
        for (int j = 0; j < 5; ++j) {
            b.require(s_inner(m, ops.star_x(m.h[j]), w) == 0, json{{"Lx h", j + 1}});
            b.require(s_inner(m, ops.star_y(m.h[j]), w) == 0, json{{"Ly h", j + 1}});
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-omega-perp-bases", "h_1..h_5 and h'_1..h'_5 are bases of omega-perp");
        const std::vector<SVector> h(m.h.begin(), m.h.begin() + 5), hp(m.hprime.begin(), m.hprime.begin() + 5);
        b.require(s_rank(m, h) == 5, json{{"rank_h", s_rank(m, h)}});
        b.require(s_rank(m, hp) == 5, json{{"rank_hprime", s_rank(m, hp)}});
        for (int j = 0; j < 5; ++j) {
            b.require(s_inner(m, h[j], w) == 0, json{{"h_not_perp", j + 1}});
            b.require(s_inner(m, hp[j], w) == 0, json{{"hprime_not_perp", j + 1}});
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("lemma-omega-3facts",
                       "S = span(omega) + omega-perp, omega-perp = ASym + (omega-perp cap Sym), "
                       "Sym = span(omega) + (omega-perp cap Sym), all orthogonal; dim(omega-perp cap Sym) = 4");
        const std::vector<SVector> core(m.hvee.begin() + 1, m.hvee.begin() + 5);
        b.require(s_rank(m, core) == 4, json{{"dim_core", s_rank(m, core)}});
        for (const auto& v : core) {
            b.require(s_inner(m, v, w) == 0, json{{"core_not_perp_omega", vec_json(v)}});
            b.require(s_inner(m, v, a) == 0, json{{"core_not_sym", vec_json(v)}});
        }
        b.require(s_inner(m, w, a) == 0, json{{"omega_not_sym", true}});
        std::vector<SVector> all = core;
        all.push_back(w);
        b.require(s_rank(m, all) == 5, json{{"dim_sym", s_rank(m, all)}});
        all.push_back(a);
        b.require(s_rank(m, all) == 6, json{{"dim_S", s_rank(m, all)}});
        std::vector<SVector> perp = core;
        perp.push_back(a);
        b.require(s_rank(m, perp) == 5, json{{"dim_omega_perp", s_rank(m, perp)}});
        b.note("dims", json::array({1, 1, 4}));
        out.push_back(b.finish());
    }
    return out;
}

std::vector<CheckResult> verify_generation(const NortonOps& ops)
{
    const SModel& m = ops.model;
    const SVector& w = m.omega;
    const SVector a = m.asym();
    std::vector<CheckResult> out;
    auto family_check = [&](const std::string& name, const std::string& anchor, std::vector<SVector> fam, int rank,
                            bool sym) {
        CheckBuilder b(name, anchor);
        const Eigen::Index r = s_rank(m, fam);
        b.require(r == rank, json{{"rank", r}, {"expected", rank}});
        for (std::size_t i = 0; i < fam.size(); ++i) {
            b.require(s_inner(m, fam[i], w) == 0, json{{"not_perp_omega", i}});
            if (sym) b.require(s_inner(m, fam[i], a) == 0, json{{"not_sym", i}});
        }
        b.note("rank", r);
        out.push_back(b.finish());
    };
    std::vector<SVector> fx{m.y}, fy{m.x}, fb{m.x + m.y};
    for (int l = 1; l < 5; ++l) {
        fx.push_back(ops.star_x(fx.back()));
        fy.push_back(ops.star_y(fy.back()));
    }
    for (int l = 1; l < 4; ++l) fb.push_back(ops.star_b(fb.back()));
    family_check("prop-wperp-generation-x", "E y, E x * E y, E x * (E x * E y), ... (five vectors) form a basis of omega-perp",
                 fx, 5, false);
    family_check("prop-wperp-generation-y", "E x, E y * E x, E y * (E y * E x), ... (five vectors) form a basis of omega-perp",
                 fy, 5, false);
    family_check("prop-bbb-basis", "B, B * B, B * (B * B), B * (B * (B * B)) with B = E x + E y form a basis of "
                                   "omega-perp cap Sym(S)",
                 fb, 4, true);
    return out;
}

std::vector<CheckResult> bbalanced_word_check(const NortonOps& ops, int n_max)
{
    const SModel& m = ops.model;
    const SVector a = m.asym();
    const Rational aa = s_inner(m, a, a);
    CheckBuilder bal("thm-bbalanced", "for every word w over {x, y}, v(w) - v(w-bar) lies in span{E x - E y}");
    CheckBuilder eq("words-swap-equivariant", "v(w-bar) = sigma(v(w)) for every word w");
    if (n_max < 1) {
        bal.require(false, json{{"n_max", n_max}});
        return {bal.finish(), eq.finish()};
    }
    // level[len-1][bits]: bit (len-1-i) set means letter i is y
    std::vector<SVector> level{m.x, m.y};
    std::int64_t words = 0;
    auto word_string = [](std::size_t bits, int len) {
        std::string s(len, 'x');
        for (int i = 0; i < len; ++i)
            if (bits >> (len - 1 - i) & 1) s[i] = 'y';
        return s;
    };
    for (int len = 1; len <= n_max; ++len) {
        if (len > 1) {
            std::vector<SVector> next(level.size() * 2);
            const std::size_t half = level.size();
            for (std::size_t bits = 0; bits < half; ++bits) {
                next[bits] = ops.star_x(level[bits]);         // leading x
                next[half + bits] = ops.star_y(level[bits]);  // leading y
            }
            level.swap(next);
        }
        const std::size_t mask = level.size() - 1;
        for (std::size_t bits = 0; bits < level.size(); ++bits) {
            ++words;
            const SVector& v = level[bits];
            const SVector& vbar = level[~bits & mask];
            const SVector diff = v - vbar;
            const SVector residual = diff - (s_inner(m, diff, a) / aa) * a;
            if (!residual.isZero()) bal.require(false, json{{"word", word_string(bits, len)}, {"residual", vec_json(residual)}});
            if (m.sigma(v) != vbar) eq.require(false, json{{"word", word_string(bits, len)}});
        }
    }
    bal.note("n_max", n_max);
    bal.note("words", words);
    eq.note("words", words);
    return {bal.finish(), eq.finish()};
}

}  // namespace bsc
