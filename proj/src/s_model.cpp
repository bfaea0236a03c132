#include "bsc/s_model.hpp"

#include <random>

namespace bsc {

namespace {

json rat(const Rational& r) { return to_string(r); }

json vec_json(const SVector& v)
{
    json a = json::array();
    for (int i = 0; i < 6; ++i) a.push_back(rat(v(i)));
    return a;
}

json mat_json(const RatMatrix6& m)
{
    json a = json::array();
    for (int i = 0; i < 6; ++i) {
        json r = json::array();
        for (int j = 0; j < 6; ++j) r.push_back(rat(m(i, j)));
        a.push_back(r);
    }
    return a;
}

SVector unit(int i)
{
    SVector v = SVector::Zero();
    v(i) = 1;
    return v;
}

void require_equal(CheckBuilder& b, const SVector& got, const SVector& want, json label)
{
    if (got == want) return;
    label["got"] = vec_json(got);
    label["expected"] = vec_json(want);
    b.require(false, label);
}

}  // namespace

SModel build_s_model(const ClosedForms& cf)
{
    SModel m;
    m.params = cf.params;
    m.k = cf.k;
    m.X = Rational(cf.vertex_count);
    m.spec = cf.spec;
    m.scalars = cf.scalars;
    m.C = cf.mats.C;
    m.H = cf.mats.H;
    m.G = cf.mats.G;
    const auto& t = cf.scalars;
    const int q = cf.params.q;
    const Rational qk1 = rpow(q, 1 - cf.k);

    m.x = SVector::Constant(1 / cf.spec.theta[1]);
    m.y = -((1 - qk1) / Rational(q - 1)) * m.x + qk1 * unit(0) - qk1 * unit(1);
    const SVector a = m.x - m.y;
    for (int j = 0; j < 6; ++j) {
        m.O[j] = unit(j);
        m.T.col(j) = unit(j) - t.lambda(j) * a;
    }
    if (exact_rank(m.T) != 6) throw InvalidParameters("swap matrix T is singular");
    for (int j = 0; j < 6; ++j) {
        m.Oprime[j] = m.T.col(j);
        m.h[j] = m.H.col(j);
        m.hprime[j] = m.T * m.h[j];
        m.ovee[j] = unit(j) - t.lambda(j) * m.x;
        m.hvee[j] = m.h[j] - t.mu(j) * m.x;
    }
    m.omega = m.h[5];
    return m;
}

Rational s_inner(const SModel& m, const SVector& u, const SVector& v)
{
    return (u.transpose() * m.G * v)(0, 0) / m.X;
}

SymAsym decompose(const SModel& m, const SVector& u)
{
    const SVector a = m.asym();
    const SVector asym = (s_inner(m, u, a) / s_inner(m, a, a)) * a;
    return {u - asym, asym};
}

Eigen::Index s_rank(const SModel& m, const std::vector<SVector>& vs)
{
    Eigen::Matrix<Rational, 6, Eigen::Dynamic> cols(6, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t c = 0; c < vs.size(); ++c) cols.col(static_cast<Eigen::Index>(c)) = vs[c];
    return gram_rank(m.G, cols);
}

AtomVector lift(const SVector& u)
{
    AtomVector v = AtomVector::Zero();
    for (int i = 0; i < 6; ++i) v(atom_O + i) = u(i);
    return v;
}

std::vector<CheckResult> verify_s_model(const SModel& m)
{
    const auto& t = m.scalars;
    const auto& s = m.spec;
    const SVector a = m.asym();
    std::vector<CheckResult> out;
    {
        CheckBuilder b("s-gram-positive-definite", "G is positive definite: all leading principal minors > 0");
        json minors = json::array();
        int i = 1;
        for (const Rational& d : leading_minors(m.G)) {
            b.require(d > 0, json{{"minor", i}, {"value", rat(d)}});
            minors.push_back(rat(d));
            ++i;
        }
        b.require(m.G == m.G.transpose(), json{{"G", "not symmetric"}});
        b.note("leading_minors", minors);
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("s-swap-map", "T maps x^ to y^, is an involution and an isometry of G");
        b.require(m.sigma(m.x) == m.y, json{{"sigma_x", vec_json(m.sigma(m.x))}});
        b.require(m.T * m.T == RatMatrix6::Identity(), json{{"T^2", "not identity"}});
        b.require(m.T.transpose() * m.G * m.T == m.G, json{{"T^t G T", "differs from G"}});
        Rational sum = 0;
        for (int i = 0; i < 6; ++i) sum += t.lambda(i);
        b.require(sum == s.theta[1], json{{"lambda_sum", rat(sum)}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("s-h-basis", "h_1..h_6 is an orthogonal basis of S with |h_j|^2 = eps_j eta_j/|X|; h_1 = theta_1 x^");
        b.require(s_rank(m, {m.h.begin(), m.h.end()}) == 6, json{{"rank", s_rank(m, {m.h.begin(), m.h.end()})}});
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                const Rational want = i == j ? t.epsfac(j) * t.eta(j) / m.X : Rational(0);
                const Rational got = s_inner(m, m.h[i], m.h[j]);
                b.require(got == want, json{{"i", i + 1}, {"j", j + 1}, {"got", rat(got)}, {"expected", rat(want)}});
                const Rational gotp = s_inner(m, m.hprime[i], m.hprime[j]);
                b.require(gotp == want, json{{"i", i + 1}, {"j", j + 1}, {"prime", true}, {"got", rat(gotp)}});
            }
        require_equal(b, m.h[0], s.theta[1] * m.x, json{{"identity", "h1 = theta1 x"}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("s-y-gamma", "y^ = sum_j gamma_j h_j, sum_j gamma_j mu_j = -1");
        SVector sum = SVector::Zero();
        Rational gm = 0;
        for (int j = 0; j < 6; ++j) {
            sum += t.gamma(j) * m.h[j];
            gm += t.gamma(j) * t.mu(j);
        }
        require_equal(b, sum, m.y, json{{"identity", "y = sum gamma h"}});
        b.require(gm == -1, json{{"sum_gamma_mu", rat(gm)}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("s-h-minus-hprime", "h_j - h'_j = mu_j (x^ - y^)");
        for (int j = 0; j < 6; ++j) require_equal(b, m.h[j] - m.hprime[j], t.mu(j) * a, json{{"j", j + 1}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("s-sym-asym", "S = Sym(S) + ASym(S) orthogonally, dimensions 5 and 1; "
                                     "O^v_i symmetric and orthogonal to x^ - y^");
        const Eigen::Index rs = s_rank(m, {m.ovee.begin(), m.ovee.end()});
        b.require(rs == 5, json{{"dim_sym", rs}});
        for (int i = 0; i < 6; ++i) {
            b.require(s_inner(m, m.ovee[i], a) == 0, json{{"i", i + 1}, {"inner", rat(s_inner(m, m.ovee[i], a))}});
            require_equal(b, m.sigma(m.ovee[i]), m.ovee[i], json{{"i", i + 1}, {"identity", "sigma(Ov) = Ov"}});
        }
        require_equal(b, m.sigma(a), -a, json{{"identity", "sigma(x - y) = -(x - y)"}});
        const SymAsym da = decompose(m, a), dxy = decompose(m, m.x + m.y);
        b.require(da.sym.isZero(), json{{"decompose", "x - y"}, {"sym", vec_json(da.sym)}});
        b.require(dxy.asym.isZero(), json{{"decompose", "x + y"}, {"asym", vec_json(dxy.asym)}});
        for (int i = 0; i < 6; ++i) {
            const SymAsym d = decompose(m, m.O[i]);
            require_equal(b, d.asym, (t.lambda(i) / 2) * a, json{{"decompose", "O_i"}, {"i", i + 1}});
            require_equal(b, d.sym, m.ovee[i] + (t.lambda(i) / 2) * (m.x + m.y), json{{"decompose_sym", "O_i"}, {"i", i + 1}});
        }
        SVector sum = SVector::Zero();
        for (const auto& v : m.ovee) sum += v;
        b.require(sum.isZero(), json{{"sum_ovee", vec_json(sum)}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("s-hvee", "h^v_1 = 0, h^v_j = sum_i H_ij O^v_i, x^ + y^ = sum_{j=2..5} gamma_j h^v_j, "
                                 "h^v_2..h^v_6 a basis of Sym(S)");
        b.require(m.hvee[0].isZero(), json{{"hv1", vec_json(m.hvee[0])}});
        for (int j = 0; j < 6; ++j) {
            SVector w = SVector::Zero();
            for (int i = 0; i < 6; ++i) w += m.H(i, j) * m.ovee[i];
            require_equal(b, m.hvee[j], w, json{{"j", j + 1}});
        }
        SVector sum = SVector::Zero();
        for (int j = 1; j <= 4; ++j) sum += t.gamma(j) * m.hvee[j];
        require_equal(b, sum, m.x + m.y, json{{"identity", "x + y = sum gamma hv"}});
        const std::vector<SVector> basis(m.hvee.begin() + 1, m.hvee.end());
        b.require(s_rank(m, basis) == 5, json{{"rank", s_rank(m, basis)}});
        for (int j = 1; j < 6; ++j) b.require(s_inner(m, m.hvee[j], a) == 0, json{{"j", j + 1}, {"not_sym", true}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("s-omega-coordinates", "omega = h_6 = h'_6 = h^v_6 with the listed coefficients omega_i");
        require_equal(b, m.omega, t.omega, json{{"identity", "h6 = omega table"}});
        require_equal(b, m.hprime[5], m.omega, json{{"identity", "h'6 = omega"}});
        require_equal(b, m.hvee[5], m.omega, json{{"identity", "hv6 = omega"}});
        out.push_back(b.finish());
    }
    return out;
}

CheckResult verify_s_model_faithful(const SModel& m, const AtomGram& ag, std::uint64_t seed, int pairs)
{
    CheckBuilder b("s-model-faithful", "<u, v>_G/|X| equals the counted <E lift(u), E lift(v)>; "
                                       "the model coordinates of y^ lift to Ey");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    auto random_vec = [&] {
        SVector v;
        for (int i = 0; i < 6; ++i) v(i) = Rational(num(rng), den(rng));
        return v;
    };
    for (int s = 0; s < pairs; ++s) {
        const SVector u = random_vec(), v = random_vec();
        const Rational model = s_inner(m, u, v), counted = ag.inner(lift(u), lift(v));
        b.require(model == counted, json{{"pair", s}, {"model", rat(model)}, {"counted", rat(counted)}});
    }
    const AtomVector dy = lift(m.y) - atom_y_hat(), dx = lift(m.x) - atom_x_hat();
    b.require(ag.norm2(dy) == 0, json{{"lift_y_norm2", rat(ag.norm2(dy))}});
    b.require(ag.norm2(dx) == 0, json{{"lift_x_norm2", rat(ag.norm2(dx))}});
    for (int j = 0; j < 6; ++j) {
        const AtomVector d = lift(m.Oprime[j]) - atom_class_prime(j);
        b.require(ag.norm2(d) == 0, json{{"lift_Oprime", j + 1}});
    }
    b.note("pairs", pairs);
    return b.finish();
}

json export_s_model(const SModel& m)
{
    json j;
    j["q"] = m.params.q;
    j["D"] = m.params.D;
    j["N"] = m.params.N;
    j["k"] = m.k;
    j["vertex_count"] = rat(m.X);
    j["basis"] = "E O_1 .. E O_6";
    j["G"] = mat_json(m.G);
    j["T"] = mat_json(m.T);
    j["C"] = mat_json(m.C);
    j["H"] = mat_json(m.H);
    j["x"] = vec_json(m.x);
    j["y"] = vec_json(m.y);
    j["omega"] = vec_json(m.omega);
    auto family = [&](const std::array<SVector, 6>& f) {
        json a = json::array();
        for (const auto& v : f) a.push_back(vec_json(v));
        return a;
    };
    j["h"] = family(m.h);
    j["h_prime"] = family(m.hprime);
    j["h_vee"] = family(m.hvee);
    j["O_vee"] = family(m.ovee);
    json sc;
    sc["lambda"] = vec_json(m.scalars.lambda);
    sc["mu"] = vec_json(m.scalars.mu);
    sc["gamma"] = vec_json(m.scalars.gamma);
    sc["eta"] = vec_json(m.scalars.eta);
    sc["eps"] = vec_json(m.scalars.epsfac);
    sc["vartheta"] = vec_json(m.scalars.vartheta);
    j["scalars"] = sc;
    return j;
}

}  // namespace bsc
