#include "bsc/params.hpp"

#include "bsc/field.hpp"

#include <algorithm>
#include <sstream>

namespace bsc {

namespace {

// Powers of q used throughout the printed formulas.
struct Powers {
    long q;
    Rational operator()(int e) const { return rpow(q, e); }
};

json mismatch_witness(const std::string& what, int i, int j, const Rational& got, const Rational& want)
{
    return json{{"what", what}, {"i", i}, {"j", j}, {"got", to_string(got)}, {"expected", to_string(want)}};
}

json vector_witness(const RatVector6& v)
{
    json a = json::array();
    for (int i = 0; i < 6; ++i) a.push_back(to_string(v(i)));
    return a;
}

Rational delta(int i, int j) { return i == j ? Rational(1) : Rational(0); }

}  // namespace

BigInt GraphParams::vertex_count() const
{
    return ipow(q, static_cast<unsigned>(D * (N - D)));
}

void GraphParams::validate() const
{
    if (q == 2 || !is_prime(q))
        throw InvalidParameters("q must be an odd prime (q != 2), got " + std::to_string(q));
    if (q > PrimeField::max_modulus) throw InvalidParameters("q too large for the packed field representation");
    if (!(2 * D >= 6)) throw InvalidParameters("need 2D >= 6, got D = " + std::to_string(D));
    if (!(N > 2 * D)) throw InvalidParameters("need N > 2D, got N = " + std::to_string(N) + ", D = " + std::to_string(D));
    if (D * (N - D) > 64) throw InvalidParameters("D(N-D) above the supported 64 matrix entries");
}

void GraphParams::validate_distance(int k) const
{
    if (k < 2 || k > D - 1)
        throw InvalidParameters("need 2 <= k <= D-1, got k = " + std::to_string(k) + " with D = " + std::to_string(D));
}

IntersectionNumbers intersection_numbers(const GraphParams& p, int i)
{
    if (i < 0 || i > p.D) throw InvalidParameters("intersection number index out of range: " + std::to_string(i));
    const BigInt qi = ipow(p.q, i);
    const BigInt qm1 = p.q - 1;
    IntersectionNumbers out;
    out.c = i == 0 ? BigInt(0) : ipow(p.q, i - 1) * (qi - 1) / qm1;
    out.b = (ipow(p.q, p.N - p.D) - qi) * (ipow(p.q, p.D) - qi) / qm1;
    out.a = valency(p) - out.b - out.c;
    return out;
}

BigInt valency(const GraphParams& p)
{
    return (ipow(p.q, p.N - p.D) - 1) * (ipow(p.q, p.D) - 1) / (p.q - 1);
}

BigInt sphere_size(const GraphParams& p, int i)
{
    BigInt num = 1, den = 1;
    for (int h = 0; h < i; ++h) num *= intersection_numbers(p, h).b;
    for (int h = 1; h <= i; ++h) den *= intersection_numbers(p, h).c;
    return num / den;
}

const Rational& Spectrum::dual(int i) const
{
    static const Rational zero(0);
    if (i < 0 || i >= static_cast<int>(theta_star.size())) return zero;
    return theta_star[i];
}

Spectrum spectrum(const GraphParams& p)
{
    const Powers Q{p.q};
    Spectrum s;
    for (int i = 0; i <= p.D; ++i) {
        s.theta.push_back((Q(p.N - i) + 1 - Q(p.D) - Q(p.N - p.D)) / (p.q - 1));
        s.theta_star.push_back((Q(p.N - i) + 1 - Q(p.D) - Q(p.N - p.D)) / (p.q - 1));
    }
    return s;
}

BigInt eigenspace_dimension(const GraphParams& p)
{
    return (ipow(p.q, p.N - p.D) - 1) * (ipow(p.q, p.D) - 1) / (p.q - 1);
}

BigInt krein_q111(const GraphParams& p)
{
    return ipow(p.q, p.N - p.D) + ipow(p.q, p.D) - p.q - 2;
}

std::array<BigInt, 6> partition_sizes(const GraphParams& p, int k)
{
    p.validate_distance(k);
    const BigInt q = p.q;
    const BigInt qk = ipow(p.q, k), qk1 = ipow(p.q, k - 1);
    const BigInt qM = ipow(p.q, p.N - p.D), qD = ipow(p.q, p.D);
    return {
        qk1 * (qk - 1) / (q - 1),
        (qk - 1) * (qk1 - 1) / (q - 1),
        qk1 * (qk - 1) * (q - 2) / (q - 1),
        (qM - qk) * (qk - 1) / (q - 1),
        (qD - qk) * (qk - 1) / (q - 1),
        (qM - qk) * (qD - qk) / (q - 1),
    };
}

RatMatrix6 closed_form_C(const GraphParams& p, int k)
{
    p.validate_distance(k);
    const Powers Q{p.q};
    const Rational q = p.q;
    const Rational qk = Q(k), qk1 = Q(k - 1), qM = Q(p.N - p.D), qD = Q(p.D);
    RatMatrix6 C;
    C << 2 * (qk1 - 1), 2 * (qk1 - 1), (2 * qk1 - 1) * (q - 2), qM - qk, qD - qk, 0,
        2 * qk1, 2 * qk1 - 2 - q, 2 * qk1 * (q - 2), qM - qk, qD - qk, 0,
        2 * qk1 - 1, 2 * (qk1 - 1), 2 * qk - 4 * qk1 - q + 1, qM - qk, qD - qk, 0,
        qk1, qk1 - 1, qk1 * (q - 2), qM - q - 1, 0, qD - qk,
        qk1, qk1 - 1, qk1 * (q - 2), 0, qD - q - 1, qM - qk,
        0, 0, 0, qk - 1, qk - 1, qM + qD - 2 * qk - q;
    return C;
}

RatMatrix6 closed_form_H(const GraphParams& p, int k)
{
    p.validate_distance(k);
    const Powers Q{p.q};
    const Rational q = p.q;
    const Rational qk = Q(k), qk1 = Q(k - 1), qM = Q(p.N - p.D), qD = Q(p.D), qN = Q(p.N);
    const Rational c2 = (qD - qk) / (q - 1);
    const Rational c3 = (qM - qk) / (q - 1);
    const Rational low = -(qk - 1) / (q - 1);
    const Rational c5 = (qN - Q(p.N - p.D + 1) - Q(p.D + 1) + Q(k + 1) - qk + q) / ((q - 1) * (q - 1));
    const Rational c6 = (qD - qk) * (qM - qk) * (qk1 - 1) / (qk * (q - 1));
    RatMatrix6 H;
    H << 1, c2, c3, q - 2, c5, c6,
        1, c2, c3, 0, (qk - qN) / (q - 1), (qD - qk) * (qM - qk) / (q * (q - 1)),
        1, c2, c3, -1, c5, c6,
        1, c2, low, 0, (qk - qD) / (q - 1), -(qD - qk) * (qk1 - 1) / (q - 1),
        1, low, c3, 0, (qk - qM) / (q - 1), -(qM - qk) * (qk1 - 1) / (q - 1),
        1, low, low, 0, (qk - 1) / (q - 1), (qk - 1) * (qk1 - 1) / (q - 1);
    return H;
}

namespace {

RatMatrix6 gram_first_form(const RatMatrix6& C, const RatVector6& osize, const Spectrum& s)
{
    RatMatrix6 G;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            G(i, j) = osize(i) * (delta(i, j) * s.dual(0) + C(i, j) * s.dual(1) +
                                  (osize(j) - C(i, j) - delta(i, j)) * s.dual(2));
    return G;
}

RatMatrix6 gram_second_form(const RatMatrix6& C, const RatVector6& osize, const Spectrum& s)
{
    RatMatrix6 G;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            G(i, j) = osize(j) * (delta(i, j) * s.dual(0) + C(j, i) * s.dual(1) +
                                  (osize(i) - C(j, i) - delta(i, j)) * s.dual(2));
    return G;
}

RatVector6 osize_vector(const GraphParams& p, int k)
{
    const auto sizes = partition_sizes(p, k);
    RatVector6 v;
    for (int i = 0; i < 6; ++i) v(i) = Rational(sizes[i]);
    return v;
}

}  // namespace

RatMatrix6 closed_form_G(const GraphParams& p, int k)
{
    return gram_first_form(closed_form_C(p, k), osize_vector(p, k), spectrum(p));
}

RatMatrix6 closed_form_G_transposed_form(const GraphParams& p, int k)
{
    return gram_second_form(closed_form_C(p, k), osize_vector(p, k), spectrum(p));
}

RatMatrix6 closed_form_D(const GraphParams& p, int k, int l)
{
    p.validate_distance(k);
    if (l < k - 2 || l > k + 2)
        throw InvalidParameters("distance matrix index l = " + std::to_string(l) + " outside [k-2, k+2]");
    const Powers Q{p.q};
    const Rational q = p.q;
    const Rational qk = Q(k), qk1 = Q(k - 1), qk2 = Q(k - 2), qM = Q(p.N - p.D), qD = Q(p.D);
    RatMatrix6 M = RatMatrix6::Zero();
    if (l == k - 2) {
        M(0, 0) = qk2 * (qk1 - 1) / (q - 1);
    } else if (l == k - 1) {
        const Rational a = qk1 - 1;
        const Rational b = (qk1 - 1) / (q - 1);
        M << 2 * qk2 * a, a * (qk2 + b), b * qk2 * (2 * q - 1) * (q - 2), a * (qM - qk) / (q - 1),
            a * (qD - qk) / (q - 1), 0,
            qk1 * (qk2 + b), Q(2 * k - 3), Q(2 * k - 3) * (q - 2), 0, 0, 0,
            b * qk2 * (2 * q - 1), qk2 * a, qk2 * (qk - 2 * qk1 + 2), 0, 0, 0,
            a * qk1 / (q - 1), 0, 0, Q(2 * (k - 1)), 0, 0,
            a * qk1 / (q - 1), 0, 0, 0, Q(2 * (k - 1)), 0,
            0, 0, 0, 0, 0, 0;
    } else if (l == k) {
        const Rational a = qk1 - 1;
        const Rational b = (qk1 - 1) / (q - 1);
        const Rational r = (qk - qk1 + qk2 - 1) / (q - 1);
        const Rational top = qk2 * (qk - qk1 + 1);
        M << top, a * (qk1 - qk2), top * (q - 2), qk1 * (qM - qk), qk1 * (qD - qk), (qM - qk) * (qD - qk) / (q - 1),
            Q(2 * k - 3) * (q - 1), (qk - 1) * a / (q - 1) - Q(2 * k - 3), (q - 2) * qk1 * r,
            (qM - qk) * (qk - 1) / (q - 1), (qD - qk) * (qk - 1) / (q - 1), 0,
            top, a * r, qk2 * (q - 2) * (qk + b) - qk1, (qM - qk) * (qk - 1) / (q - 1), (qD - qk) * (qk - 1) / (q - 1), 0,
            Q(2 * (k - 1)), a * (qk - 1) / (q - 1), qk1 * (q - 2) * (qk - 1) / (q - 1),
            (qM - qk) * (qk - 1) / (q - 1) - Q(2 * (k - 1)), (qD - qk) * a / (q - 1), qk1 * (qD - qk),
            Q(2 * (k - 1)), a * (qk - 1) / (q - 1), qk1 * (q - 2) * (qk - 1) / (q - 1), (qM - qk) * a / (q - 1),
            (qD - qk) * (qk - 1) / (q - 1) - Q(2 * (k - 1)), (qM - qk) * qk1,
            (qk - 1) * qk1 / (q - 1), 0, 0, qk1 * (qk - 1), qk1 * (qk - 1), (q - 1) * Q(2 * k - 1) + qk1;
    } else if (l == k + 1) {
        const Rational a = qk1 - 1;
        const Rational X = (qM - qk) * (qD - qk) / (q - 1);
        M << 0, 0, 0, 0, 0, 0,
            0, 0, 0, 0, 0, X,
            0, 0, 0, 0, 0, X,
            0, 0, 0, 0, (qD - qk) * qk1, (qD - qk) * (qM - 2 * qk + qk1) / (q - 1),
            0, 0, 0, (qM - qk) * qk1, 0, (qM - qk) * (qD - 2 * qk + qk1) / (q - 1),
            0, (qk - 1) * a / (q - 1), (qk - 1) * qk1 * (q - 2) / (q - 1), (qk - 1) * (qM - 2 * qk + qk1) / (q - 1),
            (qk - 1) * (qD - 2 * qk + qk1) / (q - 1),
            qk1 * (Q(p.D + 1) + Q(p.N - p.D + 1) - Q(k + 2) - 2 * Q(k + 1) + qk - 1);
    } else {
        M(5, 5) = (qD - Q(k + 1)) * (qM - Q(k + 1)) / (q - 1);
    }
    return M;
}

std::array<int, 6> eps_offset_table()
{
    return {-1, 0, 0, 0, 0, 1};
}

RatVector6 lambda_from_dual_eigenvalues(const GraphParams& p, int k)
{
    const Spectrum s = spectrum(p);
    const RatVector6 osize = osize_vector(p, k);
    const auto eps = eps_offset_table();
    RatVector6 out;
    for (int i = 0; i < 6; ++i)
        out(i) = osize(i) * (s.dual(1) - s.dual(k + eps[i])) / (s.dual(0) - s.dual(k));
    return out;
}

RatVector6 lambda_closed_form(const GraphParams& p, int k)
{
    p.validate_distance(k);
    const Powers Q{p.q};
    const Rational q = p.q;
    const Rational qk = Q(k), qk1 = Q(k - 1), qM = Q(p.N - p.D), qD = Q(p.D);
    RatVector6 out;
    out << qk * (Q(k - 2) - 1) / (q - 1), (qk1 - 1) * (qk1 - 1) / (q - 1), qk1 * (qk1 - 1) * (q - 2) / (q - 1),
        (qM - qk) * (qk1 - 1) / (q - 1), (qD - qk) * (qk1 - 1) / (q - 1), (qD - qk) * (qM - qk) / (q * (q - 1));
    return out;
}

RatVector6 mu_from_H(const RatVector6& lambda, const RatMatrix6& H)
{
    return H.transpose() * lambda;
}

namespace {

// Shared factor of eta_5, eta_6 and mu_5.
Rational common_factor(const GraphParams& p, int k)
{
    const Powers Q{p.q};
    const Rational q = p.q;
    return ((Q(p.N - p.D) - q) * (Q(p.D - 1) - 1) + Q(p.N - k) * (Q(k - 1) - 1) * (q - 1)) / ((q - 1) * (q - 1));
}

}  // namespace

RatVector6 mu_closed_form(const GraphParams& p, int k)
{
    p.validate_distance(k);
    const Powers Q{p.q};
    const Rational q = p.q;
    const Rational qk = Q(k), qk1 = Q(k - 1), qM = Q(p.N - p.D), qD = Q(p.D);
    const Spectrum s = spectrum(p);
    RatVector6 out;
    out << s.theta[1], -Q(p.N - p.D - 1) * (qD - qk) / (q - 1), -Q(p.D - 1) * (qM - qk) / (q - 1), -(q - 2) * qk1,
        -qk1 * common_factor(p, k), 0;
    return out;
}

RatVector6 gamma_closed_form(const GraphParams& p, int k)
{
    p.validate_distance(k);
    const Powers Q{p.q};
    const Rational q = p.q;
    const Rational qM = Q(p.N - p.D), qD = Q(p.D);
    const Rational den = (qM - 1) * (qD - 1);
    const Spectrum s = spectrum(p);
    const Rational small = Q(1 - k) * (q - 1) / den;
    RatVector6 out;
    out << (Q(p.N - k) - qM - qD + 1) / den / s.theta[1], small, small, Q(1 - k) / (q - 1), small, 0;
    return out;
}

RatVector6 eta_closed_form(const GraphParams& p, int k)
{
    p.validate_distance(k);
    const Powers Q{p.q};
    const Rational q = p.q;
    const Rational qk = Q(k), qk1 = Q(k - 1), qM = Q(p.N - p.D), qD = Q(p.D);
    const Rational q1 = q - 1;
    const Rational cf = common_factor(p, k);
    RatVector6 out;
    out << (qD - 1) * (qM - 1) / q1, (qD - qk) * (qk - 1) * (qD - 1) * (qM - 1) / (q1 * q1 * q1),
        (qM - qk) * (qk - 1) * (qD - 1) * (qM - 1) / (q1 * q1 * q1), (q - 2) * qk1 * (qk - 1),
        cf * qk * (qk - 1) * (qD - 1) * (qM - 1) / (q1 * q1),
        cf * (qk - 1) * (qk1 - 1) * (qD - qk) * (qM - qk) / (q1 * q);
    return out;
}

RatVector6 epsfac_closed_form(const GraphParams& p)
{
    const Powers Q{p.q};
    const Spectrum s = spectrum(p);
    RatVector6 out;
    out << s.theta[1] * s.theta[1], Q(2 * p.N - p.D - 2), Q(p.N + p.D - 2), Q(p.N - 1), Q(p.N - 2), Q(p.N - 2);
    return out;
}

RatVector6 vartheta_table(const GraphParams& p)
{
    const Powers Q{p.q};
    const Rational q = p.q;
    RatVector6 out;
    out << Q(p.N - p.D) + Q(p.D) - q - 2, Q(p.N - p.D) - q - 1, Q(p.D) - q - 1, -1, -q, -q;
    return out;
}

namespace {

RatVector6 omega_closed_form(const GraphParams& p, int k)
{
    const Powers Q{p.q};
    const Rational q = p.q;
    const Rational qk = Q(k), qk1 = Q(k - 1), qM = Q(p.N - p.D), qD = Q(p.D);
    RatVector6 out;
    out << (qD - qk) * (qM - qk) * (qk1 - 1) / (qk * (q - 1)), (qD - qk) * (qM - qk) / (q * (q - 1)),
        (qD - qk) * (qM - qk) * (qk1 - 1) / (qk * (q - 1)), -(qD - qk) * (qk1 - 1) / (q - 1),
        -(qM - qk) * (qk1 - 1) / (q - 1), (qk - 1) * (qk1 - 1) / (q - 1);
    return out;
}

std::string first_difference(const RatVector6& a, const RatVector6& b)
{
    for (int i = 0; i < 6; ++i)
        if (a(i) != b(i)) {
            std::ostringstream os;
            os << "index " << i + 1 << ": " << to_string(a(i)) << " vs " << to_string(b(i));
            return os.str();
        }
    return {};
}

}  // namespace

ScalarTables scalar_tables(const GraphParams& p, int k)
{
    p.validate();
    p.validate_distance(k);
    ScalarTables t;
    t.k = k;
    t.lambda = lambda_from_dual_eigenvalues(p, k);
    if (const RatVector6 alt = lambda_closed_form(p, k); alt != t.lambda)
        throw InconsistentTables("lambda", first_difference(t.lambda, alt));
    const RatMatrix6 H = closed_form_H(p, k);
    t.mu = mu_from_H(t.lambda, H);
    if (const RatVector6 alt = mu_closed_form(p, k); alt != t.mu)
        throw InconsistentTables("mu", first_difference(t.mu, alt));
    t.gamma = gamma_closed_form(p, k);
    t.omega = omega_closed_form(p, k);
    t.eta = eta_closed_form(p, k);
    t.epsfac = epsfac_closed_form(p);
    t.vartheta = vartheta_table(p);
    t.eps_offset = eps_offset_table();
    return t;
}

ClosedForms evaluate_closed_forms(const GraphParams& p, int k)
{
    p.validate();
    p.validate_distance(k);
    ClosedForms cf;
    cf.params = p;
    cf.k = k;
    cf.vertex_count = p.vertex_count();
    cf.spec = spectrum(p);
    cf.mats.C = closed_form_C(p, k);
    cf.mats.H = closed_form_H(p, k);
    cf.mats.G = closed_form_G(p, k);
    cf.mats.osize = osize_vector(p, k);
    for (int l = k - 2; l <= k + 2; ++l) cf.mats.Dmat[l] = closed_form_D(p, k, l);
    cf.scalars = scalar_tables(p, k);
    return cf;
}

std::vector<CheckResult> verify_parameters(const GraphParams& p)
{
    std::vector<CheckResult> out;
    const BigInt kappa = valency(p);
    const Spectrum s = spectrum(p);
    const Powers Q{p.q};

    {
        CheckBuilder b("params-intersection-numbers", "c_i + a_i + b_i = kappa; a_i = [i](q^{N-D} + q^D - q^i - q^{i-1} - 1)");
        for (int i = 0; i <= p.D; ++i) {
            const auto in = intersection_numbers(p, i);
            b.require(in.c + in.a + in.b == kappa, json{{"i", i}, {"sum", (in.c + in.a + in.b).str()}});
            const Rational printed_a =
                (Q(i) - 1) / (p.q - 1) * (Q(p.N - p.D) + Q(p.D) - Q(i) - Q(i - 1) - 1);
            b.require(Rational(in.a) == printed_a,
                      json{{"i", i}, {"a_i", in.a.str()}, {"printed", to_string(printed_a)}});
        }
        b.require(intersection_numbers(p, 0).c == 0 && intersection_numbers(p, 0).a == 0, json{{"i", 0}});
        b.require(intersection_numbers(p, 1).c == 1, json{{"c1", intersection_numbers(p, 1).c.str()}});
        b.require(intersection_numbers(p, p.D).b == 0, json{{"bD", intersection_numbers(p, p.D).b.str()}});
        b.note("kappa", kappa.str());
        b.note("a1", intersection_numbers(p, 1).a.str());
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("params-spectrum", "theta_0 = kappa > theta_1 > ... > theta_D; theta*_i = theta_i");
        b.require(s.theta[0] == Rational(kappa), json{{"theta0", to_string(s.theta[0])}});
        for (int i = 1; i <= p.D; ++i) b.require(s.theta[i] < s.theta[i - 1], json{{"not_decreasing_at", i}});
        for (int i = 0; i <= p.D; ++i) b.require(s.theta[i] == s.theta_star[i], json{{"self_dual_fails_at", i}});
        json th = json::array();
        for (const auto& t : s.theta) th.push_back(to_string(t));
        b.note("theta", th);
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("params-three-term", "th*_{i-1} c_i + th*_i a_i + th*_{i+1} b_i = theta_1 th*_i");
        for (int i = 0; i <= p.D; ++i) {
            const auto in = intersection_numbers(p, i);
            // boundary terms carry c_0 = 0 and b_D = 0, so the indeterminates drop out
            const Rational lhs = (i > 0 ? s.dual(i - 1) * Rational(in.c) : Rational(0)) + s.dual(i) * Rational(in.a) +
                                 (i < p.D ? s.dual(i + 1) * Rational(in.b) : Rational(0));
            const Rational rhs = s.theta[1] * s.dual(i);
            b.require(lhs == rhs, json{{"i", i}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}});
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("params-eigenspace-dimension", "dim EV = th*_0 = (q^{N-D}-1)(q^D-1)/(q-1)");
        b.require(Rational(eigenspace_dimension(p)) == s.dual(0),
                  json{{"dim", eigenspace_dimension(p).str()}, {"theta_star0", to_string(s.dual(0))}});
        b.note("dim", eigenspace_dimension(p).str());
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("params-krein-q111", "q^1_{11} = a_1 = q^{N-D} + q^D - q - 2");
        b.require(krein_q111(p) == intersection_numbers(p, 1).a,
                  json{{"q111", krein_q111(p).str()}, {"a1", intersection_numbers(p, 1).a.str()}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("params-sphere-sizes", "1 + sum_i k_i = |X| with k_i = b_0...b_{i-1}/(c_1...c_i)");
        BigInt total = 1;
        json sizes = json::array({"1"});
        for (int i = 1; i <= p.D; ++i) {
            BigInt num = 1, den = 1;
            for (int h = 0; h < i; ++h) num *= intersection_numbers(p, h).b;
            for (int h = 1; h <= i; ++h) den *= intersection_numbers(p, h).c;
            b.require(num % den == 0, json{{"i", i}, {"non_integral", true}});
            total += num / den;
            sizes.push_back((num / den).str());
        }
        b.require(total == p.vertex_count(), json{{"total", total.str()}, {"vertex_count", p.vertex_count().str()}});
        b.note("sphere_sizes", sizes);
        out.push_back(b.finish());
    }
    return out;
}

std::vector<CheckResult> verify_closed_form_identities(const ClosedForms& cf)
{
    const GraphParams& p = cf.params;
    const int k = cf.k;
    const Spectrum& s = cf.spec;
    const RatMatrix6& C = cf.mats.C;
    const RatMatrix6& H = cf.mats.H;
    const RatVector6& O = cf.mats.osize;
    const ScalarTables& t = cf.scalars;
    const Rational a1(intersection_numbers(p, 1).a);
    const Rational kappa(valency(p));
    std::vector<CheckResult> out;

    auto compare_matrix = [](CheckBuilder& b, const std::string& what, const RatMatrix6& got, const RatMatrix6& want) {
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                b.require(got(i, j) == want(i, j), mismatch_witness(what, i + 1, j + 1, got(i, j), want(i, j)));
    };
    auto compare_vector = [](CheckBuilder& b, const std::string& what, const RatVector6& got, const RatVector6& want) {
        for (int i = 0; i < 6; ++i)
            b.require(got(i) == want(i), mismatch_witness(what, i + 1, 0, got(i), want(i)));
    };

    {
        CheckBuilder b("cf-partition-sizes", "|O_1| + ... + |O_6| = kappa, every |O_i| > 0");
        b.require(O.sum() == kappa, json{{"sum", to_string(O.sum())}, {"kappa", to_string(kappa)}});
        for (int i = 0; i < 6; ++i) b.require(O(i) > 0 && is_integer(O(i)), json{{"i", i + 1}, {"size", to_string(O(i))}});
        const auto printed = partition_sizes(p, k);
        for (int i = 0; i < 6; ++i)
            b.require(O(i) == Rational(printed[i]), mismatch_witness("osize", i + 1, 0, O(i), Rational(printed[i])));
        b.note("sizes", vector_witness(O));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-c-row-sums", "each row of C sums to a_1; entries are nonnegative integers");
        for (int i = 0; i < 6; ++i) {
            const Rational rs = C.row(i).sum();
            b.require(rs == a1, json{{"row", i + 1}, {"sum", to_string(rs)}, {"a1", to_string(a1)}});
            for (int j = 0; j < 6; ++j)
                b.require(C(i, j) >= 0 && is_integer(C(i, j)), mismatch_witness("C entry", i + 1, j + 1, C(i, j), C(i, j)));
        }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-c-symmetric", "diag(|O|) C is symmetric");
        const RatMatrix6 W = O.asDiagonal() * C;
        compare_matrix(b, "diag(|O|)C vs transpose", W, W.transpose());
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-h-eigenvectors", "C H = H diag(vartheta_1..vartheta_6)");
        compare_matrix(b, "CH vs H diag(vartheta)", C * H, H * t.vartheta.asDiagonal());
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-h-gram-eta", "H^t diag(|O|) H = diag(eta), eta_i > 0, H invertible");
        const RatMatrix6 HOH = H.transpose() * O.asDiagonal() * H;
        compare_matrix(b, "H^t diag(|O|) H", HOH, RatMatrix6(t.eta.asDiagonal()));
        for (int i = 0; i < 6; ++i) b.require(t.eta(i) > 0, json{{"eta_nonpositive", i + 1}});
        b.require(exact_inverse(H).has_value(), json{{"H", "singular"}});
        b.note("eta", vector_witness(t.eta));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-g-two-forms", "G_ij = |O_i|(...C_ij...) = |O_j|(...C_ji...)");
        const RatMatrix6 G1 = gram_first_form(C, O, s);
        const RatMatrix6 G2 = gram_second_form(C, O, s);
        compare_matrix(b, "first vs second form", G1, G2);
        compare_matrix(b, "stored G vs first form", cf.mats.G, G1);
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-htgh", "H^t G H = diag(eps_j eta_j), eps_1 = theta_1^2");
        const RatMatrix6 HGH = H.transpose() * cf.mats.G * H;
        const RatVector6 want = t.epsfac.cwiseProduct(t.eta);
        compare_matrix(b, "H^t G H", HGH, RatMatrix6(want.asDiagonal()));
        b.require(t.epsfac(0) == s.theta[1] * s.theta[1], json{{"eps1", to_string(t.epsfac(0))}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-lambda-two-way",
                       "lambda_i = |O_i|(th*_1 - th*_{k+eps(i)})/(th*_0 - th*_k) = factored closed forms");
        RatVector6 from_dual;
        for (int i = 0; i < 6; ++i)
            from_dual(i) = O(i) * (s.dual(1) - s.dual(k + t.eps_offset[i])) / (s.dual(0) - s.dual(k));
        compare_vector(b, "stored lambda vs dual-eigenvalue form", t.lambda, from_dual);
        compare_vector(b, "stored lambda vs factored form", t.lambda, lambda_closed_form(p, k));
        b.note("lambda", vector_witness(t.lambda));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-lambda-sum", "theta_1 = lambda_1 + ... + lambda_6");
        b.require(t.lambda.sum() == s.theta[1], json{{"sum", to_string(t.lambda.sum())}, {"theta1", to_string(s.theta[1])}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-mu-two-way", "mu_j = sum_i lambda_i H_ij = closed forms; mu_1 = theta_1, mu_6 = 0");
        compare_vector(b, "stored mu vs H-sum", t.mu, mu_from_H(t.lambda, H));
        compare_vector(b, "stored mu vs closed form", t.mu, mu_closed_form(p, k));
        b.require(t.mu(0) == s.theta[1], json{{"mu1", to_string(t.mu(0))}});
        b.require(t.mu(5) == 0, json{{"mu6", to_string(t.mu(5))}});
        b.note("mu", vector_witness(t.mu));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-gamma-mu-sums", "sum_j gamma_j mu_j = -1, sum_j vartheta_j gamma_j mu_j = 0, gamma_6 = 0");
        const Rational s1 = t.gamma.dot(t.mu);
        const Rational s2 = t.vartheta.cwiseProduct(t.gamma).dot(t.mu);
        b.require(s1 == -1, json{{"sum_gamma_mu", to_string(s1)}});
        b.require(s2 == 0, json{{"sum_vartheta_gamma_mu", to_string(s2)}});
        b.require(t.gamma(5) == 0, json{{"gamma6", to_string(t.gamma(5))}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-tables-shape", "eps(i) = (-1,0,0,0,0,1); vartheta_1 = a_1; vartheta_5 = vartheta_6");
        b.require(t.eps_offset == std::array<int, 6>{-1, 0, 0, 0, 0, 1}, json{{"eps_offset", t.eps_offset}});
        b.require(t.vartheta(0) == a1, json{{"vartheta1", to_string(t.vartheta(0))}});
        b.require(t.vartheta(4) == t.vartheta(5), json{{"vartheta5_ne_vartheta6", true}});
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-omega-coefficients", "omega_i = H_{i,6} (printed coefficient list)");
        compare_vector(b, "omega vs column 6 of H", t.omega, RatVector6(H.col(5)));
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-step2-grid", "d_ij th*_0 + C_ij th*_1 + (|O_j| - C_ij - d_ij) th*_2 - sum_l D^(l)_ij th*_l = "
                                        "lambda_j (th*_1 - th*_{k+eps(i)})");
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                Rational lhs = delta(i, j) * s.dual(0) + C(i, j) * s.dual(1) + (O(j) - C(i, j) - delta(i, j)) * s.dual(2);
                for (const auto& [l, Dl] : cf.mats.Dmat) lhs -= Dl(i, j) * s.dual(l);
                const Rational rhs = t.lambda(j) * (s.dual(1) - s.dual(k + t.eps_offset[i]));
                b.require(lhs == rhs, mismatch_witness("step2 grid", i + 1, j + 1, lhs, rhs));
            }
        out.push_back(b.finish());
    }
    {
        CheckBuilder b("cf-d-matrices", "sum_l D^(l)_ij = |O_j|; entries nonnegative integers; D^(k+2) = 0 iff k = D-1");
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                Rational total = 0;
                for (const auto& [l, Dl] : cf.mats.Dmat) {
                    total += Dl(i, j);
                    b.require(Dl(i, j) >= 0 && is_integer(Dl(i, j)), mismatch_witness("D entry l=" + std::to_string(l),
                                                                                      i + 1, j + 1, Dl(i, j), Dl(i, j)));
                }
                b.require(total == O(j), mismatch_witness("column total", i + 1, j + 1, total, O(j)));
            }
        const bool top_zero = is_zero(cf.mats.Dmat.at(k + 2));
        b.require(top_zero == (k == p.D - 1), json{{"Dk+2_zero", top_zero}, {"k", k}, {"D", p.D}});
        out.push_back(b.finish());
    }
    return out;
}

Perturbation parse_perturbation(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string piece; std::getline(ss, piece, ':');) parts.push_back(piece);
    if (parts.size() != 3 && parts.size() != 4)
        throw std::invalid_argument("perturbation must be TABLE:i:j:delta or TABLE:i:delta, got '" + text + "'");
    Perturbation pert;
    pert.table = parts[0];
    pert.i = std::stoi(parts[1]);
    pert.j = parts.size() == 4 ? std::stoi(parts[2]) : 1;
    pert.delta = parse_rational(parts.back());
    return pert;
}

void apply_perturbation(ClosedForms& cf, const Perturbation& pert)
{
    auto in_range = [](int v) { return v >= 1 && v <= 6; };
    if (!in_range(pert.i) || !in_range(pert.j)) throw std::invalid_argument("perturbation index outside 1..6");
    const int i = pert.i - 1, j = pert.j - 1;
    const std::string& t = pert.table;
    if (t == "C") cf.mats.C(i, j) += pert.delta;
    else if (t == "H") cf.mats.H(i, j) += pert.delta;
    else if (t == "G") cf.mats.G(i, j) += pert.delta;
    else if (t == "lambda") cf.scalars.lambda(i) += pert.delta;
    else if (t == "mu") cf.scalars.mu(i) += pert.delta;
    else if (t == "gamma") cf.scalars.gamma(i) += pert.delta;
    else if (t == "eta") cf.scalars.eta(i) += pert.delta;
    else if (t == "vartheta") cf.scalars.vartheta(i) += pert.delta;
    else if (t == "osize") cf.mats.osize(i) += pert.delta;
    else if (t.size() > 1 && t[0] == 'D') {
        const int l = std::stoi(t.substr(1));
        auto it = cf.mats.Dmat.find(l);
        if (it == cf.mats.Dmat.end()) throw std::invalid_argument("no distance matrix D" + std::to_string(l));
        it->second(i, j) += pert.delta;
    } else {
        throw std::invalid_argument("unknown table '" + t + "'");
    }
}

}  // namespace bsc
