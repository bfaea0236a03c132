#pragma once

// Brute-force triple sums <Eu * Ev, Ew> = sum_z f_u(z) f_v(z) f_w(z) with
// f_u(z) = |X|^{-1} sum_a u_a theta*_{d(a, z)}, over every vertex z.
//
// The sums are linear combinations of fixed vertex groups (for example the
// atoms x, y, O_i, O'_i). Each z is reduced to its signature, the number of
// group members at each distance; z with equal signatures contribute equally,
// so the exact rational work is one term per distinct signature.

#include "bsc/dense_space.hpp"
#include "bsc/e_oracle.hpp"
#include "bsc/norton.hpp"

namespace bsc {

class HeavyOracle {
public:
    /// Throws InvalidParameters when |X| exceeds `limit`.
    static HeavyOracle build(const GraphParams& p, const std::vector<std::vector<MatVertex>>& groups, int threads = 1,
                             std::uint64_t limit = kMaxAuditVertices);
    /// Groups {x}, {y}, O_1..O_6, O'_1..O'_6 in atom order.
    static HeavyOracle for_atoms(const LocalContext& ctx, std::uint64_t limit = kMaxAuditVertices);

    std::size_t group_count() const noexcept { return groups_; }
    std::size_t signature_count() const noexcept { return sigs_.size(); }
    /// Triple sum for coefficient vectors over the groups.
    Rational triple(const RatMatrixX& u, const RatMatrixX& v, const RatMatrixX& w) const;
    Rational triple(const AtomVector& u, const AtomVector& v, const AtomVector& w) const;

private:
    struct Signature {
        std::vector<std::uint32_t> counts;  // group-major, D+1 distances each
        std::int64_t multiplicity = 0;
    };
    std::vector<Rational> values(const RatMatrixX& coeffs) const;

    GraphParams params_;
    std::size_t groups_ = 0;
    std::vector<Rational> theta_star_;
    Rational X_;
    std::vector<Signature> sigs_;
};

/// <Eu * Ev, Ew> for arbitrary finite vertex sums.
Rational brute_triple(const GraphParams& p, const VertexSum& u, const VertexSum& v, const VertexSum& w, int threads = 1);

/// Calibration and cross-validation of the operators against the brute-force
/// sums; every entry is skipped with the vertex count when |X| is too large.
std::vector<CheckResult> heavy_checks(const NortonOps& ops, const LocalContext& ctx, std::uint64_t seed);

/// Necessary-condition probe for Sym(S) * Sym(S) in Sym(S): status is
/// consistent or refuted, never pass.
std::vector<CheckResult> conjecture_probe(const NortonOps& ops, const LocalContext& ctx);

/// The same, reusing an already built atom oracle.
std::vector<CheckResult> heavy_checks(const NortonOps& ops, const HeavyOracle& oracle, std::uint64_t seed);
std::vector<CheckResult> conjecture_probe(const NortonOps& ops, const HeavyOracle& oracle);

}  // namespace bsc
