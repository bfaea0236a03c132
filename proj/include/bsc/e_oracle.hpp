#pragma once

// Exact inner products of E-images of formal sums of vertices:
// <E u, E v> = |X|^{-1} sum_{a,b} u_a v_b theta*_{d(a,b)}.
//
// Two evaluation paths. VertexSum is the general one (a coefficient per
// vertex, distances by rank). For the identities on x, y and the two
// partitions, every vector is a combination of 14 atoms
// (x^, y^, O^_1..6, O'^_1..6); their Gram matrix is counted once from the
// graph and every identity becomes a quadratic form in it.

#include "bsc/local.hpp"
#include "bsc/params.hpp"
#include "bsc/report.hpp"

#include <map>
#include <vector>

namespace bsc {

class VertexSum {
public:
    VertexSum() = default;
    static VertexSum single(const MatVertex& v, const Rational& c = 1);

    void add(const MatVertex& v, const Rational& c);
    VertexSum& operator+=(const VertexSum& o);
    VertexSum& operator-=(const VertexSum& o);
    VertexSum& operator*=(const Rational& c);
    friend VertexSum operator+(VertexSum a, const VertexSum& b) { return a += b; }
    friend VertexSum operator-(VertexSum a, const VertexSum& b) { return a -= b; }
    friend VertexSum operator*(const Rational& c, VertexSum a) { return a *= c; }

    const std::map<MatVertex, Rational>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

private:
    std::map<MatVertex, Rational> terms_;  // zero coefficients are never stored
};

/// <E u, E v>, exact. Terms are grouped by coefficient, so the rational work is
/// one multiply per (group pair, distance).
Rational e_inner(const GraphParams& p, const VertexSum& u, const VertexSum& v, int threads = 1);
bool e_norm_zero(const GraphParams& p, const VertexSum& u, int threads = 1);
RatMatrixX gram(const GraphParams& p, const std::vector<VertexSum>& vs, int threads = 1);

constexpr int kAtoms = 14;
enum Atom : int { atom_x = 0, atom_y = 1, atom_O = 2, atom_Oprime = 8 };
using AtomVector = Eigen::Matrix<Rational, kAtoms, 1>;
using AtomMatrix = Eigen::Matrix<Rational, kAtoms, kAtoms>;

AtomVector atom_unit(int atom);
AtomVector atom_x_hat();
AtomVector atom_y_hat();
/// O^_i (i = 0..5) and O'^_i.
AtomVector atom_class(int i);
AtomVector atom_class_prime(int i);

struct AtomGram {
    GraphParams params;
    int k = 0;
    BigInt vertex_count;
    /// hist[a][b][d] = number of pairs (u in supp a, v in supp b) with d(u, v) = d.
    std::vector<std::vector<std::vector<std::int64_t>>> hist;
    AtomMatrix scaled;  ///< |X| <E a, E b>

    Rational inner(const AtomVector& u, const AtomVector& v) const;
    Rational norm2(const AtomVector& u) const { return inner(u, u); }
};

/// Counts all atom-pair distance histograms from the context.
AtomGram build_atom_gram(const LocalContext& ctx);

/// Materialises an atom combination as a VertexSum.
VertexSum lift_atoms(const LocalContext& ctx, const AtomVector& u);

/// The vanishing-norm and inner-product identities on x^, y^ and the partitions.
std::vector<CheckResult> verify_e_identities(const AtomGram& ag, const ClosedForms& cf);

/// Nonvanishing scalars, f(A) = J on the local graph and a Gram determinant of
/// six random neighbours of x.
std::vector<CheckResult> verify_local_basis(const LocalContext& ctx, const ClosedForms& cf, std::uint64_t seed);

}  // namespace bsc
