#pragma once

// Coordinates of the named vectors of S in the basis E O^_1..E O^_6, the Gram
// form G/|X|, the swap map and the Sym/ASym decomposition. Built from the
// closed-form tables only.

#include "bsc/e_oracle.hpp"
#include "bsc/params.hpp"
#include "bsc/report.hpp"

#include <array>

namespace bsc {

using SVector = RatVector6;

struct SModel {
    GraphParams params;
    int k = 0;
    Rational X;  ///< |X|
    Spectrum spec;
    ScalarTables scalars;
    RatMatrix6 C, H, G;
    RatMatrix6 T;  ///< column j = coordinates of E O'^_j; also the swap map
    SVector x, y, omega;
    std::array<SVector, 6> h, hprime, hvee, ovee, O, Oprime;

    SVector asym() const { return x - y; }
    SVector sigma(const SVector& u) const { return T * u; }
};

/// Throws InvalidParameters if T is singular.
SModel build_s_model(const ClosedForms& cf);

Rational s_inner(const SModel& m, const SVector& u, const SVector& v);

struct SymAsym {
    SVector sym, asym;
};
SymAsym decompose(const SModel& m, const SVector& u);

/// Rank under G of a family of coordinate vectors.
Eigen::Index s_rank(const SModel& m, const std::vector<SVector>& vs);

std::vector<CheckResult> verify_s_model(const SModel& m);

/// The model against counted inner products: s_inner(u, v) = <E lift(u), E lift(v)>
/// for random u, v, and the model's y coordinates lift to Ey.
CheckResult verify_s_model_faithful(const SModel& m, const AtomGram& ag, std::uint64_t seed, int pairs = 10);

/// Lift of O^-coordinates to an atom combination.
AtomVector lift(const SVector& u);

/// Exact JSON export ("num/den" strings).
json export_s_model(const SModel& m);

}  // namespace bsc
