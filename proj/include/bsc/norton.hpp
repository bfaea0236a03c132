#pragma once

// Norton multiplication by E x^ and E y^ as exact operators on S-coordinates:
// Lx = C/|X| in the O^ basis and Ly = T Lx T. Products of other pairs are
// never formed here; they go to the brute-force oracle in heavy.hpp.

#include "bsc/s_model.hpp"

#include <stdexcept>
#include <string>

namespace bsc {

class NortonInvariantError : public std::runtime_error {
public:
    NortonInvariantError(const std::string& what, json witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const json& witness() const noexcept { return witness_; }

private:
    json witness_;
};

struct NortonOps {
    SModel model;
    RatMatrix6 Lx, Ly;

    SVector star_x(const SVector& v) const { return Lx * v; }
    SVector star_y(const SVector& v) const { return Ly * v; }
    /// (x^ + y^) * v
    SVector star_b(const SVector& v) const { return Lx * v + Ly * v; }
    /// Right-associated word over {x, y}: "xy" is E x^ * E y^.
    SVector word(const std::string& w) const;
};

/// Throws NortonInvariantError unless Lx y^ = Ly x^.
NortonOps build_norton_ops(const SModel& m);

/// The SymStarASym scalars s_j with O^v_j * (x^ - y^) = (s_j/|X|)(x^ - y^).
std::array<Rational, 6> sym_star_asym_scalars(const GraphParams& p, int k);

std::vector<CheckResult> verify_norton_identities(const NortonOps& ops);
std::vector<CheckResult> verify_omega(const NortonOps& ops);
std::vector<CheckResult> verify_generation(const NortonOps& ops);

/// v(w) - v(w-bar) in span{x^ - y^} for every word of length 1..n_max, plus
/// v(w-bar) = sigma(v(w)).
std::vector<CheckResult> bbalanced_word_check(const NortonOps& ops, int n_max);

}  // namespace bsc
