#pragma once

// Closed-form parameters of the bilinear forms graph H_q(D, N-D) and of the
// six-class partition of a local graph relative to a vertex at distance k.
//
// Index convention: the six partition classes are numbered 1..6 in the
// public vocabulary (PartitionClass::O1 .. O6). Eigen storage is 0-based, so
// class Oi lives at index i-1; use `idx()` to convert.

#include "bsc/exact.hpp"
#include "bsc/report.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsc {

enum class PartitionClass : int { O1 = 1, O2, O3, O4, O5, O6 };

constexpr int idx(PartitionClass c) noexcept { return static_cast<int>(c) - 1; }
constexpr int idx(int one_based) noexcept { return one_based - 1; }

class InvalidParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when two independent evaluations of the same table disagree.
class InconsistentTables : public std::logic_error {
public:
    InconsistentTables(std::string table, const std::string& detail)
        : std::logic_error("closed-form table '" + table + "' disagrees with its second evaluation: " + detail),
          table_(std::move(table))
    {
    }
    const std::string& table() const noexcept { return table_; }

private:
    std::string table_;
};

struct GraphParams {
    int q = 3;
    int D = 3;
    int N = 7;

    int cols() const noexcept { return N - D; }
    BigInt vertex_count() const;  ///< q^{D(N-D)}

    /// Throws InvalidParameters unless N > 2D >= 6 and q is an odd prime.
    void validate() const;
    /// Throws InvalidParameters unless 2 <= k <= D-1.
    void validate_distance(int k) const;
};

struct IntersectionNumbers {
    BigInt c, a, b;
};

/// c_i, a_i, b_i with c_0 = 0 and b_D = 0. Throws for i outside [0, D].
IntersectionNumbers intersection_numbers(const GraphParams& p, int i);

BigInt valency(const GraphParams& p);
/// |Gamma_i(x)| = b_0...b_{i-1} / (c_1...c_i).
BigInt sphere_size(const GraphParams& p, int i);

struct Spectrum {
    std::vector<Rational> theta;       ///< eigenvalues theta_0 > ... > theta_D
    std::vector<Rational> theta_star;  ///< dual eigenvalues for the theta_1 idempotent

    /// theta*_i, with theta*_i = 0 outside [0, D] (those only ever multiply zero counts).
    const Rational& dual(int i) const;
};

Spectrum spectrum(const GraphParams& p);

/// Dimension of the theta_1 eigenspace, printed form (q^{N-D}-1)(q^D-1)/(q-1).
BigInt eigenspace_dimension(const GraphParams& p);

/// Krein parameter q^1_{11} = q^{N-D} + q^D - q - 2.
BigInt krein_q111(const GraphParams& p);

std::array<BigInt, 6> partition_sizes(const GraphParams& p, int k);

RatMatrix6 closed_form_C(const GraphParams& p, int k);
RatMatrix6 closed_form_H(const GraphParams& p, int k);
/// First printed form: G_ij = |O_i| (d_ij th*_0 + C_ij th*_1 + (|O_j| - C_ij - d_ij) th*_2).
RatMatrix6 closed_form_G(const GraphParams& p, int k);
/// Second printed form, with C transposed and the |O| roles swapped.
RatMatrix6 closed_form_G_transposed_form(const GraphParams& p, int k);
/// Distance-l counts from O_i into O'_j, l in {k-2, ..., k+2}.
RatMatrix6 closed_form_D(const GraphParams& p, int k, int l);

struct ScalarTables {
    int k = 0;
    RatVector6 lambda;
    RatVector6 mu;
    RatVector6 gamma;
    RatVector6 omega;
    RatVector6 eta;
    RatVector6 epsfac;
    RatVector6 vartheta;
    std::array<int, 6> eps_offset{};
};

struct ClosedFormMatrices {
    RatMatrix6 C;
    RatMatrix6 H;
    RatMatrix6 G;
    std::map<int, RatMatrix6> Dmat;  ///< keyed by l
    RatVector6 osize;
};

/// lambda_i = |O_i| (th*_1 - th*_{k+eps(i)}) / (th*_0 - th*_k).
RatVector6 lambda_from_dual_eigenvalues(const GraphParams& p, int k);
/// The factored closed forms for lambda.
RatVector6 lambda_closed_form(const GraphParams& p, int k);
/// mu_j = sum_i lambda_i H_ij.
RatVector6 mu_from_H(const RatVector6& lambda, const RatMatrix6& H);
RatVector6 mu_closed_form(const GraphParams& p, int k);
RatVector6 gamma_closed_form(const GraphParams& p, int k);
RatVector6 eta_closed_form(const GraphParams& p, int k);
RatVector6 epsfac_closed_form(const GraphParams& p);
RatVector6 vartheta_table(const GraphParams& p);
std::array<int, 6> eps_offset_table();

/// All scalar tables. lambda and mu are evaluated two ways; disagreement throws InconsistentTables.
ScalarTables scalar_tables(const GraphParams& p, int k);

/// Everything downstream consumes one bundle so that a perturbed copy
/// propagates to every check that depends on it.
struct ClosedForms {
    GraphParams params;
    int k = 0;
    BigInt vertex_count;
    Spectrum spec;
    ClosedFormMatrices mats;
    ScalarTables scalars;
};

ClosedForms evaluate_closed_forms(const GraphParams& p, int k);

/// Checks of the parameter suite that do not depend on k.
std::vector<CheckResult> verify_parameters(const GraphParams& p);

/// Exact checks of the relations among the closed-form tables in `cf`.
/// Failures are report entries carrying the failing indices (1-based).
std::vector<CheckResult> verify_closed_form_identities(const ClosedForms& cf);

/// Replaces one entry of a table, e.g. {"C", 1, 1, delta}. Index j is
/// ignored for vector tables. Used for mutation testing of the verifier.
struct Perturbation {
    std::string table;  ///< C, H, G, lambda, mu, gamma, eta, vartheta, osize, D<l>
    int i = 1;
    int j = 1;
    Rational delta = 1;
};

/// Parses "TABLE:i:j:delta" or "TABLE:i:delta".
Perturbation parse_perturbation(const std::string& text);
void apply_perturbation(ClosedForms& cf, const Perturbation& perturbation);

}  // namespace bsc
