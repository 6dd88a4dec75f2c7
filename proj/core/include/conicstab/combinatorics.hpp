#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conicstab/polynomial.hpp"
#include "conicstab/symmetric.hpp"

namespace conicstab {

using SupportSet = std::set<ExponentVec>;

// L1 distance of integer vectors.
long l1_distance(const ExponentVec& a, const ExponentVec& b);

// Signed unit steps sigma with |alpha + sigma - beta| = |alpha - beta| - 1.
// alpha and beta must differ.
std::vector<ExponentVec> steps_between(const ExponentVec& alpha, const ExponentVec& beta);

struct JumpSystemWitness {
    ExponentVec alpha;
    ExponentVec beta;
    ExponentVec sigma;
};

struct JumpSystemReport {
    bool is_jump_system = true;
    std::optional<JumpSystemWitness> witness;  // lexicographically least failure
};

// Exhaustive two-steps axiom check over all ordered pairs.
JumpSystemReport is_jump_system(const SupportSet& points);

// ---- binomial classification ----

enum class StableBinomialForm {
    constant_times_variable,  // {0, e_i}
    two_variables,            // {e_i, e_j} with nonnegative real ratio
    constant_plus_product,    // {0, e_i + e_j} with negative real ratio
    violates
};

struct StableBinomialReport {
    StableBinomialForm form = StableBinomialForm::violates;
    bool ratio_ok = true;       // false when only the coefficient condition fails
    ExponentVec common_factor;  // componentwise minimum stripped before matching
    std::string detail;
};

// Necessary support-and-ratio conditions for stability of a two-term
// polynomial.  Coefficients must be nonzero.
StableBinomialReport classify_stable_binomial(const ExponentVec& alpha, const ExponentVec& beta,
                                              Complex c_alpha, Complex c_beta);

enum class PsdBinomialForm {
    diagonal,          // diagonal residual pair passing the one-variable-per-entry rules
    offdiag_square,    // {z_ii z_jj, z_ij^2} with real coefficient ratio
    violates
};

struct PsdBinomialReport {
    PsdBinomialForm form = PsdBinomialForm::violates;
    bool ratio_ok = true;
    ExponentVec common_factor;  // must be diagonal for any non-violating form
    std::string detail;
};

// Necessary conditions for psd-stability of a two-term polynomial over
// symmetric-matrix variables.  f must have exactly two terms.
PsdBinomialReport classify_psd_binomial(const Polynomial& f, const SymVarSpace& space);

// ---- support structure over symmetric variables ----

struct StructureReport {
    bool ok = true;
    // First (i, j) with i < j, 0-based, such that z_ij occurs but z_ii or
    // z_jj does not occur anywhere in f.
    std::optional<std::pair<int, int>> violation;
};

// Every occurring off-diagonal variable needs both matching diagonal
// variables somewhere in the polynomial.
StructureReport structure_check(const Polynomial& f, const SymVarSpace& space);

struct NonMixedReport {
    bool is_non_mixed = false;   // every term purely diagonal or purely off-diagonal
    bool homogeneous = false;
    int degree = -1;
    bool has_offdiagonal_term = false;
    // Cleared when homogeneous non-mixed of degree >= 3 with an off-diagonal
    // term: such polynomials cannot be psd-stable.
    bool hom_degree_bound_ok = true;
    // For degree 2: every off-diagonal monomial is a pure square z_ij^2.
    std::optional<bool> degree2_form_ok;
    // Set when the structure alone rules out psd-stability.
    bool licensed_not_psd_stable = false;
    std::string detail;
};

NonMixedReport non_mixed_analysis(const Polynomial& f, const SymVarSpace& space);

// ---- polynomials in determinants of diagonal blocks ----

// f = sum_alpha c_alpha * prod_i det(Z_i)^{alpha_i} over consecutive
// diagonal blocks of the stated sizes.
struct DetBlockSpec {
    std::vector<int> block_sizes;
    std::map<ExponentVec, Complex> terms;  // exponent over blocks -> coefficient

    int block_count() const { return static_cast<int>(block_sizes.size()); }
    int matrix_order() const;
};

struct DetSupportReport {
    ExponentVec gamma;          // componentwise minimum over the support
    SupportSet residual;        // support shifted by -gamma
    bool jump_system = false;
    std::optional<JumpSystemWitness> jump_witness;
    bool block_size_ok = true;  // blocks appearing in the residual have size <= 2
    std::optional<int> oversized_block;
    bool interval_property = true;  // residual exponent ranges of size-2 blocks are intervals
    std::optional<std::pair<ExponentVec, int>> interval_witness;  // (beta, block)
};

DetSupportReport det_support_analysis(const DetBlockSpec& spec);

// Expansion into the polynomial over the full symmetric space.
Polynomial expand_det_blocks(const DetBlockSpec& spec);

// Sum of c_J det(Z_J) over principal minors, det over the empty set being 1.
// Subsets are encoded as bitmasks over 0-based indices.
Polynomial lpm_polynomial(int order, const std::map<unsigned, Complex>& coefficients);

// ---- monomial step search ----

enum class StepKind { linear, double_step, transposition };

struct MonomialStep {
    StepKind kind;
    ExponentVec delta;
    ExponentVec landed;
    long distance_after;  // L1 distance to the target
};

struct StepSearchResult {
    bool found = false;
    ExponentVec start;
    ExponentVec target;
    std::vector<MonomialStep> steps;
    std::size_t nodes_explored = 0;
};

// Breadth-first search from beta to a diagonal support monomial, moving only
// inside supp(f) with strict L1 distance decrease at every step.  Steps are
// multiplications by z_ij^{+-1} (linear), by two such factors (double), or by
// z_ij z_kl / (z_ik z_jl) (transposition).  Diagonal targets are tried in
// increasing distance order.  beta must lie in the support.
StepSearchResult conjecture_search(const Polynomial& f, const SymVarSpace& space,
                                   const ExponentVec& beta);

}  // namespace conicstab
