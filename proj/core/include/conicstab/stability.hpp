#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conicstab/polynomial.hpp"
#include "conicstab/symmetric.hpp"

namespace conicstab {

// Convex cones the falsifier can sample: the nonnegative orthant, a
// finitely generated cone, the cone of positive semidefinite symmetric
// matrices (over the flat upper-triangle variables), and the product of a
// psd cone with an orthant factor (used when a psd problem is lifted by
// extra nonnegative variables).
struct ConeSpec {
    enum class Kind { orthant, polyhedral, psd, psd_orthant };

    Kind kind = Kind::orthant;
    int dim = 0;    // ambient (flat) dimension
    int order = 0;  // matrix order for psd kinds
    int extra = 0;  // orthant factor width for psd_orthant
    std::vector<std::vector<double>> generators;  // polyhedral only

    static ConeSpec orthant(int n);
    static ConeSpec polyhedral(std::vector<std::vector<double>> gens);
    static ConeSpec psd(int matrix_order);
    static ConeSpec psd_times_orthant(int matrix_order, int extra);

    // K x R_{>=0}, with the new coordinate appended last.
    ConeSpec lifted() const;

    std::string describe() const;
};

struct InteriorSample {
    std::vector<double> point;
    double certificate;  // min entry / min weight / min eigenvalue
};

namespace detail {

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic per-(seed, stream) random source.  Distribution code is
// explicit so fixed seeds give identical values on any platform.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream);
    double uniform01();
    double uniform(double a, double b);
    double normal();
    Complex unit_disc();

private:
    std::uint64_t state_;
};

}  // namespace detail

InteriorSample sample_interior(const ConeSpec& cone, detail::TrialRng& rng);

// ---- univariate root finding ----

struct RootResult {
    std::vector<Complex> roots;
    bool converged = true;
    int iterations = 0;
    int zero_roots = 0;  // roots deflated at the origin
};

struct RootFindingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Aberth-Ehrlich simultaneous iteration; coefficients in increasing degree.
// Leading near-zero coefficients are deflated first; the remaining degree
// must be at least 1.
RootResult univariate_roots(std::vector<Complex> coeffs);

enum class UnivariateStability { stable, unstable, identically_zero };

struct UnivariateVerdict {
    UnivariateStability status;
    std::optional<Complex> witness_root;  // root of largest imaginary part when unstable
};

// Stable means no root with imaginary part above the threshold; constants
// are stable, the zero polynomial is reported separately.  Throws
// RootFindingError when the iteration does not converge.
UnivariateVerdict univariate_is_stable(const std::vector<Complex>& coeffs,
                                       double im_threshold = 1e-7);

// ---- cone stability falsifier ----

struct FalsifierOptions {
    std::uint64_t trials = 400;
    std::uint64_t seed = 0;
    double root_tol = 1e-9;         // relative residual accepted from the root finder
    double im_threshold = 1e-7;     // minimum imaginary part for a candidate root
    double interior_margin = 1e-7;  // required interior certificate of a witness
    double residual_scale = 1e-8;   // witness residual bound: scale * (1 + |f|_1)
};

struct Witness {
    std::vector<Complex> point;  // flat coordinates
    double residual = 0.0;
    double interior_margin = 0.0;
    std::uint64_t trial = 0;
    bool from_prepass = false;
};

// One-sided verdict: a counterexample is a verified root with interior
// imaginary part; "clean" only means no counterexample was found in the
// given number of trials.
struct StabilityVerdict {
    bool counterexample = false;
    std::optional<Witness> witness;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t degenerate_trials = 0;    // constant or identically zero restrictions
    std::uint64_t nonconverged_trials = 0;  // root finder gave up
    std::string note;
};

// Random line search: real base point, interior direction, univariate roots
// of the restriction, candidate reconstruction and independent
// re-verification of residual and interior margin.
StabilityVerdict check_cone_stability(const Polynomial& f, const ConeSpec& cone,
                                      const FalsifierOptions& options = {});

// psd cone specialization with a deterministic pre-pass that evaluates at
// i*I_n and at i times a sampled positive definite matrix before the random
// trials.
StabilityVerdict check_psd_stability(const Polynomial& f, const SymVarSpace& space,
                                     const FalsifierOptions& options = {});

}  // namespace conicstab
