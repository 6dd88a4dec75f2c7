#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "conicstab/polynomial.hpp"
#include "conicstab/stability.hpp"
#include "conicstab/symmetric.hpp"

namespace conicstab {

// Declared variable space of a polynomial: a plain vector of variables or
// the upper triangle of a symmetric matrix.
struct PolySpace {
    enum class Kind { vector_space, symmetric_space };
    Kind kind = Kind::vector_space;
    int n = 1;  // variable count (vector) or matrix order (symmetric)

    static PolySpace vector_space(int nvars) { return {Kind::vector_space, nvars}; }
    static PolySpace symmetric_space(int order) { return {Kind::symmetric_space, order}; }

    bool symmetric() const { return kind == Kind::symmetric_space; }
    int var_count() const { return symmetric() ? n * (n + 1) / 2 : n; }
    SymVarSpace sym() const;
    std::string describe() const;
};

// ---- transform argument structs ----

struct PermuteSpec {
    std::vector<int> pi;  // 0-based permutation of variables
};
struct ScaleSpec {
    Complex c{1.0, 0.0};
    std::vector<double> a;  // componentwise positive
};
struct IdentifySpec {
    int i = 0, j = 1;  // substitute z_j := z_i, 0-based; j is removed
};
struct SpecializeSpec {
    int i = 0;  // variable removed
    Complex b{0.0, 0.0};  // requires Im(b) >= 0
};
struct InvertSpec {
    int i = 0;  // z_i^{deg_i f} f(..., -1/z_i, ...)
};
struct DifferentiateSpec {
    int i = 0;
};
struct DirDerivativeSpec {
    std::vector<double> v;
};
struct AffineSpec {
    std::vector<Complex> a;
    std::vector<std::vector<double>> dirs;
};
struct InitialFormSpec {
    std::vector<double> w;
};
struct PsdDiagSpec {};
struct PsdMinorSpec {
    std::vector<int> J;  // 0-based indices
};
struct PsdCongruenceSpec {
    Eigen::MatrixXd S;
    CongruenceKind kind = CongruenceKind::transpose;
};
struct PsdPermuteSpec {
    std::vector<int> pi;  // 0-based permutation of matrix indices
};
struct PsdDirDerivativeSpec {
    Eigen::MatrixXd V;  // symmetric; guarantee needs V psd
};
struct PsdInversionSpec {
    std::vector<int> blocks;  // empty: whole matrix
};
struct PsdInitialFormSpec {
    Eigen::MatrixXd W;  // symmetric; guarantee needs W positive definite
};
struct LiebSokalSpec {
    Polynomial g;           // same space as f
    std::vector<double> v;  // direction in the cone; requires rho_v(f) <= 1
    LiebSokalSpec() : g(1) {}
};

using PreserverSpec =
    std::variant<PermuteSpec, ScaleSpec, IdentifySpec, SpecializeSpec, InvertSpec,
                 DifferentiateSpec, DirDerivativeSpec, AffineSpec, InitialFormSpec, PsdDiagSpec,
                 PsdMinorSpec, PsdCongruenceSpec, PsdPermuteSpec, PsdDirDerivativeSpec,
                 PsdInversionSpec, PsdInitialFormSpec, LiebSokalSpec>;

std::string preserver_name(const PreserverSpec& spec);

struct TransformOutput {
    Polynomial poly;
    PolySpace space;
    std::optional<std::string> warning;

    TransformOutput() : poly(1) {}
    TransformOutput(Polynomial p, PolySpace s, std::optional<std::string> w = std::nullopt)
        : poly(std::move(p)), space(s), warning(std::move(w)) {}
};

// Applies the transform; validates parameters against the declared space.
TransformOutput apply(const PreserverSpec& spec, const Polynomial& f, const PolySpace& space);

// g - d_v f, defined when rho_v(f) <= 1 (checked; measured value reported on
// rejection).  A zero f passes trivially.
struct LiebSokalRejection : std::invalid_argument {
    int measured_degree;
    explicit LiebSokalRejection(int deg)
        : std::invalid_argument("directional degree exceeds 1"), measured_degree(deg) {}
};
Polynomial lieb_sokal_transform(const Polynomial& g, const Polynomial& f,
                                std::span<const double> v);

// Samples Im(g(z)/f(z)) over points with interior imaginary part; negative
// values witness failure of the ratio nonnegativity that characterizes
// one-degree liftability g + y f.
struct RatioReport {
    double min_imag = std::numeric_limits<double>::infinity();
    std::optional<std::vector<Complex>> violation_point;
    std::uint64_t samples = 0;
    std::uint64_t skipped = 0;  // |f| too small at the sample
};
RatioReport ratio_condition_check(const Polynomial& g, const Polynomial& f, const ConeSpec& cone,
                                  std::uint64_t trials, std::uint64_t seed);

// ---- audited application ----

struct AuditReport {
    std::string transform;
    std::string guarantee;       // statement that licenses the transform
    bool guarantee_applies = false;  // parameter/cone preconditions hold
    std::string precondition_note;
    StabilityVerdict input_verdict;
    TransformOutput output;
    ConeSpec output_cone;
    bool output_is_zero = false;
    std::optional<StabilityVerdict> output_verdict;
    // False only on guarantee-covered clean input with a verified output
    // counterexample; the reportable soundness event.
    bool agreement = true;
};

// Falsifies both sides of the transform.  The check is one-directional:
// a counterexample for the input makes any output verdict uninformative.
AuditReport audit(const PreserverSpec& spec, const Polynomial& f, const PolySpace& space,
                  const ConeSpec& cone, const FalsifierOptions& options = {});

}  // namespace conicstab
