#include "conicstab/preservers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conicstab {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool is_permutation(const std::vector<int>& pi, int n) {
    if (static_cast<int>(pi.size()) != n) return false;
    std::vector<bool> seen(n, false);
    for (int v : pi) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Complex ipow(Complex base, int e) {
    Complex acc{1.0, 0.0};
    for (int k = 0; k < e; ++k) acc *= base;
    return acc;
}

bool approx_symmetric(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) return false;
    const double scale = 1.0 + M.cwiseAbs().maxCoeff();
    return (M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * scale;
}

double min_eigenvalue(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd unflatten_direction(const SymVarSpace& space, std::span<const double> v) {
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(space.order(), space.order());
    for (int k = 0; k < space.var_count(); ++k) {
        auto [i, j] = space.index_pair(k);
        V(i, j) = v[k];
        V(j, i) = v[k];
    }
    return V;
}

// Nonnegative least squares by projected cyclic coordinate descent; good
// enough to certify membership of v in the cone spanned by the generators.
bool in_generated_cone(const std::vector<std::vector<double>>& gens, std::span<const double> v) {
    if (gens.empty()) return false;
    const int m = static_cast<int>(gens.size());
    const int n = static_cast<int>(v.size());
    std::vector<double> lambda(m, 0.0);
    std::vector<double> r(v.begin(), v.end());  // r = v - G lambda
    std::vector<double> sq(m, 0.0);
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < n; ++i) sq[a] += gens[a][i] * gens[a][i];
    for (int sweep = 0; sweep < 1000; ++sweep) {
        double moved = 0.0;
        for (int a = 0; a < m; ++a) {
            if (sq[a] <= 0.0) continue;
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += gens[a][i] * r[i];
            double next = std::max(0.0, lambda[a] + dot / sq[a]);
            double delta = next - lambda[a];
            if (delta == 0.0) continue;
            lambda[a] = next;
            for (int i = 0; i < n; ++i) r[i] -= delta * gens[a][i];
            moved += std::abs(delta);
        }
        if (moved < 1e-14) break;
    }
    double rnorm = 0.0, vnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        rnorm += r[i] * r[i];
        vnorm += v[i] * v[i];
    }
    return std::sqrt(rnorm) <= 1e-8 * (1.0 + std::sqrt(vnorm));
}

int cone_var_count(const ConeSpec& cone) {
    switch (cone.kind) {
        case ConeSpec::Kind::orthant:
        case ConeSpec::Kind::polyhedral:
            return cone.dim;
        case ConeSpec::Kind::psd:
            return cone.order * (cone.order + 1) / 2;
        case ConeSpec::Kind::psd_orthant:
            return cone.order * (cone.order + 1) / 2 + cone.extra;
    }
    return cone.dim;
}

// g + y f over n+1 variables, the new variable last.
Polynomial lift_pair(const Polynomial& g, const Polynomial& f) {
    const int n = f.nvars();
    Polynomial h(n + 1);
    for (const auto& [e, c] : g.terms()) {
        ExponentVec ne = e;
        ne.push_back(0);
        h += Polynomial::monomial(n + 1, ne, c);
    }
    for (const auto& [e, c] : f.terms()) {
        ExponentVec ne = e;
        ne.push_back(1);
        h += Polynomial::monomial(n + 1, ne, c);
    }
    return h;
}

}  // namespace

SymVarSpace PolySpace::sym() const {
    require(symmetric(), "space is not a symmetric matrix space");
    return SymVarSpace(n);
}

std::string PolySpace::describe() const {
    std::ostringstream os;
    os << (symmetric() ? "sym:" : "vector:") << n;
    return os.str();
}

std::string preserver_name(const PreserverSpec& spec) {
    struct Namer {
        std::string operator()(const PermuteSpec&) const { return "permute"; }
        std::string operator()(const ScaleSpec&) const { return "scale"; }
        std::string operator()(const IdentifySpec&) const { return "identify"; }
        std::string operator()(const SpecializeSpec&) const { return "specialize"; }
        std::string operator()(const InvertSpec&) const { return "invert"; }
        std::string operator()(const DifferentiateSpec&) const { return "differentiate"; }
        std::string operator()(const DirDerivativeSpec&) const { return "dir_derivative"; }
        std::string operator()(const AffineSpec&) const { return "affine"; }
        std::string operator()(const InitialFormSpec&) const { return "initial_form"; }
        std::string operator()(const PsdDiagSpec&) const { return "psd_diag"; }
        std::string operator()(const PsdMinorSpec&) const { return "psd_minor"; }
        std::string operator()(const PsdCongruenceSpec&) const { return "psd_congruence"; }
        std::string operator()(const PsdPermuteSpec&) const { return "psd_permute"; }
        std::string operator()(const PsdDirDerivativeSpec&) const { return "psd_dir_derivative"; }
        std::string operator()(const PsdInversionSpec&) const { return "psd_inversion"; }
        std::string operator()(const PsdInitialFormSpec&) const { return "psd_initial_form"; }
        std::string operator()(const LiebSokalSpec&) const { return "lieb_sokal"; }
    };
    return std::visit(Namer{}, spec);
}

namespace {

TransformOutput apply_permute(const PermuteSpec& s, const Polynomial& f, const PolySpace& space) {
    require(!space.symmetric(), "permute acts on vector spaces; use psd_permute");
    require(is_permutation(s.pi, space.n), "pi is not a permutation of the variables");
    Polynomial out(space.n);
    for (const auto& [e, c] : f.terms()) {
        ExponentVec ne(space.n, 0);
        for (int k = 0; k < space.n; ++k) ne[s.pi[k]] = e[k];
        out += Polynomial::monomial(space.n, ne, c);
    }
    return {out, space, std::nullopt};
}

TransformOutput apply_scale(const ScaleSpec& s, const Polynomial& f, const PolySpace& space) {
    require(!space.symmetric(), "scale acts on vector spaces; use psd_congruence");
    require(static_cast<int>(s.a.size()) == space.n, "scale vector length mismatch");
    Polynomial out(space.n);
    for (const auto& [e, c] : f.terms()) {
        Complex nc = c * s.c;
        for (int k = 0; k < space.n; ++k) nc *= ipow(Complex{s.a[k], 0.0}, e[k]);
        out += Polynomial::monomial(space.n, e, nc);
    }
    return {out, space, std::nullopt};
}

TransformOutput apply_identify(const IdentifySpec& s, const Polynomial& f,
                               const PolySpace& space) {
    require(!space.symmetric(), "identify acts on vector spaces");
    require(space.n >= 2, "identify needs at least two variables");
    require(s.i >= 0 && s.i < space.n && s.j >= 0 && s.j < space.n && s.i != s.j,
            "identify indices out of range");
    const int n = space.n;
    const int ti = s.i < s.j ? s.i : s.i - 1;  // index of z_i after removing slot j
    Polynomial out(n - 1);
    for (const auto& [e, c] : f.terms()) {
        ExponentVec ne;
        ne.reserve(n - 1);
        for (int k = 0; k < n; ++k)
            if (k != s.j) ne.push_back(e[k]);
        ne[ti] += e[s.j];
        out += Polynomial::monomial(n - 1, ne, c);
    }
    return {out, PolySpace::vector_space(n - 1), std::nullopt};
}

TransformOutput apply_specialize(const SpecializeSpec& s, const Polynomial& f,
                                 const PolySpace& space) {
    require(!space.symmetric(), "specialize acts on vector spaces");
    require(space.n >= 2, "specialize needs at least two variables");
    require(s.i >= 0 && s.i < space.n, "specialize index out of range");
    const int n = space.n;
    Polynomial out(n - 1);
    for (const auto& [e, c] : f.terms()) {
        ExponentVec ne;
        ne.reserve(n - 1);
        for (int k = 0; k < n; ++k)
            if (k != s.i) ne.push_back(e[k]);
        out += Polynomial::monomial(n - 1, ne, c * ipow(s.b, e[s.i]));
    }
    return {out, PolySpace::vector_space(n - 1), std::nullopt};
}

TransformOutput apply_invert(const InvertSpec& s, const Polynomial& f, const PolySpace& space) {
    require(!space.symmetric(), "invert acts on vector spaces; use psd_inversion");
    require(s.i >= 0 && s.i < space.n, "invert index out of range");
    if (f.is_zero()) return {f, space, std::nullopt};
    const int d = f.degree_in(s.i);
    Polynomial out(space.n);
    for (const auto& [e, c] : f.terms()) {
        ExponentVec ne = e;
        ne[s.i] = d - e[s.i];
        out += Polynomial::monomial(space.n, ne, (e[s.i] % 2 != 0) ? -c : c);
    }
    return {out, space, std::nullopt};
}

TransformOutput apply_affine(const AffineSpec& s, const Polynomial& f, const PolySpace& space) {
    require(!space.symmetric(), "affine acts on vector spaces");
    require(static_cast<int>(s.a.size()) == space.n, "affine base point length mismatch");
    require(!s.dirs.empty(), "affine needs at least one direction");
    for (const auto& d : s.dirs)
        require(static_cast<int>(d.size()) == space.n, "affine direction length mismatch");
    Polynomial out = f.affine_substitute(s.a, s.dirs);
    return {out, PolySpace::vector_space(static_cast<int>(s.dirs.size())), std::nullopt};
}

TransformOutput apply_lieb_sokal(const LiebSokalSpec& s, const Polynomial& f,
                                 const PolySpace& space) {
    require(s.g.nvars() == f.nvars(), "g and f live in different spaces");
    require(static_cast<int>(s.v.size()) == space.var_count(),
            "direction length does not match the space");
    return {lieb_sokal_transform(s.g, f, s.v), space, std::nullopt};
}

struct ApplyVisitor {
    const Polynomial& f;
    const PolySpace& space;

    TransformOutput operator()(const PermuteSpec& s) const { return apply_permute(s, f, space); }
    TransformOutput operator()(const ScaleSpec& s) const { return apply_scale(s, f, space); }
    TransformOutput operator()(const IdentifySpec& s) const { return apply_identify(s, f, space); }
    TransformOutput operator()(const SpecializeSpec& s) const {
        return apply_specialize(s, f, space);
    }
    TransformOutput operator()(const InvertSpec& s) const { return apply_invert(s, f, space); }
    TransformOutput operator()(const DifferentiateSpec& s) const {
        require(s.i >= 0 && s.i < space.var_count(), "differentiate index out of range");
        return {f.partial_derivative(s.i), space, std::nullopt};
    }
    TransformOutput operator()(const DirDerivativeSpec& s) const {
        require(!space.symmetric(), "dir_derivative acts on vector spaces");
        require(static_cast<int>(s.v.size()) == space.n, "direction length mismatch");
        return {f.directional_derivative(s.v), space, std::nullopt};
    }
    TransformOutput operator()(const AffineSpec& s) const { return apply_affine(s, f, space); }
    TransformOutput operator()(const InitialFormSpec& s) const {
        require(!space.symmetric(), "initial_form acts on vector spaces; use psd_initial_form");
        require(static_cast<int>(s.w.size()) == space.n, "weight length mismatch");
        return {f.initial_form(s.w), space, std::nullopt};
    }
    TransformOutput operator()(const PsdDiagSpec&) const {
        SymVarSpace sym = space.sym();
        return {diag_restriction(f, sym), PolySpace::vector_space(sym.order()), std::nullopt};
    }
    TransformOutput operator()(const PsdMinorSpec& s) const {
        SymVarSpace sym = space.sym();
        require(!s.J.empty(), "psd_minor needs a nonempty index set");
        std::vector<int> J = s.J;
        std::sort(J.begin(), J.end());
        require(std::adjacent_find(J.begin(), J.end()) == J.end(), "psd_minor indices repeat");
        require(J.front() >= 0 && J.back() < sym.order(), "psd_minor index out of range");
        return {minor_restriction(f, sym, J),
                PolySpace::symmetric_space(static_cast<int>(J.size())), std::nullopt};
    }
    TransformOutput operator()(const PsdCongruenceSpec& s) const {
        SymVarSpace sym = space.sym();
        require(s.S.rows() == sym.order() && s.S.cols() == sym.order(),
                "congruence matrix has the wrong size");
        CongruenceResult res = congruence_transform(f, sym, s.S, s.kind);
        return {res.poly, space, res.warning};
    }
    TransformOutput operator()(const PsdPermuteSpec& s) const {
        SymVarSpace sym = space.sym();
        require(is_permutation(s.pi, sym.order()), "pi is not a permutation of the indices");
        return {permute_indices(f, sym, s.pi), space, std::nullopt};
    }
    TransformOutput operator()(const PsdDirDerivativeSpec& s) const {
        SymVarSpace sym = space.sym();
        require(s.V.rows() == sym.order() && s.V.cols() == sym.order(),
                "direction matrix has the wrong size");
        require(approx_symmetric(s.V), "direction matrix is not symmetric");
        return {matrix_directional_derivative(f, sym, s.V), space, std::nullopt};
    }
    TransformOutput operator()(const PsdInversionSpec& s) const {
        SymVarSpace sym = space.sym();
        return {inversion_image(f, sym, s.blocks), space, std::nullopt};
    }
    TransformOutput operator()(const PsdInitialFormSpec& s) const {
        SymVarSpace sym = space.sym();
        require(s.W.rows() == sym.order() && s.W.cols() == sym.order(),
                "weight matrix has the wrong size");
        require(approx_symmetric(s.W), "weight matrix is not symmetric");
        return {frobenius_initial_form(f, sym, s.W), space, std::nullopt};
    }
    TransformOutput operator()(const LiebSokalSpec& s) const {
        return apply_lieb_sokal(s, f, space);
    }
};

}  // namespace

TransformOutput apply(const PreserverSpec& spec, const Polynomial& f, const PolySpace& space) {
    require(f.nvars() == space.var_count(), "polynomial does not match the declared space");
    return std::visit(ApplyVisitor{f, space}, spec);
}

Polynomial lieb_sokal_transform(const Polynomial& g, const Polynomial& f,
                                std::span<const double> v) {
    require(g.nvars() == f.nvars(), "g and f live in different spaces");
    require(static_cast<int>(v.size()) == f.nvars(), "direction length mismatch");
    if (!f.is_zero()) {
        const int d = f.degree_in_direction(v);
        if (d > 1) throw LiebSokalRejection(d);
    }
    return g - f.directional_derivative(v);
}

RatioReport ratio_condition_check(const Polynomial& g, const Polynomial& f, const ConeSpec& cone,
                                  std::uint64_t trials, std::uint64_t seed) {
    const int n = cone_var_count(cone);
    require(f.nvars() == n && g.nvars() == n, "cone dimension does not match the polynomials");
    RatioReport report;
    const double fscale = 1e-12 * (1.0 + f.coeff_one_norm());
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        detail::TrialRng rng(seed, trial);
        InteriorSample y = sample_interior(cone, rng);
        std::vector<Complex> z(n);
        for (int i = 0; i < n; ++i) z[i] = Complex{rng.normal(), y.point[i]};
        const Complex fz = f.evaluate(z);
        if (std::abs(fz) <= fscale) {
            ++report.skipped;
            continue;
        }
        const Complex r = g.evaluate(z) / fz;
        ++report.samples;
        if (r.imag() < report.min_imag) report.min_imag = r.imag();
        if (r.imag() < -1e-7 && !report.violation_point) report.violation_point = z;
    }
    return report;
}

namespace {

struct GuaranteeInfo {
    std::string statement;
    bool applies = true;
    std::string note;  // first failed precondition

    void demand(bool ok, const std::string& why) {
        if (!ok && applies) {
            applies = false;
            note = why;
        }
    }
};

GuaranteeInfo guarantee_for(const PreserverSpec& spec, const Polynomial& f,
                            const PolySpace& space, const ConeSpec& cone) {
    const bool orthant_cone = cone.kind == ConeSpec::Kind::orthant;
    const bool psd_cone = cone.kind == ConeSpec::Kind::psd;
    GuaranteeInfo info;

    struct Visitor {
        GuaranteeInfo& info;
        const Polynomial& f;
        const PolySpace& space;
        const ConeSpec& cone;
        bool orthant_cone;
        bool psd_cone;

        void operator()(const PermuteSpec&) {
            info.statement = "relabeling the variables preserves stability";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
        }
        void operator()(const ScaleSpec& s) {
            info.statement =
                "a nonzero constant multiple composed with positive variable scaling "
                "preserves stability";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
            info.demand(std::abs(s.c) > 0.0, "constant factor is zero");
            info.demand(std::all_of(s.a.begin(), s.a.end(), [](double x) { return x > 0.0; }),
                        "scale factors must be positive");
        }
        void operator()(const IdentifySpec&) {
            info.statement = "identifying two variables yields a stable or zero polynomial";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
        }
        void operator()(const SpecializeSpec& s) {
            info.statement =
                "fixing one variable at a point with nonnegative imaginary part yields a "
                "stable or zero polynomial";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
            info.demand(s.b.imag() >= -1e-12, "substituted value has negative imaginary part");
        }
        void operator()(const InvertSpec&) {
            info.statement = "degree-reflected inversion in one variable preserves stability";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
        }
        void operator()(const DifferentiateSpec&) {
            info.statement = "a partial derivative is stable or identically zero";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
        }
        void operator()(const DirDerivativeSpec& s) {
            info.statement =
                "the derivative along a direction in the closed cone is stable or zero";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
            info.demand(std::all_of(s.v.begin(), s.v.end(), [](double x) { return x >= -1e-12; }),
                        "direction leaves the closed orthant");
        }
        void operator()(const AffineSpec& s) {
            info.statement =
                "composing with an affine map whose base point has nonnegative imaginary "
                "parts and whose directions are componentwise nonnegative yields a stable "
                "or zero polynomial";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
            info.demand(std::all_of(s.a.begin(), s.a.end(),
                                    [](Complex x) { return x.imag() >= -1e-12; }),
                        "base point has a negative imaginary part");
            for (const auto& d : s.dirs)
                info.demand(std::all_of(d.begin(), d.end(), [](double x) { return x >= -1e-12; }),
                            "a direction leaves the closed orthant");
        }
        void operator()(const InitialFormSpec& s) {
            info.statement = "the initial form at a strictly positive weight is stable";
            info.demand(orthant_cone, "stated for the nonnegative orthant");
            info.demand(std::all_of(s.w.begin(), s.w.end(), [](double x) { return x > 0.0; }),
                        "weight is not strictly positive");
        }
        void operator()(const PsdDiagSpec&) {
            info.statement = "restriction to diagonal matrices maps psd-stable to stable";
            info.demand(psd_cone, "stated for the psd cone");
        }
        void operator()(const PsdMinorSpec&) {
            info.statement = "restriction to a principal submatrix preserves psd-stability";
            info.demand(psd_cone, "stated for the psd cone");
        }
        void operator()(const PsdCongruenceSpec& s) {
            info.statement = "congruence by an invertible real matrix preserves psd-stability";
            info.demand(psd_cone, "stated for the psd cone");
            if (s.kind == CongruenceKind::inverse) {
                Eigen::MatrixXd gram = s.S * s.S.transpose();
                gram -= Eigen::MatrixXd::Identity(s.S.rows(), s.S.cols());
                info.demand(gram.cwiseAbs().maxCoeff() <= 1e-9,
                            "similarity form is only covered for orthogonal matrices");
            }
        }
        void operator()(const PsdPermuteSpec&) {
            info.statement =
                "simultaneous row and column permutation preserves psd-stability";
            info.demand(psd_cone, "stated for the psd cone");
        }
        void operator()(const PsdDirDerivativeSpec& s) {
            info.statement =
                "the derivative along a psd direction is psd-stable or identically zero";
            info.demand(psd_cone, "stated for the psd cone");
            info.demand(min_eigenvalue(s.V) >= -1e-9, "direction matrix is not psd");
        }
        void operator()(const PsdInversionSpec&) {
            info.statement =
                "the determinant-reflected inversion image preserves psd-stability";
            info.demand(psd_cone, "stated for the psd cone");
        }
        void operator()(const PsdInitialFormSpec& s) {
            info.statement =
                "the initial form at a positive definite weight is psd-stable";
            info.demand(psd_cone, "stated for the psd cone");
            info.demand(min_eigenvalue(s.W) > 1e-12, "weight matrix is not positive definite");
        }
        void operator()(const LiebSokalSpec& s) {
            info.statement =
                "if g + y f is stable on the cone extended by one nonnegative variable and "
                "f has degree at most one along v, then g minus the derivative of f along "
                "v is stable or zero";
            switch (cone.kind) {
                case ConeSpec::Kind::orthant:
                    info.demand(std::all_of(s.v.begin(), s.v.end(),
                                            [](double x) { return x >= -1e-12; }),
                                "direction leaves the closed orthant");
                    break;
                case ConeSpec::Kind::psd:
                    info.demand(min_eigenvalue(unflatten_direction(SymVarSpace(cone.order), s.v)) >=
                                    -1e-9,
                                "direction matrix is not psd");
                    break;
                case ConeSpec::Kind::polyhedral:
                    info.demand(in_generated_cone(cone.generators, s.v),
                                "direction is not a nonnegative combination of the generators");
                    break;
                case ConeSpec::Kind::psd_orthant:
                    info.demand(false, "product cones are not audited directly");
                    break;
            }
        }
    };

    std::visit(Visitor{info, f, space, cone, orthant_cone, psd_cone}, spec);
    return info;
}

ConeSpec cone_after(const PreserverSpec& spec, const ConeSpec& cone, const PolySpace& out_space) {
    if (std::holds_alternative<IdentifySpec>(spec) || std::holds_alternative<SpecializeSpec>(spec) ||
        std::holds_alternative<AffineSpec>(spec))
        return ConeSpec::orthant(out_space.var_count());
    if (std::holds_alternative<PsdDiagSpec>(spec))
        return ConeSpec::orthant(out_space.var_count());
    if (std::holds_alternative<PsdMinorSpec>(spec)) return ConeSpec::psd(out_space.n);
    return cone;
}

StabilityVerdict check_in_cone(const Polynomial& f, const PolySpace& space, const ConeSpec& cone,
                               const FalsifierOptions& options) {
    if (cone.kind == ConeSpec::Kind::psd && space.symmetric() && cone.order == space.n)
        return check_psd_stability(f, space.sym(), options);
    return check_cone_stability(f, cone, options);
}

}  // namespace

AuditReport audit(const PreserverSpec& spec, const Polynomial& f, const PolySpace& space,
                  const ConeSpec& cone, const FalsifierOptions& options) {
    require(f.nvars() == space.var_count(), "polynomial does not match the declared space");
    require(cone_var_count(cone) == space.var_count(),
            "cone dimension does not match the declared space");

    AuditReport report;
    report.transform = preserver_name(spec);

    GuaranteeInfo info = guarantee_for(spec, f, space, cone);
    report.guarantee = info.statement;
    report.guarantee_applies = info.applies;
    report.precondition_note = info.note;

    if (const auto* ls = std::get_if<LiebSokalSpec>(&spec)) {
        // The hypothesis concerns the pair lifted by one nonnegative variable.
        Polynomial h = lift_pair(ls->g, f);
        report.input_verdict = check_cone_stability(h, cone.lifted(), options);
    } else {
        report.input_verdict = check_in_cone(f, space, cone, options);
    }

    report.output = apply(spec, f, space);
    report.output_cone = cone_after(spec, cone, report.output.space);
    report.output_is_zero = report.output.poly.is_zero();

    if (!report.output_is_zero)
        report.output_verdict =
            check_in_cone(report.output.poly, report.output.space, report.output_cone, options);

    const bool input_clean = !report.input_verdict.counterexample;
    const bool output_falsified =
        report.output_verdict.has_value() && report.output_verdict->counterexample;
    report.agreement = !(report.guarantee_applies && input_clean && output_falsified);
    return report;
}

}  // namespace conicstab
