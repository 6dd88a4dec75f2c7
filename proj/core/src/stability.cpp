#include "conicstab/stability.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace conicstab {

ConeSpec ConeSpec::orthant(int n) {
    if (n < 1) throw std::invalid_argument("cone dimension must be positive");
    ConeSpec c;
    c.kind = Kind::orthant;
    c.dim = n;
    return c;
}

ConeSpec ConeSpec::polyhedral(std::vector<std::vector<double>> gens) {
    if (gens.empty()) throw std::invalid_argument("polyhedral cone needs generators");
    const int n = static_cast<int>(gens.front().size());
    if (n < 1) throw std::invalid_argument("cone dimension must be positive");
    for (const auto& g : gens)
        if (static_cast<int>(g.size()) != n)
            throw std::invalid_argument("generator length mismatch");
    ConeSpec c;
    c.kind = Kind::polyhedral;
    c.dim = n;
    c.generators = std::move(gens);
    return c;
}

ConeSpec ConeSpec::psd(int matrix_order) {
    if (matrix_order < 1) throw std::invalid_argument("matrix order must be positive");
    ConeSpec c;
    c.kind = Kind::psd;
    c.order = matrix_order;
    c.dim = matrix_order * (matrix_order + 1) / 2;
    return c;
}

ConeSpec ConeSpec::psd_times_orthant(int matrix_order, int extra) {
    if (matrix_order < 1 || extra < 1) throw std::invalid_argument("invalid product cone sizes");
    ConeSpec c;
    c.kind = Kind::psd_orthant;
    c.order = matrix_order;
    c.extra = extra;
    c.dim = matrix_order * (matrix_order + 1) / 2 + extra;
    return c;
}

ConeSpec ConeSpec::lifted() const {
    switch (kind) {
        case Kind::orthant:
            return orthant(dim + 1);
        case Kind::polyhedral: {
            std::vector<std::vector<double>> gens;
            gens.reserve(generators.size() + 1);
            for (const auto& g : generators) {
                auto h = g;
                h.push_back(0.0);
                gens.push_back(std::move(h));
            }
            std::vector<double> last(dim + 1, 0.0);
            last[dim] = 1.0;
            gens.push_back(std::move(last));
            return polyhedral(std::move(gens));
        }
        case Kind::psd:
            return psd_times_orthant(order, 1);
        case Kind::psd_orthant:
            return psd_times_orthant(order, extra + 1);
    }
    throw std::logic_error("unreachable");
}

std::string ConeSpec::describe() const {
    char buf[64];
    switch (kind) {
        case Kind::orthant:
            std::snprintf(buf, sizeof(buf), "orthant(%d)", dim);
            return buf;
        case Kind::polyhedral:
            std::snprintf(buf, sizeof(buf), "polyhedral(%zu generators, dim %d)",
                          generators.size(), dim);
            return buf;
        case Kind::psd:
            std::snprintf(buf, sizeof(buf), "psd(%d)", order);
            return buf;
        case Kind::psd_orthant:
            std::snprintf(buf, sizeof(buf), "psd(%d) x orthant(%d)", order, extra);
            return buf;
    }
    return "?";
}

namespace detail {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream)
    : state_(splitmix64(seed ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL))) {}

double TrialRng::uniform01() {
    state_ = splitmix64(state_);
    return (state_ >> 11) * 0x1.0p-53;
}

double TrialRng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

double TrialRng::normal() {
    double u1 = std::max(uniform01(), 1e-300);
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Complex TrialRng::unit_disc() {
    double r = std::sqrt(uniform01());
    double th = 2.0 * M_PI * uniform01();
    return Complex{r * std::cos(th), r * std::sin(th)};
}

}  // namespace detail

namespace {

Eigen::MatrixXd sample_pd_matrix(int n, detail::TrialRng& rng) {
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
    return G * G.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
}

double min_eigenvalue(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
    return solver.eigenvalues().minCoeff();
}

std::vector<double> flatten_symmetric(const Eigen::MatrixXd& M) {
    const int n = static_cast<int>(M.rows());
    SymVarSpace space(n);
    std::vector<double> flat(space.var_count());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) flat[space.flat_index(i, j)] = M(i, j);
    return flat;
}

}  // namespace

InteriorSample sample_interior(const ConeSpec& cone, detail::TrialRng& rng) {
    InteriorSample s;
    switch (cone.kind) {
        case ConeSpec::Kind::orthant: {
            s.point.resize(cone.dim);
            double mn = std::numeric_limits<double>::infinity();
            for (double& v : s.point) {
                v = rng.uniform(0.1, 2.0);
                mn = std::min(mn, v);
            }
            s.certificate = mn;
            return s;
        }
        case ConeSpec::Kind::polyhedral: {
            s.point.assign(cone.dim, 0.0);
            double mn = std::numeric_limits<double>::infinity();
            for (const auto& g : cone.generators) {
                double w = rng.uniform(0.1, 2.0);
                mn = std::min(mn, w);
                for (int i = 0; i < cone.dim; ++i) s.point[i] += w * g[i];
            }
            s.certificate = mn;
            return s;
        }
        case ConeSpec::Kind::psd: {
            Eigen::MatrixXd B = sample_pd_matrix(cone.order, rng);
            s.point = flatten_symmetric(B);
            s.certificate = min_eigenvalue(B);
            return s;
        }
        case ConeSpec::Kind::psd_orthant: {
            Eigen::MatrixXd B = sample_pd_matrix(cone.order, rng);
            s.point = flatten_symmetric(B);
            s.certificate = min_eigenvalue(B);
            for (int k = 0; k < cone.extra; ++k) {
                double v = rng.uniform(0.1, 2.0);
                s.certificate = std::min(s.certificate, v);
                s.point.push_back(v);
            }
            return s;
        }
    }
    throw std::logic_error("unreachable");
}

RootResult univariate_roots(std::vector<Complex> coeffs) {
    double maxc = 0.0;
    for (const Complex& c : coeffs) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0) throw std::invalid_argument("root finding on the zero polynomial");

    // Deflate near-zero leading coefficients before reading the degree.
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-12 * maxc) coeffs.pop_back();
    int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 1) throw std::invalid_argument("root finding needs degree at least 1");

    RootResult result;
    // Exact zero roots peel off directly.
    while (deg >= 1 && std::abs(coeffs.front()) == 0.0) {
        result.roots.push_back(Complex{0.0, 0.0});
        ++result.zero_roots;
        coeffs.erase(coeffs.begin());
        --deg;
    }
    if (deg == 0) return result;

    if (deg == 1) {
        result.roots.push_back(-coeffs[0] / coeffs[1]);
        return result;
    }

    auto eval = [&](Complex z, Complex& p, Complex& dp) {
        p = coeffs[deg];
        dp = Complex{0.0, 0.0};
        for (int k = deg - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + coeffs[k];
        }
    };

    // Initial guesses on a perturbed circle at the Cauchy bound.
    double bound = 0.0;
    for (int k = 0; k < deg; ++k) bound = std::max(bound, std::abs(coeffs[k] / coeffs[deg]));
    double radius = 1.0 + bound;
    std::vector<Complex> z(deg);
    for (int k = 0; k < deg; ++k) {
        double th = 2.0 * M_PI * (k + 0.35) / deg + 0.4;
        z[k] = radius * Complex{std::cos(th), std::sin(th)};
    }

    constexpr int kMaxIterations = 200;
    constexpr double kCorrectionTol = 1e-13;
    bool converged = false;
    int it = 0;
    for (; it < kMaxIterations; ++it) {
        double max_correction = 0.0;
        double max_abs_z = 1.0;
        for (int k = 0; k < deg; ++k) max_abs_z = std::max(max_abs_z, std::abs(z[k]));
        for (int k = 0; k < deg; ++k) {
            Complex p, dp;
            eval(z[k], p, dp);
            if (p == Complex{0.0, 0.0}) continue;
            Complex newton = (dp == Complex{0.0, 0.0}) ? Complex{1.0, 0.0} : p / dp;
            Complex repulsion{0.0, 0.0};
            for (int j = 0; j < deg; ++j) {
                if (j == k) continue;
                Complex d = z[k] - z[j];
                if (std::abs(d) < 1e-30) d = Complex{1e-30, 0.0};
                repulsion += Complex{1.0, 0.0} / d;
            }
            Complex denom = Complex{1.0, 0.0} - newton * repulsion;
            Complex w = (std::abs(denom) < 1e-30) ? newton : newton / denom;
            z[k] -= w;
            max_correction = std::max(max_correction, std::abs(w));
        }
        if (max_correction < kCorrectionTol * max_abs_z) {
            converged = true;
            ++it;
            break;
        }
    }
    result.converged = converged;
    result.iterations = it;
    result.roots.insert(result.roots.end(), z.begin(), z.end());
    return result;
}

UnivariateVerdict univariate_is_stable(const std::vector<Complex>& coeffs, double im_threshold) {
    double maxc = 0.0;
    for (const Complex& c : coeffs) maxc = std::max(maxc, std::abs(c));
    if (coeffs.empty() || maxc <= kCoeffPruneTol)
        return {UnivariateStability::identically_zero, std::nullopt};

    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) <= 1e-12 * maxc) --deg;
    if (deg == 0) return {UnivariateStability::stable, std::nullopt};

    RootResult rr = univariate_roots(std::vector<Complex>(coeffs.begin(), coeffs.begin() + deg + 1));
    if (!rr.converged) throw RootFindingError("root iteration did not converge");
    std::optional<Complex> worst;
    for (const Complex& r : rr.roots)
        if (!worst || r.imag() > worst->imag()) worst = r;
    if (worst && worst->imag() > im_threshold) return {UnivariateStability::unstable, worst};
    return {UnivariateStability::stable, std::nullopt};
}

namespace {

// Shared trial loop for every cone kind.  x is an unconstrained real point,
// y an interior direction; a candidate root t0 of the restriction is kept
// only if the reconstructed point independently re-verifies.
StabilityVerdict falsify_by_lines(const Polynomial& f, const ConeSpec& cone,
                                  const FalsifierOptions& options) {
    if (f.is_zero()) throw std::invalid_argument("stability check on the zero polynomial");
    if (f.nvars() != cone.dim)
        throw std::invalid_argument("polynomial does not match the cone dimension");

    StabilityVerdict verdict;
    verdict.trials = options.trials;
    verdict.seed = options.seed;

    const double residual_bound = options.residual_scale * (1.0 + f.coeff_one_norm());
    std::vector<double> x(cone.dim);
    for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
        detail::TrialRng rng(options.seed, trial);
        for (double& v : x) v = rng.normal();
        InteriorSample y = sample_interior(cone, rng);

        auto coeffs = f.univariate_restriction(x, y.point);
        UnivariateVerdict uv;
        try {
            uv = univariate_is_stable(coeffs, options.im_threshold);
        } catch (const RootFindingError&) {
            ++verdict.nonconverged_trials;
            continue;
        }
        if (uv.status == UnivariateStability::identically_zero) {
            // Counted as vacuously stable: the line lies inside the variety
            // and carries no upper-half-plane root information.
            ++verdict.degenerate_trials;
            continue;
        }
        if (uv.status == UnivariateStability::stable) {
            if (coeffs.size() <= 1) ++verdict.degenerate_trials;
            continue;
        }

        const Complex t0 = *uv.witness_root;
        std::vector<Complex> z(cone.dim);
        for (int i = 0; i < cone.dim; ++i)
            z[i] = Complex{x[i], 0.0} + t0 * Complex{y.point[i], 0.0};

        const double residual = std::abs(f.evaluate(z));
        if (residual >= residual_bound) continue;

        double margin = 0.0;
        switch (cone.kind) {
            case ConeSpec::Kind::orthant: {
                margin = std::numeric_limits<double>::infinity();
                for (const Complex& v : z) margin = std::min(margin, v.imag());
                break;
            }
            case ConeSpec::Kind::polyhedral: {
                // Im(z) = Im(t0) * y with y built from weights >= 0.1, so the
                // margin certificate scales the construction certificate.
                margin = t0.imag() * y.certificate;
                break;
            }
            case ConeSpec::Kind::psd: {
                MatrixPoint m = MatrixPoint::from_flat(cone.order, z);
                margin = m.imag_min_eigenvalue();
                break;
            }
            case ConeSpec::Kind::psd_orthant: {
                const int head = cone.order * (cone.order + 1) / 2;
                MatrixPoint m = MatrixPoint::from_flat(
                    cone.order, std::span<const Complex>(z.data(), head));
                margin = m.imag_min_eigenvalue();
                for (int k = head; k < cone.dim; ++k) margin = std::min(margin, z[k].imag());
                break;
            }
        }
        if (margin <= options.interior_margin) continue;

        // A real multiple root of the restriction splits numerically into a
        // conjugate pair whose tiny imaginary part can clear the thresholds;
        // the flatness of f near such a root keeps the residual small too.
        // Those candidates stay essentially on the variety after dropping the
        // imaginary part of t0, while a genuine interior root leaves a clear
        // gap on the realified point.
        std::vector<Complex> zr(cone.dim);
        for (int i = 0; i < cone.dim; ++i)
            zr[i] = Complex{x[i] + t0.real() * y.point[i], 0.0};
        const double realified_gap = std::abs(f.evaluate(zr));
        if (realified_gap <= 50.0 * std::max(residual, residual_bound)) continue;

        verdict.counterexample = true;
        verdict.witness = Witness{z, residual, margin, trial, false};
        return verdict;
    }
    verdict.note = "no counterexample found";
    return verdict;
}

}  // namespace

StabilityVerdict check_cone_stability(const Polynomial& f, const ConeSpec& cone,
                                      const FalsifierOptions& options) {
    return falsify_by_lines(f, cone, options);
}

StabilityVerdict check_psd_stability(const Polynomial& f, const SymVarSpace& space,
                                     const FalsifierOptions& options) {
    if (f.is_zero()) throw std::invalid_argument("stability check on the zero polynomial");
    if (f.nvars() != space.var_count())
        throw std::invalid_argument("polynomial does not match the symmetric variable space");

    const ConeSpec cone = ConeSpec::psd(space.order());
    const double residual_bound = options.residual_scale * (1.0 + f.coeff_one_norm());

    // Deterministic pre-pass: points of the form i*B with B positive definite
    // catch roots that line sampling misses because the restriction through
    // them vanishes identically.
    auto try_imaginary_point = [&](const Eigen::MatrixXd& B,
                                   std::optional<StabilityVerdict>& found) {
        MatrixPoint m = MatrixPoint::from_parts(Eigen::MatrixXd::Zero(space.order(), space.order()), B);
        auto flat = m.to_flat();
        double residual = std::abs(f.evaluate(flat));
        if (residual < residual_bound) {
            double margin = min_eigenvalue(B);
            if (margin > options.interior_margin) {
                StabilityVerdict v;
                v.trials = options.trials;
                v.seed = options.seed;
                v.counterexample = true;
                v.witness = Witness{flat, residual, margin, 0, true};
                found = v;
            }
        }
    };

    std::optional<StabilityVerdict> found;
    try_imaginary_point(Eigen::MatrixXd::Identity(space.order(), space.order()), found);
    if (found) return *found;
    detail::TrialRng prepass_rng(options.seed, 0xdecade00ULL);
    try_imaginary_point(sample_pd_matrix(space.order(), prepass_rng), found);
    if (found) return *found;

    return falsify_by_lines(f, cone, options);
}

}  // namespace conicstab
