#include "conicstab/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace conicstab {

namespace {

void check_symmetric(const Eigen::MatrixXd& M, const char* what) {
    if (M.rows() != M.cols()) throw std::invalid_argument(std::string(what) + " must be square");
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument(std::string(what) + " must be symmetric");
}

void check_space(const Polynomial& f, const SymVarSpace& space) {
    if (f.nvars() != space.var_count())
        throw std::invalid_argument("polynomial does not match the symmetric variable space");
}

int permutation_sign(const std::vector<int>& perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

// Determinant of the symmetric submatrix with the given row and column index
// lists, as a polynomial over the full space.
Polynomial submatrix_determinant(const SymVarSpace& space, const std::vector<int>& rows,
                                 const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    Polynomial out(space.var_count());
    if (k == 0) return Polynomial::constant(space.var_count(), Complex{1.0, 0.0});
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        ExponentVec e(space.var_count(), 0);
        for (int r = 0; r < k; ++r) e[space.flat_index(rows[r], cols[perm[r]])] += 1;
        double sign = permutation_sign(perm);
        out += Polynomial::monomial(space.var_count(), e, Complex{sign, 0.0});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

SymVarSpace::SymVarSpace(int order) : order_(order) {
    if (order < 1) throw std::invalid_argument("matrix order must be positive");
}

int SymVarSpace::flat_index(int i, int j) const {
    if (i < 0 || j < 0 || i >= order_ || j >= order_)
        throw std::invalid_argument("matrix index out of range");
    if (i > j) std::swap(i, j);
    return i * order_ - i * (i - 1) / 2 + (j - i);
}

std::pair<int, int> SymVarSpace::index_pair(int flat) const {
    if (flat < 0 || flat >= var_count()) throw std::invalid_argument("flat index out of range");
    int i = 0;
    while (flat >= order_ - i) {
        flat -= order_ - i;
        ++i;
    }
    return {i, i + flat};
}

ExponentMatrixView::ExponentMatrixView(const SymVarSpace& space, const ExponentVec& exponents)
    : space_(space), exponents_(exponents) {
    if (static_cast<int>(exponents.size()) != space.var_count())
        throw std::invalid_argument("exponent vector does not match the space");
}

Rational ExponentMatrixView::entry(int i, int j) const {
    int e = exponents_[space_.flat_index(i, j)];
    if (i == j) return Rational(e);
    return Rational(e, 2);
}

Rational ExponentMatrixView::one_norm() const {
    Rational s(0);
    for (int i = 0; i < space_.order(); ++i)
        for (int j = 0; j < space_.order(); ++j) s += boost::abs(entry(i, j));
    return s;
}

ExponentVec ExponentMatrixView::flat() const { return exponents_; }

MatrixPoint::MatrixPoint(int order) : order_(order), upper_(SymVarSpace(order).var_count()) {}

MatrixPoint MatrixPoint::from_parts(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im) {
    check_symmetric(re, "real part");
    check_symmetric(im, "imaginary part");
    if (re.rows() != im.rows()) throw std::invalid_argument("part size mismatch");
    MatrixPoint m(static_cast<int>(re.rows()));
    for (int i = 0; i < m.order_; ++i)
        for (int j = i; j < m.order_; ++j) m.set(i, j, Complex{re(i, j), im(i, j)});
    return m;
}

MatrixPoint MatrixPoint::imaginary_identity(int order) {
    MatrixPoint m(order);
    for (int i = 0; i < order; ++i) m.set(i, i, Complex{0.0, 1.0});
    return m;
}

Complex MatrixPoint::at(int i, int j) const {
    return upper_[SymVarSpace(order_).flat_index(i, j)];
}

void MatrixPoint::set(int i, int j, Complex value) {
    upper_[SymVarSpace(order_).flat_index(i, j)] = value;
}

std::vector<Complex> MatrixPoint::to_flat() const { return upper_; }

MatrixPoint MatrixPoint::from_flat(int order, std::span<const Complex> flat) {
    MatrixPoint m(order);
    if (static_cast<int>(flat.size()) != SymVarSpace(order).var_count())
        throw std::invalid_argument("flat vector length mismatch");
    std::copy(flat.begin(), flat.end(), m.upper_.begin());
    return m;
}

Eigen::MatrixXd MatrixPoint::real_part() const {
    Eigen::MatrixXd out(order_, order_);
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j) out(i, j) = at(i, j).real();
    return out;
}

Eigen::MatrixXd MatrixPoint::imag_part() const {
    Eigen::MatrixXd out(order_, order_);
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j) out(i, j) = at(i, j).imag();
    return out;
}

double MatrixPoint::imag_min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(imag_part());
    return solver.eigenvalues().minCoeff();
}

Complex eval_at_matrix(const Polynomial& f, const SymVarSpace& space, const MatrixPoint& m) {
    check_space(f, space);
    if (m.order() != space.order()) throw std::invalid_argument("matrix order mismatch");
    auto flat = m.to_flat();
    return f.evaluate(flat);
}

Polynomial diag_restriction(const Polynomial& f, const SymVarSpace& space) {
    check_space(f, space);
    const int n = space.order();
    Polynomial out(n);
    for (const auto& [e, c] : f.terms()) {
        bool diagonal = true;
        ExponentVec d(n, 0);
        for (int v = 0; v < space.var_count(); ++v) {
            if (e[v] == 0) continue;
            auto [i, j] = space.index_pair(v);
            if (i != j) {
                diagonal = false;
                break;
            }
            d[i] = e[v];
        }
        if (diagonal) out += Polynomial::monomial(n, d, c);
    }
    return out;
}

Polynomial minor_restriction(const Polynomial& f, const SymVarSpace& space,
                             const std::vector<int>& J) {
    check_space(f, space);
    if (J.empty()) throw std::invalid_argument("minor restriction needs a nonempty index set");
    std::vector<int> sorted = J;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate index in minor restriction");
    for (int i : sorted)
        if (i < 0 || i >= space.order()) throw std::invalid_argument("minor index out of range");

    std::vector<int> position(space.order(), -1);
    for (std::size_t p = 0; p < sorted.size(); ++p) position[sorted[p]] = static_cast<int>(p);

    SymVarSpace sub(static_cast<int>(sorted.size()));
    Polynomial out(sub.var_count());
    for (const auto& [e, c] : f.terms()) {
        bool keep = true;
        ExponentVec d(sub.var_count(), 0);
        for (int v = 0; v < space.var_count(); ++v) {
            if (e[v] == 0) continue;
            auto [i, j] = space.index_pair(v);
            if (position[i] < 0 || position[j] < 0) {
                keep = false;
                break;
            }
            d[sub.flat_index(position[i], position[j])] = e[v];
        }
        if (keep) out += Polynomial::monomial(sub.var_count(), d, c);
    }
    return out;
}

CongruenceResult congruence_transform(const Polynomial& f, const SymVarSpace& space,
                                      const Eigen::MatrixXd& S, CongruenceKind kind) {
    check_space(f, space);
    const int n = space.order();
    if (S.rows() != n || S.cols() != n) throw std::invalid_argument("transform matrix size mismatch");
    if (std::abs(S.determinant()) <= 1e-10)
        throw std::invalid_argument("transform matrix is singular");

    CongruenceResult result{Polynomial(space.var_count()), std::nullopt};
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    if (cond > 1e8) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "condition number %.3g", cond);
        result.warning = std::string("ill-conditioned transform matrix: ") + buf;
    }

    // Right factor: S^T for the congruence, S^{-1} for the similarity.
    Eigen::MatrixXd R = (kind == CongruenceKind::transpose)
                            ? Eigen::MatrixXd(S.transpose())
                            : Eigen::MatrixXd(S.inverse());

    // Image of entry (i, j): M_ij = sum_{k,l} S_ik z_{kl} R_lj, symmetrized
    // across the mirror pair so the result lives in the symmetric space.
    std::vector<Polynomial> image;
    image.reserve(space.var_count());
    for (int v = 0; v < space.var_count(); ++v) {
        auto [i, j] = space.index_pair(v);
        std::vector<double> coeff(space.var_count(), 0.0);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                double w = 0.5 * (S(i, k) * R(l, j) + S(j, k) * R(l, i));
                coeff[space.flat_index(k, l)] += w;
            }
        Polynomial li(space.var_count());
        for (int u = 0; u < space.var_count(); ++u)
            if (coeff[u] != 0.0) li += Polynomial::variable(space.var_count(), u) * Complex{coeff[u], 0.0};
        image.push_back(std::move(li));
    }

    std::vector<std::vector<Polynomial>> image_pow(space.var_count());
    auto power_of = [&](int v, int e) -> const Polynomial& {
        auto& cache = image_pow[v];
        if (cache.empty()) cache.push_back(Polynomial::constant(space.var_count(), Complex{1.0, 0.0}));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * image[v]);
        return cache[e];
    };

    for (const auto& [e, c] : f.terms()) {
        Polynomial term = Polynomial::constant(space.var_count(), c);
        for (int v = 0; v < space.var_count(); ++v)
            if (e[v] > 0) term *= power_of(v, e[v]);
        result.poly += term;
    }
    return result;
}

Polynomial permute_indices(const Polynomial& f, const SymVarSpace& space,
                           const std::vector<int>& pi) {
    check_space(f, space);
    const int n = space.order();
    if (static_cast<int>(pi.size()) != n) throw std::invalid_argument("permutation length mismatch");
    std::vector<bool> seen(n, false);
    for (int p : pi) {
        if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("not a permutation");
        seen[p] = true;
    }
    Polynomial out(space.var_count());
    for (const auto& [e, c] : f.terms()) {
        ExponentVec d(space.var_count(), 0);
        for (int v = 0; v < space.var_count(); ++v) {
            if (e[v] == 0) continue;
            auto [i, j] = space.index_pair(v);
            d[space.flat_index(pi[i], pi[j])] = e[v];
        }
        out += Polynomial::monomial(space.var_count(), d, c);
    }
    return out;
}

Polynomial matrix_directional_derivative(const Polynomial& f, const SymVarSpace& space,
                                         const Eigen::MatrixXd& V) {
    check_space(f, space);
    check_symmetric(V, "direction matrix");
    if (V.rows() != space.order()) throw std::invalid_argument("direction matrix size mismatch");
    Polynomial out(space.var_count());
    for (int i = 0; i < space.order(); ++i)
        for (int j = i; j < space.order(); ++j) {
            if (V(i, j) == 0.0) continue;
            out += f.partial_derivative(space.flat_index(i, j)) * Complex{V(i, j), 0.0};
        }
    return out;
}

Polynomial symbolic_determinant(int order) {
    if (order < 1 || order > kMaxSymbolicOrder)
        throw std::invalid_argument("matrix order outside symbolic expansion cap");
    SymVarSpace space(order);
    std::vector<int> all(order);
    std::iota(all.begin(), all.end(), 0);
    return submatrix_determinant(space, all, all);
}

std::vector<std::vector<Polynomial>> symbolic_adjugate(int order) {
    if (order < 1 || order > kMaxSymbolicOrder)
        throw std::invalid_argument("matrix order outside symbolic expansion cap");
    SymVarSpace space(order);
    std::vector<std::vector<Polynomial>> adj(order,
                                             std::vector<Polynomial>(order, Polynomial(space.var_count())));
    if (order == 1) {
        adj[0][0] = Polynomial::constant(space.var_count(), Complex{1.0, 0.0});
        return adj;
    }
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            // adj(Z)_ij = (-1)^{i+j} * minor with row j and column i removed.
            std::vector<int> rows, cols;
            for (int r = 0; r < order; ++r)
                if (r != j) rows.push_back(r);
            for (int c = 0; c < order; ++c)
                if (c != i) cols.push_back(c);
            Polynomial m = submatrix_determinant(space, rows, cols);
            adj[i][j] = ((i + j) % 2 == 0) ? m : -m;
        }
    return adj;
}

Polynomial inversion_image(const Polynomial& f, const SymVarSpace& space,
                           const std::vector<int>& blocks) {
    check_space(f, space);
    const int n = space.order();
    if (f.is_zero()) return f;

    // Determine the index range the transform acts on.
    int b1 = n;
    if (!blocks.empty()) {
        int total = 0;
        for (int d : blocks) {
            if (d < 1) throw std::invalid_argument("block sizes must be positive");
            total += d;
        }
        if (total != n) throw std::invalid_argument("block sizes must partition the matrix order");
        b1 = blocks[0];
        // Block structure: no variable of f may couple distinct blocks.
        std::vector<int> block_of(n);
        int idx = 0;
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int k = 0; k < blocks[b]; ++k) block_of[idx++] = static_cast<int>(b);
        for (const auto& [e, c] : f.terms())
            for (int v = 0; v < space.var_count(); ++v)
                if (e[v] > 0) {
                    auto [i, j] = space.index_pair(v);
                    if (block_of[i] != block_of[j])
                        throw std::invalid_argument("polynomial couples distinct blocks");
                }
    }
    if (b1 > kMaxSymbolicOrder)
        throw std::invalid_argument("matrix order outside symbolic expansion cap");

    // Symbolic determinant and adjugate of the leading block, over the full
    // space so they multiply directly with the untouched remainder.
    SymVarSpace block_space(b1);
    Polynomial det_b = symbolic_determinant(b1);
    auto adj_b = symbolic_adjugate(b1);
    auto lift = [&](const Polynomial& g) {
        Polynomial out(space.var_count());
        for (const auto& [e, c] : g.terms()) {
            ExponentVec d(space.var_count(), 0);
            for (int v = 0; v < block_space.var_count(); ++v) {
                if (e[v] == 0) continue;
                auto [i, j] = block_space.index_pair(v);
                d[space.flat_index(i, j)] = e[v];
            }
            out += Polynomial::monomial(space.var_count(), d, c);
        }
        return out;
    };
    Polynomial det_full = lift(det_b);
    std::vector<Polynomial> adj_full;
    adj_full.reserve(block_space.var_count());
    for (int v = 0; v < block_space.var_count(); ++v) {
        auto [i, j] = block_space.index_pair(v);
        adj_full.push_back(lift(adj_b[i][j]));
    }

    // Degree of f in the leading-block variables.
    int deg_block = 0;
    for (const auto& [e, c] : f.terms()) {
        int d = 0;
        for (int v = 0; v < space.var_count(); ++v)
            if (e[v] > 0) {
                auto [i, j] = space.index_pair(v);
                if (i < b1 && j < b1) d += e[v];
            }
        deg_block = std::max(deg_block, d);
    }

    std::map<std::pair<int, int>, Polynomial> adj_pow;  // (block var, exponent)
    auto adj_power = [&](int v, int e) {
        auto key = std::make_pair(v, e);
        auto it = adj_pow.find(key);
        if (it == adj_pow.end()) it = adj_pow.emplace(key, adj_full[v].pow(e)).first;
        return it->second;
    };
    std::map<int, Polynomial> det_pow;
    auto det_power = [&](int e) {
        auto it = det_pow.find(e);
        if (it == det_pow.end()) it = det_pow.emplace(e, det_full.pow(e)).first;
        return it->second;
    };

    Polynomial out(space.var_count());
    for (const auto& [e, c] : f.terms()) {
        int d_block = 0;
        ExponentVec rest(space.var_count(), 0);
        Polynomial term = Polynomial::constant(space.var_count(), c);
        for (int v = 0; v < space.var_count(); ++v) {
            if (e[v] == 0) continue;
            auto [i, j] = space.index_pair(v);
            if (i < b1 && j < b1) {
                d_block += e[v];
                term *= adj_power(block_space.flat_index(i, j), e[v]);
            } else {
                rest[v] = e[v];
            }
        }
        if (d_block % 2 == 1) term = -term;
        term *= det_power(deg_block - d_block);
        term *= Polynomial::monomial(space.var_count(), rest, Complex{1.0, 0.0});
        out += term;
    }
    return out;
}

double frobenius_pairing(const SymVarSpace& space, const Eigen::MatrixXd& W,
                         const ExponentVec& exponents) {
    double p = 0.0;
    for (int v = 0; v < space.var_count(); ++v) {
        if (exponents[v] == 0) continue;
        auto [i, j] = space.index_pair(v);
        p += W(i, j) * exponents[v];
    }
    return p;
}

Polynomial frobenius_initial_form(const Polynomial& f, const SymVarSpace& space,
                                  const Eigen::MatrixXd& W) {
    check_space(f, space);
    check_symmetric(W, "weight matrix");
    if (W.rows() != space.order()) throw std::invalid_argument("weight matrix size mismatch");
    if (f.is_zero()) return f;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [e, c] : f.terms()) best = std::max(best, frobenius_pairing(space, W, e));
    constexpr double kTieTol = 1e-9;
    Polynomial out(space.var_count());
    for (const auto& [e, c] : f.terms())
        if (frobenius_pairing(space, W, e) >= best - kTieTol)
            out += Polynomial::monomial(space.var_count(), e, c);
    return out;
}

Polynomial frobenius_initial_form(const Polynomial& f, const SymVarSpace& space,
                                  const std::vector<std::vector<Rational>>& W) {
    check_space(f, space);
    const int n = space.order();
    if (static_cast<int>(W.size()) != n) throw std::invalid_argument("weight matrix size mismatch");
    for (const auto& row : W)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("weight matrix size mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (W[i][j] != W[j][i]) throw std::invalid_argument("weight matrix must be symmetric");
    if (f.is_zero()) return f;

    auto pairing = [&](const ExponentVec& e) {
        Rational p(0);
        for (int v = 0; v < space.var_count(); ++v) {
            if (e[v] == 0) continue;
            auto [i, j] = space.index_pair(v);
            p += W[i][j] * e[v];
        }
        return p;
    };
    bool first = true;
    Rational best;
    for (const auto& [e, c] : f.terms()) {
        Rational p = pairing(e);
        if (first || p > best) best = p;
        first = false;
    }
    Polynomial out(space.var_count());
    for (const auto& [e, c] : f.terms())
        if (pairing(e) == best) out += Polynomial::monomial(space.var_count(), e, c);
    return out;
}

Polynomial hadamard_scale(const Polynomial& f, const SymVarSpace& space,
                          const Eigen::MatrixXd& W, double lambda) {
    check_space(f, space);
    check_symmetric(W, "weight matrix");
    if (W.rows() != space.order()) throw std::invalid_argument("weight matrix size mismatch");
    if (lambda <= 0.0) throw std::invalid_argument("scaling parameter must be positive");
    if (f.is_zero()) return f;
    double phi = -std::numeric_limits<double>::infinity();
    for (const auto& [e, c] : f.terms()) phi = std::max(phi, frobenius_pairing(space, W, e));
    Polynomial out(space.var_count());
    for (const auto& [e, c] : f.terms()) {
        double gap = frobenius_pairing(space, W, e) - phi;
        out += Polynomial::monomial(space.var_count(), e, c * std::exp(gap * std::log(lambda)));
    }
    return out;
}

}  // namespace conicstab
