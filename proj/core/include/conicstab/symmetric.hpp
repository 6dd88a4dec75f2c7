#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conicstab/polynomial.hpp"

namespace conicstab {

// Symbolic determinants and adjugates expand over all permutations, so the
// matrix order is capped.
inline constexpr int kMaxSymbolicOrder = 6;

// Variable layout for polynomials over symmetric matrices of a given order:
// one variable per entry pair (i, j) with i <= j, row-major over the upper
// triangle.  z_ij and z_ji name the same variable.
class SymVarSpace {
public:
    explicit SymVarSpace(int order);

    int order() const { return order_; }
    int var_count() const { return order_ * (order_ + 1) / 2; }

    // 0-based indices, either order.
    int flat_index(int i, int j) const;
    // Inverse map; returns (i, j) with i <= j.
    std::pair<int, int> index_pair(int flat) const;

private:
    int order_;
};

// Half-integer exponent matrix attached to a flat exponent vector: the
// diagonal entries are the diagonal exponents, each off-diagonal exponent e
// is split as e/2 onto the two mirror positions.  The entrywise one-norm
// equals the total degree of the monomial.
class ExponentMatrixView {
public:
    ExponentMatrixView(const SymVarSpace& space, const ExponentVec& exponents);

    Rational entry(int i, int j) const;
    Rational one_norm() const;
    ExponentVec flat() const;

private:
    const SymVarSpace& space_;
    ExponentVec exponents_;
};

// Complex symmetric matrix point; only the upper triangle is stored.
class MatrixPoint {
public:
    explicit MatrixPoint(int order);
    static MatrixPoint from_parts(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im);
    static MatrixPoint imaginary_identity(int order);

    int order() const { return order_; }
    Complex at(int i, int j) const;
    void set(int i, int j, Complex value);

    // Flat variable vector in SymVarSpace layout.
    std::vector<Complex> to_flat() const;
    static MatrixPoint from_flat(int order, std::span<const Complex> flat);

    Eigen::MatrixXd real_part() const;
    Eigen::MatrixXd imag_part() const;
    // Smallest eigenvalue of the imaginary part.
    double imag_min_eigenvalue() const;

private:
    int order_;
    std::vector<Complex> upper_;
};

Complex eval_at_matrix(const Polynomial& f, const SymVarSpace& space, const MatrixPoint& m);

// Off-diagonal variables set to zero; result lives in the order() diagonal
// variables z_11, ..., z_nn.
Polynomial diag_restriction(const Polynomial& f, const SymVarSpace& space);

// Variables with an index outside J set to zero; result lives in the
// symmetric space of order |J|.  J holds 0-based indices.
Polynomial minor_restriction(const Polynomial& f, const SymVarSpace& space,
                             const std::vector<int>& J);

enum class CongruenceKind { transpose, inverse };  // S Z S^T vs S Z S^{-1}

struct CongruenceResult {
    Polynomial poly;
    std::optional<std::string> warning;  // set when cond(S) exceeds 1e8
};

// Exact symbolic substitution z_ij -> entry (i, j) of S Z S^T or S Z S^{-1},
// symmetrized across the mirror pair.  S must be invertible
// (|det S| > 1e-10).
CongruenceResult congruence_transform(const Polynomial& f, const SymVarSpace& space,
                                      const Eigen::MatrixXd& S, CongruenceKind kind);

// z_ij -> z_{pi(i) pi(j)}; pi is a 0-based permutation of the indices.
Polynomial permute_indices(const Polynomial& f, const SymVarSpace& space,
                           const std::vector<int>& pi);

// Directional derivative along a symmetric matrix direction:
// sum_{i <= j} V_ij df/dz_ij, which is d/dt f(Z + tV) at t = 0.
Polynomial matrix_directional_derivative(const Polynomial& f, const SymVarSpace& space,
                                         const Eigen::MatrixXd& V);

// Determinant of the order-n symbolic symmetric matrix.
Polynomial symbolic_determinant(int order);
// Adjugate matrix; entry (i, j) as a polynomial over the full space.
std::vector<std::vector<Polynomial>> symbolic_adjugate(int order);

// det(Z)^{deg f} * f(-Z^{-1}), expanded per monomial through the adjugate so
// the result is a polynomial with no rational intermediates.  With a block
// partition (sizes summing to the order), the transform applies to block 1
// with exponent deg_{Z_1}(f) and f must not couple distinct blocks.
Polynomial inversion_image(const Polynomial& f, const SymVarSpace& space,
                           const std::vector<int>& blocks = {});

// Frobenius pairing of a symmetric weight matrix with the half-integer
// exponent matrix: sum_i W_ii e_ii + sum_{i<j} W_ij e_ij on flat exponents.
double frobenius_pairing(const SymVarSpace& space, const Eigen::MatrixXd& W,
                         const ExponentVec& exponents);

// Terms with maximal Frobenius pairing.  The double overload includes
// pairings within 1e-9 of the maximum; the rational overload is exact.
Polynomial frobenius_initial_form(const Polynomial& f, const SymVarSpace& space,
                                  const Eigen::MatrixXd& W);
Polynomial frobenius_initial_form(const Polynomial& f, const SymVarSpace& space,
                                  const std::vector<std::vector<Rational>>& W);

// Coefficientwise scaling c_e -> c_e * lambda^{<W,e> - phi} with phi the
// maximal pairing; tends to the Frobenius initial form as lambda grows.
Polynomial hadamard_scale(const Polynomial& f, const SymVarSpace& space,
                          const Eigen::MatrixXd& W, double lambda);

}  // namespace conicstab
