#pragma once

#include <complex>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

namespace conicstab {

using Complex = std::complex<double>;
using ExponentVec = std::vector<int>;
using Rational = boost::rational<long long>;

// Coefficients with modulus at or below this are treated as structural zeros
// and dropped after every ring operation.
inline constexpr double kCoeffPruneTol = 1e-12;

// Sparse multivariate polynomial with complex coefficients over a fixed
// number of variables.  The zero polynomial is the empty term map; it is a
// first-class value and every operation accepts it.
class Polynomial {
public:
    using TermMap = std::map<ExponentVec, Complex>;

    // Zero polynomial over nvars variables.
    explicit Polynomial(int nvars);

    static Polynomial constant(int nvars, Complex c);
    static Polynomial variable(int nvars, int var);
    static Polynomial monomial(int nvars, ExponentVec exponents, Complex c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    // Coefficient of an exponent vector, zero if absent.
    Complex coefficient(const ExponentVec& exponents) const;

    // Total degree; -1 for the zero polynomial.
    int total_degree() const;
    // Degree in one variable; -1 for the zero polynomial.
    int degree_in(int var) const;
    // Sum of coefficient moduli.
    double coeff_one_norm() const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(Complex scalar) const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    // k >= 0; pow(0) is the constant 1.
    Polynomial pow(int k) const;

    bool operator==(const Polynomial& rhs) const = default;

    // Term-by-term direct sum of c * point^alpha (no Horner rearrangement,
    // so evaluation order matches the printed form of the polynomial).
    Complex evaluate(std::span<const Complex> point) const;

    Polynomial partial_derivative(int var) const;
    Polynomial directional_derivative(std::span<const double> v) const;

    // Exact composition f(a + sum_j t_j dirs[j]); the result lives in
    // dirs.size() fresh variables.
    Polynomial affine_substitute(std::span<const Complex> a,
                                 const std::vector<std::vector<double>>& dirs) const;

    // Coefficients of t -> f(base + t * dir) in increasing degree.  The
    // composition is symbolic, so exact cancellations (equal columns, zero
    // directions) drop out before the degree is read off.  Identically zero
    // restrictions come back as an empty vector.
    std::vector<Complex> restrict_to_line(std::span<const Complex> base,
                                          std::span<const Complex> dir) const;
    std::vector<Complex> univariate_restriction(std::span<const double> x,
                                                std::span<const double> y) const;

    // Degree of t -> f(w + t v) for generic w, computed as the maximum over
    // a fixed number of random complex base points from the unit polydisc.
    // Requires a nonzero polynomial.
    int degree_in_direction(std::span<const double> v) const;

    // Restriction to the terms whose pairing <w, alpha> is maximal.  The
    // double overload includes pairings within 1e-9 of the maximum; the
    // rational overload resolves ties exactly.
    Polynomial initial_form(std::span<const double> w) const;
    Polynomial initial_form(std::span<const Rational> w) const;

    std::set<ExponentVec> support() const;

private:
    void check_same_space(const Polynomial& rhs) const;
    void add_term(const ExponentVec& exponents, Complex c);
    void prune();

    int nvars_;
    TermMap terms_;
};

inline Polynomial operator*(Complex scalar, const Polynomial& p) { return p * scalar; }

}  // namespace conicstab
