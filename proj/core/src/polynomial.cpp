#include "conicstab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace conicstab {

namespace {

Complex pow_int(Complex base, int e) {
    Complex result{1.0, 0.0};
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

// Convolution accumulate: acc += coeff * a * b where a, b are univariate
// coefficient vectors in increasing degree.
void convolve_into(std::vector<Complex>& acc, const std::vector<Complex>& a,
                   const std::vector<Complex>& b) {
    if (acc.size() < a.size() + b.size() - 1) acc.resize(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += a[i] * b[j];
}

}  // namespace

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(int nvars, Complex c) {
    Polynomial p(nvars);
    p.add_term(ExponentVec(nvars, 0), c);
    p.prune();
    return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
    if (var < 0 || var >= nvars) throw std::invalid_argument("variable index out of range");
    Polynomial p(nvars);
    ExponentVec e(nvars, 0);
    e[var] = 1;
    p.add_term(e, Complex{1.0, 0.0});
    return p;
}

Polynomial Polynomial::monomial(int nvars, ExponentVec exponents, Complex c) {
    if (static_cast<int>(exponents.size()) != nvars)
        throw std::invalid_argument("exponent vector length mismatch");
    for (int e : exponents)
        if (e < 0) throw std::invalid_argument("negative exponent in monomial");
    Polynomial p(nvars);
    p.add_term(exponents, c);
    p.prune();
    return p;
}

Complex Polynomial::coefficient(const ExponentVec& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

int Polynomial::total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int k : e) d += k;
        deg = std::max(deg, d);
    }
    return deg;
}

int Polynomial::degree_in(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
    int deg = -1;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e[var]);
    return deg;
}

double Polynomial::coeff_one_norm() const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += std::abs(c);
    return s;
}

void Polynomial::check_same_space(const Polynomial& rhs) const {
    if (nvars_ != rhs.nvars_) throw std::invalid_argument("variable-space mismatch");
}

void Polynomial::add_term(const ExponentVec& exponents, Complex c) {
    auto [it, inserted] = terms_.emplace(exponents, c);
    if (!inserted) it->second += c;
}

void Polynomial::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= kCoeffPruneTol)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    check_same_space(rhs);
    Polynomial out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    out.prune();
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    check_same_space(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    prune();
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    check_same_space(rhs);
    Polynomial out(nvars_);
    ExponentVec e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    out.prune();
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    *this = *this * rhs;
    return *this;
}

Polynomial Polynomial::operator*(Complex scalar) const {
    Polynomial out = *this;
    for (auto& [e, c] : out.terms_) c *= scalar;
    out.prune();
    return out;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    Polynomial result = Polynomial::constant(nvars_, Complex{1.0, 0.0});
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        if (k >>= 1) base *= base;
    }
    return result;
}

Complex Polynomial::evaluate(std::span<const Complex> point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("evaluation point length mismatch");
    // Per-variable power tables keep the direct sum cheap.
    std::vector<std::vector<Complex>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        int d = std::max(degree_in(i), 0);
        powers[i].resize(d + 1);
        powers[i][0] = Complex{1.0, 0.0};
        for (int k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * point[i];
    }
    Complex sum{0.0, 0.0};
    for (const auto& [e, c] : terms_) {
        Complex m = c;
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) m *= powers[i][e[i]];
        sum += m;
    }
    return sum;
}

Polynomial Polynomial::partial_derivative(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExponentVec d = e;
        d[var] -= 1;
        out.add_term(d, c * static_cast<double>(e[var]));
    }
    out.prune();
    return out;
}

Polynomial Polynomial::directional_derivative(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != nvars_)
        throw std::invalid_argument("direction length mismatch");
    Polynomial out(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        if (v[i] == 0.0) continue;
        out += partial_derivative(i) * Complex{v[i], 0.0};
    }
    return out;
}

Polynomial Polynomial::affine_substitute(std::span<const Complex> a,
                                         const std::vector<std::vector<double>>& dirs) const {
    if (static_cast<int>(a.size()) != nvars_)
        throw std::invalid_argument("base point length mismatch");
    if (dirs.empty()) throw std::invalid_argument("affine substitution needs at least one direction");
    const int k = static_cast<int>(dirs.size());
    for (const auto& d : dirs)
        if (static_cast<int>(d.size()) != nvars_)
            throw std::invalid_argument("direction length mismatch");

    // Substitution images: z_i -> a_i + sum_j dirs[j][i] * t_j.
    std::vector<Polynomial> image;
    image.reserve(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        Polynomial li = Polynomial::constant(k, a[i]);
        for (int j = 0; j < k; ++j)
            if (dirs[j][i] != 0.0)
                li += Polynomial::variable(k, j) * Complex{dirs[j][i], 0.0};
        image.push_back(std::move(li));
    }

    // Memoized powers of each image polynomial.
    std::vector<std::vector<Polynomial>> image_pow(nvars_);
    auto power_of = [&](int i, int e) -> const Polynomial& {
        auto& cache = image_pow[i];
        if (cache.empty()) cache.push_back(Polynomial::constant(k, Complex{1.0, 0.0}));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * image[i]);
        return cache[e];
    };

    Polynomial out(k);
    for (const auto& [e, c] : terms_) {
        Polynomial term = Polynomial::constant(k, c);
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) term *= power_of(i, e[i]);
        out += term;
    }
    return out;
}

std::vector<Complex> Polynomial::restrict_to_line(std::span<const Complex> base,
                                                  std::span<const Complex> dir) const {
    if (static_cast<int>(base.size()) != nvars_ || static_cast<int>(dir.size()) != nvars_)
        throw std::invalid_argument("line point length mismatch");
    if (terms_.empty()) return {};

    // Power tables of (base_i + t dir_i)^k via repeated convolution.
    std::vector<std::vector<std::vector<Complex>>> pw(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        int d = std::max(degree_in(i), 0);
        pw[i].resize(d + 1);
        pw[i][0] = {Complex{1.0, 0.0}};
        for (int kk = 1; kk <= d; ++kk) {
            const auto& prev = pw[i][kk - 1];
            std::vector<Complex> next(prev.size() + 1, Complex{0.0, 0.0});
            for (std::size_t m = 0; m < prev.size(); ++m) {
                next[m] += prev[m] * base[i];
                next[m + 1] += prev[m] * dir[i];
            }
            pw[i][kk] = std::move(next);
        }
    }

    std::vector<Complex> acc(static_cast<std::size_t>(std::max(total_degree(), 0)) + 1,
                             Complex{0.0, 0.0});
    for (const auto& [e, c] : terms_) {
        std::vector<Complex> term{c};
        for (int i = 0; i < nvars_; ++i)
            if (e[i] > 0) {
                std::vector<Complex> next(term.size() + pw[i][e[i]].size() - 1, Complex{0.0, 0.0});
                convolve_into(next, term, pw[i][e[i]]);
                // convolve_into adds into a zeroed buffer here
                term = std::move(next);
            }
        for (std::size_t m = 0; m < term.size(); ++m) acc[m] += term[m];
    }

    // Relative pruning so the degree read off the restriction is structural.
    double maxc = 0.0;
    for (const Complex& c : acc) maxc = std::max(maxc, std::abs(c));
    const double thr = kCoeffPruneTol * std::max(1.0, maxc);
    for (Complex& c : acc)
        if (std::abs(c) <= thr) c = Complex{0.0, 0.0};
    while (!acc.empty() && acc.back() == Complex{0.0, 0.0}) acc.pop_back();
    return acc;
}

std::vector<Complex> Polynomial::univariate_restriction(std::span<const double> x,
                                                        std::span<const double> y) const {
    if (static_cast<int>(x.size()) != nvars_ || static_cast<int>(y.size()) != nvars_)
        throw std::invalid_argument("restriction point length mismatch");
    std::vector<Complex> base(x.begin(), x.end());
    std::vector<Complex> dir(y.begin(), y.end());
    return restrict_to_line(base, dir);
}

int Polynomial::degree_in_direction(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != nvars_)
        throw std::invalid_argument("direction length mismatch");
    if (terms_.empty())
        throw std::invalid_argument("degree in direction undefined for the zero polynomial");

    constexpr int kSamples = 5;
    // Fixed seed: the sampled base points are an implementation detail and
    // the result must not vary between calls.
    std::mt19937_64 eng(0x5eedba5eULL);
    auto u01 = [&eng] { return (eng() >> 11) * 0x1.0p-53; };

    std::vector<Complex> dir(nvars_);
    for (int i = 0; i < nvars_; ++i) dir[i] = Complex{v[i], 0.0};

    int deg = -1;
    std::vector<Complex> w(nvars_);
    for (int s = 0; s < kSamples; ++s) {
        for (int i = 0; i < nvars_; ++i) {
            double r = std::sqrt(u01());
            double th = 2.0 * M_PI * u01();
            w[i] = Complex{r * std::cos(th), r * std::sin(th)};
        }
        auto coeffs = restrict_to_line(w, dir);
        deg = std::max(deg, static_cast<int>(coeffs.size()) - 1);
    }
    // A nonzero polynomial restricted to a generic point is nonzero, so the
    // observed maximum is the degree; deg stays -1 only if every sampled
    // restriction vanished, which means the direction annihilates f.
    return std::max(deg, 0);
}

Polynomial Polynomial::initial_form(std::span<const double> w) const {
    if (static_cast<int>(w.size()) != nvars_)
        throw std::invalid_argument("weight length mismatch");
    if (terms_.empty()) return *this;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [e, c] : terms_) {
        double p = 0.0;
        for (int i = 0; i < nvars_; ++i) p += w[i] * e[i];
        best = std::max(best, p);
    }
    constexpr double kTieTol = 1e-9;
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        double p = 0.0;
        for (int i = 0; i < nvars_; ++i) p += w[i] * e[i];
        if (p >= best - kTieTol) out.add_term(e, c);
    }
    return out;
}

Polynomial Polynomial::initial_form(std::span<const Rational> w) const {
    if (static_cast<int>(w.size()) != nvars_)
        throw std::invalid_argument("weight length mismatch");
    if (terms_.empty()) return *this;
    bool first = true;
    Rational best;
    for (const auto& [e, c] : terms_) {
        Rational p(0);
        for (int i = 0; i < nvars_; ++i) p += w[i] * e[i];
        if (first || p > best) best = p;
        first = false;
    }
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        Rational p(0);
        for (int i = 0; i < nvars_; ++i) p += w[i] * e[i];
        if (p == best) out.add_term(e, c);
    }
    return out;
}

std::set<ExponentVec> Polynomial::support() const {
    std::set<ExponentVec> s;
    for (const auto& [e, c] : terms_) s.insert(e);
    return s;
}

}  // namespace conicstab
