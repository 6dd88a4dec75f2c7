// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every expected value is either asserted exactly, derived from an
// independent oracle in this file, or verified through the falsifier with
// instance families constructed so that genuine violations are reachable by
// the line search.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <conicstab/combinatorics.hpp>
#include <conicstab/polynomial.hpp>
#include <conicstab/preservers.hpp>
#include <conicstab/stability.hpp>
#include <conicstab/symmetric.hpp>

#include "oracles.hpp"

using namespace conicstab;

namespace {

// ---- small helpers ----

Polynomial sym_mono(const SymVarSpace& space, std::initializer_list<std::pair<std::pair<int, int>, int>> pows,
                    Complex c) {
    ExponentVec e(space.var_count(), 0);
    for (const auto& [ij, k] : pows) e[space.flat_index(ij.first, ij.second)] += k;
    return Polynomial::monomial(space.var_count(), e, c);
}

Polynomial sym_var(const SymVarSpace& space, int i, int j) {
    return Polynomial::variable(space.var_count(), space.flat_index(i, j));
}

// g + y * f over one extra trailing variable.
Polynomial lift_pair(const Polynomial& g, const Polynomial& f) {
    const int n = g.nvars();
    Polynomial out(n + 1);
    for (const auto& [e, c] : g.terms()) {
        ExponentVec w(e);
        w.push_back(0);
        out += Polynomial::monomial(n + 1, w, c);
    }
    for (const auto& [e, c] : f.terms()) {
        ExponentVec w(e);
        w.push_back(1);
        out += Polynomial::monomial(n + 1, w, c);
    }
    return out;
}

Eigen::MatrixXd random_integer_pd(std::mt19937& rng, int order) {
    Eigen::MatrixXd g(order, order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) g(i, j) = static_cast<double>(static_cast<int>(rng() % 5) - 2);
    return g * g.transpose() + Eigen::MatrixXd::Identity(order, order);
}

bool falsifier_clean(const Polynomial& f, const SymVarSpace& space, std::uint64_t trials,
                     std::uint64_t seed = 0) {
    FalsifierOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    return !check_psd_stability(f, space, opt).counterexample;
}

bool falsifier_finds(const Polynomial& f, const SymVarSpace& space, std::uint64_t trials,
                     std::uint64_t seed = 0) {
    FalsifierOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    return check_psd_stability(f, space, opt).counterexample;
}

std::string fmt(const char* pattern, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof(buffer), pattern, args...);
    return std::string(buffer);
}

// ---- criterion 1: determinants stay clean ----

bool criterion1(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int order = 2; order <= 4; ++order) {
        SymVarSpace space(order);
        FalsifierOptions opt;
        opt.trials = 1000;
        auto verdict = check_psd_stability(symbolic_determinant(order), space, opt);
        if (verdict.counterexample) {
            detail = fmt("counterexample reported for the order-%d determinant", order);
            return false;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = fmt("orders 2..4, 1000 trials each, %.2fs", secs);
    return secs < 30.0;
}

// ---- criterion 2: corner-weight initial form ----

bool criterion2(std::string& detail) {
    SymVarSpace s(3);
    Polynomial det3 = symbolic_determinant(3);
    Eigen::MatrixXd W(3, 3);
    W << 4, 4, 6, 4, 4, 6, 6, 6, 0;
    Polynomial got = frobenius_initial_form(det3, s, W);
    Polynomial expect = sym_mono(s, {{{0, 0}, 1}, {{1, 2}, 2}}, Complex(-1, 0)) +
                        sym_mono(s, {{{1, 1}, 1}, {{0, 2}, 2}}, Complex(-1, 0)) +
                        sym_mono(s, {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}}, Complex(2, 0));
    if (!(got == expect)) {
        detail = "initial form differs from the expected three-term polynomial";
        return false;
    }
    auto verdict = check_psd_stability(got, s);
    if (!verdict.counterexample || !verdict.witness.has_value()) {
        detail = "no counterexample found for the degenerate initial form";
        return false;
    }
    const auto& w = *verdict.witness;
    if (w.residual >= 1e-12) {
        detail = fmt("witness residual %.3e too large", w.residual);
        return false;
    }
    auto ii = MatrixPoint::imaginary_identity(3).to_flat();
    if (w.point.size() != ii.size()) {
        detail = "witness dimension mismatch";
        return false;
    }
    for (std::size_t k = 0; k < ii.size(); ++k)
        if (std::abs(w.point[k] - ii[k]) > 1e-12) {
            detail = "witness is not the imaginary identity";
            return false;
        }
    detail = fmt("exact form, witness at i*I_3, residual %.1e", w.residual);
    return true;
}

// ---- criterion 3: random positive definite weights ----

bool criterion3(std::string& detail) {
    SymVarSpace s(3);
    Polynomial det3 = symbolic_determinant(3);
    std::mt19937 rng(330001u);
    double max_gap = 0.0;
    for (int round = 0; round < 20; ++round) {
        Eigen::MatrixXd W = random_integer_pd(rng, 3);
        Polynomial form = frobenius_initial_form(det3, s, W);
        if (form.is_zero()) {
            detail = fmt("round %d produced an empty initial form", round);
            return false;
        }
        if (!falsifier_clean(form, s, 500, 1000u + round)) {
            detail = fmt("initial form counterexample in round %d", round);
            return false;
        }
        Polynomial scaled = hadamard_scale(det3, s, W, 1e6);
        std::set<ExponentVec> keys;
        for (const auto& [e, c] : form.terms()) keys.insert(e);
        for (const auto& [e, c] : scaled.terms()) keys.insert(e);
        for (const auto& e : keys)
            max_gap = std::max(max_gap, std::abs(scaled.coefficient(e) - form.coefficient(e)));
    }
    detail = fmt("20 weights, 500 trials each, scaling gap %.2e", max_gap);
    return max_gap <= 1e-5;
}

// ---- criterion 4: inversion image ----

bool criterion4(std::string& detail) {
    SymVarSpace s2(2);
    SymVarSpace s3(3);
    Polynomial det2 = symbolic_determinant(2);
    Polynomial det3 = symbolic_determinant(3);

    if (!(inversion_image(det2, s2) == det2)) {
        detail = "the order-2 determinant is not a fixed point";
        return false;
    }

    // factor pools of provably clean polynomials
    std::mt19937 rng(440001u);
    auto pd_derivative = [&](const Polynomial& det, const SymVarSpace& s) {
        return matrix_directional_derivative(det, s, random_integer_pd(rng, s.order()));
    };

    std::vector<std::pair<Polynomial, const SymVarSpace*>> inputs;
    for (int k = 0; k < 10; ++k) {
        Polynomial f = (k % 3 == 0) ? det2
                       : (k % 3 == 1) ? det2 * pd_derivative(det2, s2)
                                      : pd_derivative(det2, s2) * sym_var(s2, k % 2, k % 2);
        inputs.emplace_back(f, &s2);
    }
    for (int k = 0; k < 10; ++k) {
        // minors of det3 live over the order-2 space, so the order-3 pool uses
        // the determinant, its derivatives, and diagonal-scaled products
        Polynomial f = (k % 4 == 0) ? det3
                       : (k % 4 == 1) ? pd_derivative(det3, s3)
                       : (k % 4 == 2) ? pd_derivative(det3, s3) * sym_var(s3, k % 3, k % 3)
                                      : det3 * sym_var(s3, k % 3, k % 3);
        inputs.emplace_back(f, &s3);
    }

    int checked = 0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const auto& [f, sp] = inputs[k];
        if (f.nvars() != sp->var_count()) {
            detail = fmt("instance %zu lives in the wrong space", k);
            return false;
        }
        if (!falsifier_clean(f, *sp, 100, 2000u + k)) {
            detail = fmt("input %zu unexpectedly falsified", k);
            return false;
        }
        Polynomial img = inversion_image(f, *sp);
        if (img.is_zero()) {
            detail = fmt("inversion image %zu vanished", k);
            return false;
        }
        if (!falsifier_clean(img, *sp, 500, 3000u + k)) {
            detail = fmt("image counterexample on instance %zu", k);
            return false;
        }
        ++checked;
    }
    detail = fmt("fixed point exact, %d clean inputs with clean images (500 trials)", checked);
    return checked >= 20;
}

// ---- criterion 5: binomial families and the psd corpus ----

struct OrthantInstance {
    Polynomial f;
    int nvars;
    bool expect_violating;
    bool classifier_must_flag;  // support or ratio provably fails
};

bool check_stable_binomial_instance(const Polynomial& f, int nvars, std::uint64_t seed,
                                    std::string& why) {
    auto terms = f.terms();
    if (terms.size() != 2) {
        why = "instance is not a binomial";
        return false;
    }
    auto it = terms.begin();
    auto [e1, c1] = *it;
    ++it;
    auto [e2, c2] = *it;
    auto report = classify_stable_binomial(e1, e2, c1, c2);
    if (report.form == StableBinomialForm::violates) {
        why = "classifier flagged a constructed stable form: " + report.detail;
        return false;
    }
    FalsifierOptions opt;
    opt.trials = 300;
    opt.seed = seed;
    if (check_cone_stability(f, ConeSpec::orthant(nvars), opt).counterexample) {
        why = "falsifier found a counterexample on a provably stable binomial";
        return false;
    }
    return true;
}

bool criterion5(std::string& detail) {
    std::mt19937 rng(550001u);
    std::uniform_real_distribution<double> upos(0.2, 3.0);
    std::uniform_real_distribution<double> uang(0.0, 6.28318);
    std::string why;

    // fifty instances of each admissible form, coefficients drawn inside the
    // stability region
    for (int round = 0; round < 50; ++round) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int i = static_cast<int>(rng() % n);
        int j = static_cast<int>(rng() % n);

        // c0 + c1 z_i with Im(c0/c1) >= 0
        Complex c1 = std::polar(upos(rng), uang(rng));
        Complex ratio(upos(rng) - 1.5, (round % 3 == 0) ? 0.0 : upos(rng));
        Polynomial fa = Polynomial::constant(n, c1 * ratio) +
                        Polynomial::variable(n, i) * c1;
        if (!check_stable_binomial_instance(fa, n, 100u + round, why)) {
            detail = "form a round " + std::to_string(round) + ": " + why;
            return false;
        }

        // p z_i + q z_j with p, q > 0, i != j, common unit scale
        j = (i + 1 + static_cast<int>(rng() % (n - 1))) % n;
        Complex unit = std::polar(1.0, uang(rng));
        ExponentVec gamma(n, 0);
        if (round % 2 == 0) gamma[static_cast<int>(rng() % n)] = 1 + static_cast<int>(rng() % 2);
        Polynomial zg = Polynomial::monomial(n, gamma, Complex(1, 0));
        Polynomial fb = zg * (Polynomial::variable(n, i) * (unit * upos(rng)) +
                              Polynomial::variable(n, j) * (unit * upos(rng)));
        if (!check_stable_binomial_instance(fb, n, 200u + round, why)) {
            detail = "form b round " + std::to_string(round) + ": " + why;
            return false;
        }

        // c (z_i z_j - r) with r > 0, including the square case i == j
        const int jj = (round % 4 == 0) ? i : j;
        Complex scale = std::polar(upos(rng), uang(rng));
        ExponentVec prod_e(n, 0);
        prod_e[i] += 1;
        prod_e[jj] += 1;
        Polynomial fc = Polynomial::monomial(n, prod_e, scale) +
                        Polynomial::constant(n, scale * Complex(-upos(rng), 0.0));
        if (!check_stable_binomial_instance(fc, n, 300u + round, why)) {
            detail = "form c round " + std::to_string(round) + ": " + why;
            return false;
        }
    }

    // fifty violating binomials from families the line search can reach
    int violating_found = 0;
    for (int round = 0; round < 50; ++round) {
        const int n = 2;
        Polynomial f(n);
        bool must_flag = true;
        if (round < 17) {
            // complex ratio on {e_i, e_j}
            double b = 0.3 + upos(rng);
            if (round % 2 == 0) b = -b;
            f = Polynomial::variable(n, 0) * Complex(upos(rng) - 1.0, b) +
                Polynomial::variable(n, 1);
        } else if (round < 34) {
            // distance violation z_1^k - c with non-real c
            const int k = 3 + (round % 2);
            Complex c = std::polar(0.5 + upos(rng), 0.3 + 0.9 * (uang(rng) / 6.29));
            ExponentVec e(n, 0);
            e[0] = k;
            f = Polynomial::monomial(n, e, Complex(1, 0)) + Polynomial::constant(n, -c);
        } else if (round < 42) {
            // z_1^2 + r: conjugate-pair roots on every line
            f = Polynomial::variable(n, 0) * Polynomial::variable(n, 0) +
                Polynomial::constant(n, Complex(upos(rng), 0.0));
        } else {
            // z_1 z_2 + r: wrong product sign
            f = Polynomial::variable(n, 0) * Polynomial::variable(n, 1) +
                Polynomial::constant(n, Complex(upos(rng), 0.0));
        }

        auto terms = f.terms();
        auto it = terms.begin();
        auto [e1, c1] = *it;
        ++it;
        auto [e2, c2] = *it;
        auto report = classify_stable_binomial(e1, e2, c1, c2);
        if (must_flag && report.form != StableBinomialForm::violates) {
            detail = fmt("violating instance %d was classified as admissible", round);
            return false;
        }
        FalsifierOptions opt;
        opt.trials = 400;
        opt.seed = 400u + round;
        auto verdict = check_cone_stability(f, ConeSpec::orthant(n), opt);
        if (!verdict.counterexample) {
            detail = fmt("no verified counterexample for violating instance %d", round);
            return false;
        }
        // independent re-verification of the witness
        const auto& w = *verdict.witness;
        if (std::abs(f.evaluate(w.point)) > 1e-6 * (1.0 + f.coeff_one_norm())) {
            detail = fmt("witness residual of instance %d fails re-evaluation", round);
            return false;
        }
        for (const Complex& z : w.point)
            if (z.imag() <= 0.0) {
                detail = fmt("witness of instance %d is not interior", round);
                return false;
            }
        ++violating_found;
    }

    // psd corpus: 50 provably psd-stable, 50 provably violating instances
    int disagreements = 0;
    int corpus_size = 0;
    auto run_psd_stable = [&](const Polynomial& f, const SymVarSpace& s, std::uint64_t seed) {
        ++corpus_size;
        auto report = classify_psd_binomial(f, s);
        if (report.form == PsdBinomialForm::violates) ++disagreements;
        if (falsifier_finds(f, s, 400, seed)) ++disagreements;
    };
    auto run_psd_violating = [&](const Polynomial& f, const SymVarSpace& s, bool classifier_flags,
                                 std::uint64_t seed) {
        ++corpus_size;
        auto report = classify_psd_binomial(f, s);
        if (classifier_flags && report.form != PsdBinomialForm::violates) ++disagreements;
        // findable families: the falsifier must confirm the violation
        if (!falsifier_finds(f, s, 400, seed)) ++disagreements;
    };

    SymVarSpace s2(2);
    SymVarSpace s3(3);
    for (int k = 0; k < 30; ++k) {
        // diagonal binomials inside the stability region, lifted to matrices
        const SymVarSpace& s = (k % 2 == 0) ? s2 : s3;
        const int n = s.order();
        const int i = k % n;
        const int j = (i + 1) % n;
        Polynomial f(s.var_count());
        switch (k % 3) {
            case 0: {
                Complex c1 = std::polar(upos(rng), uang(rng));
                f = Polynomial::constant(s.var_count(), c1 * Complex(upos(rng) - 1.0, upos(rng))) +
                    sym_var(s, i, i) * c1;
                break;
            }
            case 1: {
                Polynomial cf = (k % 6 == 1) ? sym_mono(s, {{{j, j}, 2}}, Complex(1, 0))
                                             : Polynomial::constant(s.var_count(), Complex(1, 0));
                f = cf * (sym_var(s, i, i) * upos(rng) + sym_var(s, j, j) * upos(rng));
                break;
            }
            default: {
                Complex scale = std::polar(upos(rng), uang(rng));
                f = sym_var(s, i, i) * sym_var(s, j, j) * scale +
                    Polynomial::constant(s.var_count(), scale * Complex(-upos(rng), 0.0));
                break;
            }
        }
        run_psd_stable(f, s, 500u + k);
    }
    for (int k = 0; k < 20; ++k) {
        // scaled embeddings of the order-2 determinant
        const SymVarSpace& s = (k % 2 == 0) ? s2 : s3;
        const int n = s.order();
        const int i = k % n;
        const int j = (i + 1) % n;
        const int a = std::min(i, j), b = std::max(i, j);
        ExponentVec gamma(s.var_count(), 0);
        if (k % 3 == 0) gamma[s.flat_index(k % n, k % n)] = 1 + (k % 2);
        Complex c = std::polar(upos(rng), uang(rng));
        Polynomial f = Polynomial::monomial(s.var_count(), gamma, Complex(1, 0)) *
                       (sym_var(s, a, a) * sym_var(s, b, b) - sym_mono(s, {{{a, b}, 2}}, Complex(1, 0))) * c;
        run_psd_stable(f, s, 600u + k);
    }

    for (int k = 0; k < 15; ++k) {
        // complex ratio on the det-2 support
        double b = 0.3 + upos(rng);
        Polynomial f = sym_var(s2, 0, 0) * sym_var(s2, 1, 1) +
                       sym_mono(s2, {{{0, 1}, 2}}, Complex(upos(rng) - 1.5, (k % 2 == 0) ? b : -b));
        run_psd_violating(f, s2, true, 700u + k);
    }
    for (int k = 0; k < 10; ++k) {
        // real positive ratio: passes the support test, still not psd-stable
        Polynomial f = sym_var(s2, 0, 0) * sym_var(s2, 1, 1) +
                       sym_mono(s2, {{{0, 1}, 2}}, Complex(0.5 + upos(rng), 0.0));
        run_psd_violating(f, s2, false, 800u + k);
    }
    for (int k = 0; k < 10; ++k) {
        // diagonal pair with non-real ratio
        const SymVarSpace& s = (k % 2 == 0) ? s2 : s3;
        double b = 0.3 + upos(rng);
        Polynomial f = sym_var(s, 0, 0) * Complex(upos(rng) - 1.0, (k % 2 == 0) ? b : -b) +
                       sym_var(s, 1, 1);
        run_psd_violating(f, s, true, 900u + k);
    }
    for (int k = 0; k < 10; ++k) {
        // diagonal distance violation z_11^m + c, c off the real axis
        const int m = 3 + (k % 2);
        Complex c = std::polar(0.5 + upos(rng), 0.4 + 0.8 * (uang(rng) / 6.29));
        Polynomial f = sym_mono(s2, {{{0, 0}, m}}, Complex(1, 0)) +
                       Polynomial::constant(s2.var_count(), c);
        run_psd_violating(f, s2, true, 1000u + k);
    }
    for (int k = 0; k < 5; ++k) {
        // diagonal term against an off-diagonal square
        Polynomial f = sym_var(s2, 0, 0) * upos(rng) + sym_mono(s2, {{{0, 1}, 2}}, Complex(1, 0));
        run_psd_violating(f, s2, true, 1100u + k);
    }

    if (corpus_size != 100) {
        detail = fmt("psd corpus has %d instances, expected 100", corpus_size);
        return false;
    }
    detail = fmt("150 stable forms clean, %d violations verified, psd corpus disagreements: %d",
                 violating_found, disagreements);
    return disagreements == 0 && violating_found == 50;
}

// ---- criterion 6: jump systems ----

bool criterion6(std::string& detail) {
    std::mt19937 rng(660001u);

    // random sets against the brute-force oracle
    for (int round = 0; round < 200; ++round) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int size = 1 + static_cast<int>(rng() % 7);
        SupportSet points;
        std::set<std::vector<int>> reference;
        for (int k = 0; k < size; ++k) {
            ExponentVec e(n);
            for (auto& x : e) x = static_cast<int>(rng() % 4);
            points.insert(e);
            reference.insert(e);
        }
        if (is_jump_system(points).is_jump_system != oracle::brute_force_jump_system(reference)) {
            detail = fmt("oracle mismatch on random set %d", round);
            return false;
        }
    }

    // products of nonnegative linear forms are stable; their supports must
    // satisfy the two-steps axiom
    std::uniform_real_distribution<double> upos(0.1, 2.0);
    for (int round = 0; round < 100; ++round) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const int factors = 2 + static_cast<int>(rng() % 3);
        Polynomial f = Polynomial::constant(n, Complex(1, 0));
        for (int k = 0; k < factors; ++k) {
            Polynomial form = (round % 3 == 0)
                                  ? Polynomial(n)
                                  : Polynomial::constant(n, Complex(upos(rng), 0.0));
            for (int v = 0; v < n; ++v)
                if (rng() % 2 == 0) form += Polynomial::variable(n, v) * Complex(upos(rng), 0.0);
            if (form.is_zero()) form += Polynomial::variable(n, static_cast<int>(rng() % n));
            f *= form;
        }
        FalsifierOptions opt;
        opt.trials = 50;
        opt.seed = 100u + round;
        if (check_cone_stability(f, ConeSpec::orthant(n), opt).counterexample) {
            detail = fmt("product instance %d unexpectedly falsified", round);
            return false;
        }
        if (!is_jump_system(f.support()).is_jump_system) {
            detail = fmt("product support %d fails the two-steps axiom", round);
            return false;
        }
    }

    // determinantal block supports
    DetBlockSpec good;
    good.block_sizes = {2, 1};
    good.terms[{1, 1}] = Complex(1, 0);
    good.terms[{0, 1}] = Complex(2, 0);
    good.terms[{1, 0}] = Complex(-1, 0);
    good.terms[{0, 0}] = Complex(1, 0);
    auto g = det_support_analysis(good);
    if (!(g.jump_system && g.block_size_ok && g.interval_property)) {
        detail = "well-formed determinantal support was rejected";
        return false;
    }
    DetBlockSpec two_term;
    two_term.block_sizes = {2, 1};
    two_term.terms[{1, 1}] = Complex(1, 0);
    two_term.terms[{0, 1}] = Complex(2, 0);
    auto t = det_support_analysis(two_term);
    if (!(t.jump_system && t.block_size_ok && t.interval_property)) {
        detail = "two-term determinantal support was rejected";
        return false;
    }

    DetBlockSpec oversized;
    oversized.block_sizes = {3, 1};
    oversized.terms[{1, 0}] = Complex(1, 0);
    oversized.terms[{0, 1}] = Complex(1, 0);
    if (det_support_analysis(oversized).block_size_ok) {
        detail = "size-3 block escaped the size filter";
        return false;
    }

    DetBlockSpec gapped;
    gapped.block_sizes = {2};
    gapped.terms[{0}] = Complex(1, 0);
    gapped.terms[{2}] = Complex(1, 0);
    auto r = det_support_analysis(gapped);
    if (r.interval_property || !r.jump_system) {
        detail = "exponent gap was not caught by the interval check";
        return false;
    }

    detail = "200 oracle comparisons, 100 clean product supports, block checks";
    return true;
}

// ---- criterion 7: monomial walks ----

bool is_diagonal_exponent(const SymVarSpace& space, const ExponentVec& e) {
    for (int v = 0; v < space.var_count(); ++v) {
        if (e[v] == 0) continue;
        auto [i, j] = space.index_pair(v);
        if (i != j) return false;
    }
    return true;
}

bool criterion7(std::string& detail) {
    // the documented two-step walk, reproduced exactly
    SymVarSpace s3(3);
    Polynomial left = sym_var(s3, 0, 0) + sym_var(s3, 1, 1) + sym_var(s3, 0, 1) * Complex(-2, 0);
    Polynomial right = sym_var(s3, 0, 0) * sym_var(s3, 2, 2) - sym_mono(s3, {{{0, 2}, 2}}, Complex(1, 0));
    Polynomial f = left * right;
    ExponentVec beta(s3.var_count(), 0);
    beta[s3.flat_index(0, 1)] = 1;
    beta[s3.flat_index(0, 2)] = 2;
    auto walk = conjecture_search(f, s3, beta);
    ExponentVec mid(s3.var_count(), 0);
    mid[s3.flat_index(0, 0)] = 1;
    mid[s3.flat_index(0, 2)] = 2;
    ExponentVec end(s3.var_count(), 0);
    end[s3.flat_index(0, 0)] = 2;
    end[s3.flat_index(2, 2)] = 1;
    if (!(walk.found && walk.steps.size() == 2 && walk.steps[0].kind == StepKind::double_step &&
          walk.steps[0].landed == mid && walk.steps[1].kind == StepKind::transposition &&
          walk.steps[1].landed == end)) {
        detail = "reference walk was not reproduced";
        return false;
    }

    // every determinant monomial reaches the diagonal through transpositions
    for (int order = 2; order <= 4; ++order) {
        SymVarSpace s(order);
        Polynomial det = symbolic_determinant(order);
        for (const auto& start : det.support()) {
            auto res = conjecture_search(det, s, start);
            if (!res.found) {
                detail = fmt("no walk found inside the order-%d determinant", order);
                return false;
            }
            for (const auto& step : res.steps)
                if (step.kind != StepKind::transposition) {
                    detail = fmt("non-transposition step inside the order-%d determinant", order);
                    return false;
                }
        }
    }

    // random principal-minor sums over order 3
    std::mt19937 rng(770001u);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int round = 0; round < 20; ++round) {
        std::map<unsigned, Complex> coeffs;
        for (unsigned mask = 0; mask < 8u; ++mask)
            if (rng() % 2 == 0) coeffs[mask] = Complex(u(rng), u(rng));
        if (coeffs.empty()) coeffs[7u] = Complex(1, 0);
        bool nonzero = false;
        for (const auto& [m, c] : coeffs) nonzero |= std::abs(c) > 0.1;
        if (!nonzero) coeffs[5u] = Complex(1, 0);
        Polynomial f = lpm_polynomial(3, coeffs);
        if (f.is_zero()) continue;
        for (const auto& start : f.support()) {
            auto res = conjecture_search(f, s3, start);
            if (!res.found) {
                detail = fmt("minor-sum instance %d has an unreachable monomial", round);
                return false;
            }
        }
    }
    detail = "reference walk exact, determinant walks transposition-only, 20 minor sums";
    return true;
}

// ---- criterion 8: audited transforms ----

bool criterion8(std::string& detail) {
    std::size_t audits = 0;
    std::size_t violations = 0;
    FalsifierOptions opt;
    opt.trials = 50;

    // vector-space inputs, stable and unstable alike
    const int n = 2;
    auto z1 = Polynomial::variable(n, 0);
    auto z2 = Polynomial::variable(n, 1);
    std::vector<Polynomial> vec_inputs{
        z1 * z2 - Polynomial::constant(n, Complex(1, 0)),
        z1 + z2 * Complex(2, 0),
        z1 * z2 + Polynomial::constant(n, Complex(1, 0)),
        (z1 + Polynomial::constant(n, Complex(0, 1))) * (z2 + Polynomial::constant(n, Complex(1, 1))),
        z1 - Polynomial::constant(n, Complex(1, 2)),
        z1 * z1 * z2 + z2,
        Polynomial::constant(n, Complex(2, 0)) + z1,
        (z1 + z2).pow(2),
    };
    std::vector<PreserverSpec> vec_specs;
    vec_specs.push_back(PermuteSpec{{1, 0}});
    {
        ScaleSpec sc;
        sc.c = Complex(2, 0);
        sc.a = {1.0, 0.5};
        vec_specs.push_back(sc);
        ScaleSpec neg;
        neg.c = Complex(1, 0);
        neg.a = {1.0, -1.0};
        vec_specs.push_back(neg);  // guarantee off
    }
    vec_specs.push_back(IdentifySpec{0, 1});
    {
        SpecializeSpec up;
        up.i = 1;
        up.b = Complex(0.5, 1.0);
        vec_specs.push_back(up);
        SpecializeSpec down;
        down.i = 1;
        down.b = Complex(0.0, -2.0);
        vec_specs.push_back(down);  // guarantee off
    }
    vec_specs.push_back(InvertSpec{0});
    vec_specs.push_back(DifferentiateSpec{0});
    vec_specs.push_back(DirDerivativeSpec{{1.0, 1.0}});
    vec_specs.push_back(DirDerivativeSpec{{1.0, -1.0}});  // guarantee off
    {
        AffineSpec aff;
        aff.a = {Complex(0, 0), Complex(0, 0)};
        aff.dirs = {{1.0, 0.0}, {1.0, 1.0}};
        vec_specs.push_back(aff);
    }
    vec_specs.push_back(InitialFormSpec{{1.0, 1.0}});

    auto vspace = PolySpace::vector_space(n);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        opt.seed = seed;
        for (const auto& f : vec_inputs)
            for (const auto& spec : vec_specs) {
                auto rep = audit(spec, f, vspace, ConeSpec::orthant(n), opt);
                ++audits;
                if (!rep.agreement) ++violations;
            }
    }

    // symmetric inputs over orders 2 and 3
    SymVarSpace s2(2);
    SymVarSpace s3(3);
    Polynomial det2 = symbolic_determinant(2);
    Polynomial det3 = symbolic_determinant(3);
    Eigen::MatrixXd corner(3, 3);
    corner << 4, 4, 6, 4, 4, 6, 6, 6, 0;

    std::vector<Polynomial> sym2_inputs{
        det2,
        det2 * sym_var(s2, 0, 0),
        sym_var(s2, 0, 0) * sym_var(s2, 1, 1) + sym_mono(s2, {{{0, 1}, 2}}, Complex(1, 0)),
        matrix_directional_derivative(det2, s2, Eigen::MatrixXd::Identity(2, 2)),
        sym_var(s2, 0, 0) + sym_var(s2, 1, 1),
    };
    std::vector<Polynomial> sym3_inputs{
        det3,
        det3 * sym_var(s3, 2, 2),
        frobenius_initial_form(det3, s3, corner),
        matrix_directional_derivative(det3, s3, Eigen::MatrixXd::Identity(3, 3)),
        sym_var(s3, 0, 0) * sym_var(s3, 1, 1) + sym_mono(s3, {{{0, 1}, 2}}, Complex(0, 1)),
    };

    auto sym_specs = [&](int order) {
        std::vector<PreserverSpec> specs;
        specs.push_back(PsdDiagSpec{});
        specs.push_back(PsdMinorSpec{{0}});
        if (order == 3) specs.push_back(PsdMinorSpec{{0, 2}});
        Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(order, order);
        rot(0, 0) = std::cos(0.5);
        rot(0, 1) = -std::sin(0.5);
        rot(1, 0) = std::sin(0.5);
        rot(1, 1) = std::cos(0.5);
        specs.push_back(PsdCongruenceSpec{rot, CongruenceKind::transpose});
        specs.push_back(PsdCongruenceSpec{rot, CongruenceKind::inverse});
        Eigen::MatrixXd shear = Eigen::MatrixXd::Identity(order, order);
        shear(0, 1) = 1.5;
        specs.push_back(PsdCongruenceSpec{shear, CongruenceKind::inverse});  // guarantee off
        std::vector<int> pi(order);
        for (int k = 0; k < order; ++k) pi[k] = (k + 1) % order;
        specs.push_back(PsdPermuteSpec{pi});
        specs.push_back(PsdDirDerivativeSpec{Eigen::MatrixXd::Identity(order, order)});
        specs.push_back(PsdDirDerivativeSpec{-Eigen::MatrixXd::Identity(order, order)});  // off
        specs.push_back(PsdInversionSpec{});
        Eigen::MatrixXd w = Eigen::MatrixXd::Identity(order, order) * 2.0;
        w(0, 1) = 1.0;
        w(1, 0) = 1.0;
        specs.push_back(PsdInitialFormSpec{w});
        return specs;
    };

    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        opt.seed = seed;
        auto space2 = PolySpace::symmetric_space(2);
        for (const auto& f : sym2_inputs)
            for (const auto& spec : sym_specs(2)) {
                auto rep = audit(spec, f, space2, ConeSpec::psd(2), opt);
                ++audits;
                if (!rep.agreement) ++violations;
            }
        auto space3 = PolySpace::symmetric_space(3);
        for (const auto& f : sym3_inputs)
            for (const auto& spec : sym_specs(3)) {
                auto rep = audit(spec, f, space3, ConeSpec::psd(3), opt);
                ++audits;
                if (!rep.agreement) ++violations;
            }
    }

    // one-degree lifts over pairs whose lifted polynomial is a product of
    // nonnegative forms, hence clean by construction
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        opt.seed = seed;
        for (int k = 0; k < 3; ++k) {
            Polynomial q = Polynomial::constant(n, Complex(1.0 + k, 0)) + z1 + z2 * Complex(0.5 + k, 0);
            Polynomial g = q * (Polynomial::constant(n, Complex(0.5, 0)) + z2 * Complex(2, 0));
            Polynomial fv = q * Complex(1.0 + 0.5 * k, 0.0);
            LiebSokalSpec ls;
            ls.g = g;
            ls.v = {1.0, 0.0};
            auto rep = audit(ls, fv, vspace, ConeSpec::orthant(n), opt);
            ++audits;
            if (!rep.agreement) ++violations;
        }
        LiebSokalSpec lsm;
        lsm.g = det2;
        lsm.v = {1.0, 0.0, 1.0};
        auto rep = audit(lsm, sym_var(s2, 0, 0), PolySpace::symmetric_space(2), ConeSpec::psd(2), opt);
        ++audits;
        if (!rep.agreement) ++violations;
    }

    detail = fmt("%zu audits, %zu soundness events", audits, violations);
    return audits >= 500 && violations == 0;
}

// ---- criterion 9: one-degree lifts ----

bool criterion9(std::string& detail) {
    std::mt19937 rng(990001u);
    std::uniform_real_distribution<double> upos(0.2, 2.0);
    int produced = 0;

    // orthant triples: h = (alpha + beta y + <gamma, z>) * Q(z) with z_1
    // confined to at most one factor of Q, then g = h|_{y=0}, f = dh/dy
    for (int round = 0; round < 24; ++round) {
        const int n = 2 + (round % 2);
        const int extra = 1 + (round % 2);
        Polynomial q = Polynomial::constant(n, Complex(1, 0));
        for (int k = 0; k < extra; ++k) {
            Polynomial form = Polynomial::constant(n, Complex(upos(rng), 0.0));
            for (int v = (k == 0 ? 0 : 1); v < n; ++v)
                form += Polynomial::variable(n, v) * Complex(upos(rng), 0.0);
            q *= form;
        }
        const double alpha = upos(rng), beta = upos(rng);
        Polynomial front = Polynomial::constant(n, Complex(alpha, 0.0));
        for (int v = 0; v < n; ++v) front += Polynomial::variable(n, v) * Complex(upos(rng), 0.0);
        Polynomial g = front * q;
        Polynomial f = q * Complex(beta, 0.0);
        std::vector<double> v(n, 0.0);
        v[0] = 1.0;

        if (f.degree_in(0) > 1) {
            detail = fmt("orthant triple %d has direction degree above one", round);
            return false;
        }
        Polynomial h = lift_pair(g, f);
        FalsifierOptions opt;
        opt.trials = 300;
        opt.seed = 100u + round;
        if (check_cone_stability(h, ConeSpec::orthant(n + 1), opt).counterexample) {
            detail = fmt("lifted input %d unexpectedly falsified", round);
            return false;
        }
        Polynomial out = lieb_sokal_transform(g, f, v);
        if (!out.is_zero()) {
            opt.seed = 200u + round;
            if (check_cone_stability(out, ConeSpec::orthant(n), opt).counterexample) {
                detail = fmt("output of orthant triple %d falsified", round);
                return false;
            }
        }
        ++produced;
    }

    // psd triples: g = c1 z11 z22, f = c2 z11, v = I_2
    SymVarSpace s2(2);
    for (int round = 0; round < 6; ++round) {
        const double c1 = upos(rng), c2 = upos(rng);
        Polynomial g = sym_var(s2, 0, 0) * sym_var(s2, 1, 1) * Complex(c1, 0.0);
        Polynomial f = sym_var(s2, 0, 0) * Complex(c2, 0.0);
        Polynomial h = lift_pair(g, f);
        FalsifierOptions opt;
        opt.trials = 300;
        opt.seed = 300u + round;
        if (check_cone_stability(h, ConeSpec::psd_times_orthant(2, 1), opt).counterexample) {
            detail = fmt("lifted psd input %d unexpectedly falsified", round);
            return false;
        }
        std::vector<double> v{1.0, 0.0, 1.0};
        Polynomial out = lieb_sokal_transform(g, f, v);
        if (out.is_zero()) {
            detail = fmt("psd triple %d collapsed to zero unexpectedly", round);
            return false;
        }
        if (falsifier_finds(out, s2, 300, 400u + round)) {
            detail = fmt("output of psd triple %d falsified", round);
            return false;
        }
        ++produced;
    }

    // the degree guard must reject rho = 2 directions
    int rejections = 0;
    try {
        auto z1 = Polynomial::variable(2, 0);
        lieb_sokal_transform(z1, z1 * z1, std::vector<double>{1.0, 0.0});
    } catch (const LiebSokalRejection& r) {
        if (r.measured_degree == 2) ++rejections;
    }
    try {
        Polynomial f = (sym_var(s2, 0, 0) + Polynomial::constant(3, Complex(1, 0))).pow(2);
        lieb_sokal_transform(sym_var(s2, 1, 1), f, std::vector<double>{1.0, 0.0, 1.0});
    } catch (const LiebSokalRejection& r) {
        if (r.measured_degree == 2) ++rejections;
    }

    detail = fmt("%d triples clean, %d degree rejections", produced, rejections);
    return produced == 30 && rejections == 2;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* label;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "determinant falsification", criterion1},
        {2, "corner-weight initial form", criterion2},
        {3, "random positive definite weights", criterion3},
        {4, "inversion images", criterion4},
        {5, "binomial families and psd corpus", criterion5},
        {6, "jump systems", criterion6},
        {7, "monomial walks", criterion7},
        {8, "audited transforms", criterion8},
        {9, "one-degree lifts", criterion9},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", c.number, c.label,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d of 9 criteria failed\n", failures);
    else std::printf("all 9 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
