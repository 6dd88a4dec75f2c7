#include "conicstab/corpus.hpp"

#include <cmath>
#include <sstream>

#include "conicstab/combinatorics.hpp"
#include "conicstab/io.hpp"
#include "conicstab/preservers.hpp"
#include "conicstab/stability.hpp"
#include "conicstab/symmetric.hpp"

namespace conicstab {

namespace {

Polynomial mono(int n, ExponentVec e, double c) {
    return Polynomial::monomial(n, std::move(e), Complex{c, 0.0});
}

std::string verdict_line(const StabilityVerdict& v) {
    std::ostringstream os;
    if (v.counterexample)
        os << "counterexample at trial " << v.witness->trial
           << (v.witness->from_prepass ? " (pre-pass)" : "") << ", residual "
           << v.witness->residual;
    else
        os << "no counterexample in " << v.trials << " trials (" << v.degenerate_trials
           << " degenerate)";
    return os.str();
}

CorpusOutcome check_det_clean(int order, std::uint64_t trials, std::uint64_t seed) {
    Polynomial d = symbolic_determinant(order);
    FalsifierOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    StabilityVerdict v = check_psd_stability(d, SymVarSpace(order), opt);
    return {!v.counterexample, verdict_line(v)};
}

// Weight matrix whose initial form drops the diagonal determinant monomial.
Eigen::MatrixXd corner_weight() {
    Eigen::MatrixXd W(3, 3);
    W << 4, 4, 6, 4, 4, 6, 6, 6, 0;
    return W;
}

Polynomial expected_corner_form() {
    // -z11*z23^2 - z22*z13^2 + 2*z12*z13*z23 over the order-3 space.
    Polynomial p(6);
    p += mono(6, {1, 0, 0, 0, 2, 0}, -1);
    p += mono(6, {0, 0, 2, 1, 0, 0}, -1);
    p += mono(6, {0, 1, 1, 0, 1, 0}, 2);
    return p;
}

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> list;
        auto add = [&](std::string key, std::string description,
                       std::function<CorpusOutcome(std::uint64_t)> run) {
            list.push_back({std::move(key), std::move(description), std::move(run)});
        };

        add("det2-psd-stable", "the order-2 determinant survives the psd falsifier",
            [](std::uint64_t seed) { return check_det_clean(2, 300, seed); });

        add("det3-psd-stable", "the order-3 determinant survives the psd falsifier",
            [](std::uint64_t seed) { return check_det_clean(3, 300, seed); });

        add("det4-psd-stable", "the order-4 determinant survives the psd falsifier",
            [](std::uint64_t seed) { return check_det_clean(4, 150, seed); });

        add("det2-diag-restriction",
            "restricting the order-2 determinant to diagonal matrices gives z1*z2",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial d = diag_restriction(symbolic_determinant(2), SymVarSpace(2));
                Polynomial expected = mono(2, {1, 1}, 1);
                return {d == expected,
                        format_polynomial(d, PolySpace::vector_space(2))};
            });

        add("det3-corner-initial-form",
            "a degenerate weight keeps exactly the three corner terms of the order-3 "
            "determinant",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial init =
                    frobenius_initial_form(symbolic_determinant(3), SymVarSpace(3), corner_weight());
                return {init == expected_corner_form(),
                        format_polynomial(init, PolySpace::symmetric_space(3))};
            });

        add("corner-form-root-at-identity",
            "the corner initial form vanishes at i times the identity, so the psd "
            "pre-pass flags it",
            [](std::uint64_t seed) -> CorpusOutcome {
                Polynomial init = expected_corner_form();
                SymVarSpace space(3);
                Complex at_identity = eval_at_matrix(init, space, MatrixPoint::imaginary_identity(3));
                FalsifierOptions opt;
                opt.seed = seed;
                StabilityVerdict v = check_psd_stability(init, space, opt);
                bool pass = std::abs(at_identity) < 1e-12 && v.counterexample &&
                            v.witness->from_prepass;
                std::ostringstream os;
                os << "|f(iI)| = " << std::abs(at_identity) << "; " << verdict_line(v);
                return {pass, os.str()};
            });

        add("ones-direction-derivative",
            "the derivative of the order-2 determinant along the all-ones matrix is "
            "z11 + z22 - 2*z12",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial d = matrix_directional_derivative(symbolic_determinant(2), SymVarSpace(2),
                                                             Eigen::MatrixXd::Ones(2, 2));
                Polynomial expected(3);
                expected += mono(3, {1, 0, 0}, 1);
                expected += mono(3, {0, 0, 1}, 1);
                expected += mono(3, {0, 1, 0}, -2);
                return {d == expected, format_polynomial(d, PolySpace::symmetric_space(2))};
            });

        add("psd-derivative-stable",
            "that directional derivative is itself psd-stable under the falsifier",
            [](std::uint64_t seed) -> CorpusOutcome {
                Polynomial d = matrix_directional_derivative(symbolic_determinant(2), SymVarSpace(2),
                                                             Eigen::MatrixXd::Ones(2, 2));
                FalsifierOptions opt;
                opt.trials = 300;
                opt.seed = seed;
                StabilityVerdict v = check_psd_stability(d, SymVarSpace(2), opt);
                return {!v.counterexample, verdict_line(v)};
            });

        add("det2-inversion-fixed-point",
            "the order-2 determinant is fixed by the determinant-reflected inversion",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial d = symbolic_determinant(2);
                Polynomial image = inversion_image(d, SymVarSpace(2));
                return {image == d, format_polynomial(image, PolySpace::symmetric_space(2))};
            });

        add("det3-inversion-image",
            "the order-3 determinant maps to minus its own square under inversion",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial d = symbolic_determinant(3);
                Polynomial image = inversion_image(d, SymVarSpace(3));
                Polynomial expected = (d * d) * Complex{-1.0, 0.0};
                std::ostringstream os;
                os << image.term_count() << " terms";
                return {image == expected, os.str()};
            });

        add("offdiag-needs-diagonal",
            "a lone z12 violates the diagonal occurrence rule at entry (1,2)",
            [](std::uint64_t) -> CorpusOutcome {
                SymVarSpace space(2);
                Polynomial f = mono(3, {0, 1, 0}, 1);
                StructureReport rep = structure_check(f, space);
                bool pass = !rep.ok && rep.violation && rep.violation->first == 0 &&
                            rep.violation->second == 1;
                return {pass, rep.ok ? "no violation found" : "violation at (1,2)"};
            });

        add("offdiag-square-binomial",
            "z11*z22 - z12^2 matches the off-diagonal square pattern; an imaginary "
            "ratio breaks it",
            [](std::uint64_t) -> CorpusOutcome {
                SymVarSpace space(2);
                Polynomial good = symbolic_determinant(2);
                Polynomial bad = mono(3, {1, 0, 1}, 1) +
                                 Polynomial::monomial(3, {0, 2, 0}, Complex{0.0, 1.0});
                PsdBinomialReport a = classify_psd_binomial(good, space);
                PsdBinomialReport b = classify_psd_binomial(bad, space);
                bool pass = a.form == PsdBinomialForm::offdiag_square && a.ratio_ok &&
                            b.form == PsdBinomialForm::violates && !b.ratio_ok;
                return {pass, a.detail + " / " + b.detail};
            });

        add("diagonal-binomial-reduction",
            "diagonal two-term polynomials reduce to the one-variable-per-entry rules",
            [](std::uint64_t) -> CorpusOutcome {
                SymVarSpace space(2);
                Polynomial sum = mono(3, {1, 0, 0}, 1) + mono(3, {0, 0, 1}, 1);
                Polynomial plus_one = mono(3, {1, 0, 1}, 1) + mono(3, {0, 0, 0}, 1);
                Polynomial minus_one = mono(3, {1, 0, 1}, 1) + mono(3, {0, 0, 0}, -1);
                PsdBinomialReport a = classify_psd_binomial(sum, space);
                PsdBinomialReport b = classify_psd_binomial(plus_one, space);
                PsdBinomialReport c = classify_psd_binomial(minus_one, space);
                bool pass = a.form == PsdBinomialForm::diagonal &&
                            b.form == PsdBinomialForm::violates &&
                            c.form == PsdBinomialForm::diagonal;
                return {pass, a.detail + " / " + b.detail + " / " + c.detail};
            });

        add("mixed-support-obstruction",
            "a homogeneous cubic splitting into diagonal and off-diagonal terms "
            "cannot be psd-stable",
            [](std::uint64_t) -> CorpusOutcome {
                SymVarSpace space(3);
                Polynomial f = mono(6, {1, 0, 0, 1, 0, 1}, 1) + mono(6, {0, 1, 1, 0, 1, 0}, 1);
                NonMixedReport rep = non_mixed_analysis(f, space);
                bool pass = rep.is_non_mixed && rep.homogeneous && rep.degree == 3 &&
                            rep.licensed_not_psd_stable;
                return {pass, rep.detail};
            });

        add("quadratic-offdiag-forms",
            "in degree two the off-diagonal part must consist of pure squares",
            [](std::uint64_t) -> CorpusOutcome {
                SymVarSpace space(3);
                Polynomial square = mono(6, {1, 0, 0, 1, 0, 0}, 1) + mono(6, {0, 2, 0, 0, 0, 0}, -1);
                Polynomial crossed = mono(6, {1, 0, 0, 1, 0, 0}, 1) + mono(6, {0, 1, 1, 0, 0, 0}, 1);
                NonMixedReport a = non_mixed_analysis(square, space);
                NonMixedReport b = non_mixed_analysis(crossed, space);
                bool pass = !a.licensed_not_psd_stable && a.degree2_form_ok == true &&
                            b.licensed_not_psd_stable && b.degree2_form_ok == false;
                return {pass, a.detail + " / " + b.detail};
            });

        add("det3-flat-support-not-jump-system",
            "the order-3 determinant is conically stable yet its flat support fails the "
            "two-steps axiom, so the support theorem for stable polynomials does not lift "
            "verbatim to matrix variables",
            [](std::uint64_t) -> CorpusOutcome {
                JumpSystemReport rep = is_jump_system(symbolic_determinant(3).support());
                bool pass = !rep.is_jump_system && rep.witness.has_value();
                return {pass, rep.is_jump_system ? "axiom unexpectedly holds"
                                                 : "axiom fails with a recorded witness"};
            });

        add("det-block-support-jump-system",
            "a well-formed determinantal block support satisfies the two-steps axiom and "
            "the per-block interval property in block-exponent coordinates",
            [](std::uint64_t) -> CorpusOutcome {
                DetBlockSpec spec;
                spec.block_sizes = {2, 1};
                spec.terms[{1, 1}] = Complex(1, 0);
                spec.terms[{0, 1}] = Complex(2, 0);
                spec.terms[{1, 0}] = Complex(1, 0);
                spec.terms[{0, 0}] = Complex(3, 0);
                DetSupportReport rep = det_support_analysis(spec);
                bool pass = rep.jump_system && rep.block_size_ok && rep.interval_property;
                return {pass, pass ? "block support passes every check"
                                   : "block support failed a check"};
            });

        add("det-block-criteria-not-sufficient",
            "(det(Z1)+2)*(z33+1) passes every block support check yet the falsifier "
            "finds a root with positive definite imaginary part; the support criteria "
            "are necessary, not sufficient",
            [](std::uint64_t seed) -> CorpusOutcome {
                DetBlockSpec spec;
                spec.block_sizes = {2, 1};
                spec.terms[{1, 1}] = Complex(1, 0);
                spec.terms[{1, 0}] = Complex(1, 0);
                spec.terms[{0, 1}] = Complex(2, 0);
                spec.terms[{0, 0}] = Complex(2, 0);
                DetSupportReport rep = det_support_analysis(spec);
                if (!(rep.jump_system && rep.block_size_ok && rep.interval_property))
                    return {false, "support checks unexpectedly failed"};
                FalsifierOptions opt;
                opt.trials = 400;
                opt.seed = seed;
                StabilityVerdict v =
                    check_psd_stability(expand_det_blocks(spec), SymVarSpace(3), opt);
                return {v.counterexample, verdict_line(v)};
            });

        add("gap-breaks-two-steps", "{(0,0), (2,2)} fails the two-steps axiom",
            [](std::uint64_t) -> CorpusOutcome {
                SupportSet s{{0, 0}, {2, 2}};
                JumpSystemReport rep = is_jump_system(s);
                return {!rep.is_jump_system && rep.witness.has_value(),
                        rep.is_jump_system ? "axiom holds" : "axiom fails as expected"};
            });

        add("product-support-jump-system",
            "the support of a product of positive linear forms is a jump system",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial a = mono(2, {1, 0}, 1) + mono(2, {0, 1}, 1) + mono(2, {0, 0}, 1);
                Polynomial b = mono(2, {1, 0}, 1) + mono(2, {0, 1}, 2) + mono(2, {0, 0}, 3);
                Polynomial c = mono(2, {1, 0}, 3) + mono(2, {0, 1}, 1) + mono(2, {0, 0}, 2);
                JumpSystemReport rep = is_jump_system((a * b * c).support());
                return {rep.is_jump_system, rep.is_jump_system ? "axiom holds" : "axiom fails"};
            });

        add("two-step-walk",
            "from z12*z13^2 the step search reaches a diagonal monomial in two moves: "
            "a double step to z11*z13^2, then a transposition to z11^2*z33",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial left(6);
                left += mono(6, {1, 0, 0, 0, 0, 0}, 1);
                left += mono(6, {0, 0, 0, 1, 0, 0}, 1);
                left += mono(6, {0, 1, 0, 0, 0, 0}, -2);
                Polynomial right(6);
                right += mono(6, {1, 0, 0, 0, 0, 1}, 1);
                right += mono(6, {0, 0, 2, 0, 0, 0}, -1);
                Polynomial f = left * right;
                StepSearchResult res = conjecture_search(f, SymVarSpace(3), {0, 1, 2, 0, 0, 0});
                bool pass = res.found && res.steps.size() == 2 &&
                            res.steps[0].kind == StepKind::double_step &&
                            res.steps[0].landed == ExponentVec{1, 0, 2, 0, 0, 0} &&
                            res.steps[1].kind == StepKind::transposition &&
                            res.steps[1].landed == ExponentVec{2, 0, 0, 0, 0, 1};
                std::ostringstream os;
                os << (res.found ? "found" : "not found") << " in " << res.steps.size()
                   << " steps";
                return {pass, os.str()};
            });

        add("det-walks-use-transpositions",
            "every off-diagonal support point of the order-3 determinant walks to the "
            "diagonal monomial by transpositions alone",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial d = symbolic_determinant(3);
                SymVarSpace space(3);
                const ExponentVec diagonal{1, 0, 0, 1, 0, 1};
                int walks = 0;
                for (const auto& beta : d.support()) {
                    if (beta == diagonal) continue;
                    StepSearchResult res = conjecture_search(d, space, beta);
                    if (!res.found || res.target != diagonal) return {false, "walk failed"};
                    for (const auto& step : res.steps)
                        if (step.kind != StepKind::transposition)
                            return {false, "walk used a non-transposition step"};
                    ++walks;
                }
                std::ostringstream os;
                os << walks << " walks, all transposition-only";
                return {walks == 4, os.str()};
            });

        add("one-step-lift-derivative",
            "z11*z22 + y*z11 is stable on the lifted cone and the paired transform "
            "z11*z22 - 1 is psd-stable",
            [](std::uint64_t seed) -> CorpusOutcome {
                Polynomial g = mono(3, {1, 0, 1}, 1);
                Polynomial f = mono(3, {1, 0, 0}, 1);
                Polynomial h(4);
                h += mono(4, {1, 0, 1, 0}, 1);
                h += mono(4, {1, 0, 0, 1}, 1);
                FalsifierOptions opt;
                opt.trials = 200;
                opt.seed = seed;
                StabilityVerdict lifted =
                    check_cone_stability(h, ConeSpec::psd_times_orthant(2, 1), opt);
                std::vector<double> v{1.0, 0.0, 1.0};
                Polynomial out = lieb_sokal_transform(g, f, v);
                Polynomial expected = mono(3, {1, 0, 1}, 1) + mono(3, {0, 0, 0}, -1);
                StabilityVerdict after = check_psd_stability(out, SymVarSpace(2), opt);
                bool pass = !lifted.counterexample && out == expected && !after.counterexample;
                return {pass, "lift " + verdict_line(lifted) + "; image " + verdict_line(after)};
            });

        add("ratio-bound-example",
            "Im(g/f) stays nonnegative on interior points for g = z1*z2, f = z1",
            [](std::uint64_t seed) -> CorpusOutcome {
                Polynomial g = mono(2, {1, 1}, 1);
                Polynomial f = mono(2, {1, 0}, 1);
                RatioReport rep = ratio_condition_check(g, f, ConeSpec::orthant(2), 400, seed);
                std::ostringstream os;
                os << "min Im(g/f) = " << rep.min_imag << " over " << rep.samples << " samples";
                return {!rep.violation_point && rep.min_imag > -1e-9, os.str()};
            });

        add("inversion-degree-reflection",
            "inverting twice in the same variable returns the polynomial when its "
            "variable degree is even",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial f = mono(2, {2, 1}, 1) + mono(2, {1, 0}, 1) + mono(2, {0, 0}, 1);
                PolySpace space = PolySpace::vector_space(2);
                TransformOutput once = apply(InvertSpec{0}, f, space);
                TransformOutput twice = apply(InvertSpec{0}, once.poly, space);
                return {twice.poly == f, format_polynomial(once.poly, space)};
            });

        add("sharpening-matches-initial-form",
            "coefficientwise sharpening at a large scale agrees with the corner "
            "initial form",
            [](std::uint64_t) -> CorpusOutcome {
                Polynomial d = symbolic_determinant(3);
                SymVarSpace space(3);
                Polynomial sharp = hadamard_scale(d, space, corner_weight(), 1e6);
                Polynomial diff = sharp - expected_corner_form();
                double worst = 0.0;
                for (const auto& [e, c] : diff.terms()) worst = std::max(worst, std::abs(c));
                std::ostringstream os;
                os << "max coefficient gap " << worst;
                return {worst <= 1e-5, os.str()};
            });

        return list;
    }();
    return entries;
}

}  // namespace conicstab
