// Command-line front end: stability checks, audited transforms, support
// combinatorics, step searches, block-determinant analysis, and the bundled
// example corpus.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conicstab/combinatorics.hpp"
#include "conicstab/corpus.hpp"
#include "conicstab/io.hpp"
#include "conicstab/preservers.hpp"
#include "conicstab/stability.hpp"

using nlohmann::json;
using namespace conicstab;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::uint64_t trials = 400;
    double tol_root = 1e-9;
    double tol_interior = 1e-7;
    std::string out = "text";
    std::string out_file;
    bool timing = false;

    FalsifierOptions falsifier() const {
        FalsifierOptions opt;
        opt.seed = seed;
        opt.trials = trials;
        opt.root_tol = tol_root;
        opt.interior_margin = tol_interior;
        return opt;
    }
};

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json witness_to_json(const Witness& w, const PolySpace& space) {
    json point = json::array();
    for (Complex c : w.point) point.push_back(complex_to_json(c));
    json named = json::object();
    for (int v = 0; v < static_cast<int>(w.point.size()); ++v) {
        std::string name = v < space.var_count() ? variable_name(space, v)
                                                 : "y" + std::to_string(v - space.var_count() + 1);
        named[name] = format_complex(w.point[v]);
    }
    return json{{"point", point},
                {"named", named},
                {"residual", w.residual},
                {"interior_margin", w.interior_margin},
                {"trial", w.trial},
                {"from_prepass", w.from_prepass}};
}

json verdict_to_json(const StabilityVerdict& v, const PolySpace& space) {
    json j{{"counterexample", v.counterexample},
           {"trials", v.trials},
           {"seed", v.seed},
           {"degenerate_trials", v.degenerate_trials},
           {"nonconverged_trials", v.nonconverged_trials},
           {"note", v.note}};
    if (v.witness) j["witness"] = witness_to_json(*v.witness, space);
    return j;
}

std::string verdict_to_text(const StabilityVerdict& v, const PolySpace& space) {
    std::ostringstream os;
    if (!v.counterexample) {
        os << "no counterexample in " << v.trials << " trials (" << v.degenerate_trials
           << " degenerate, " << v.nonconverged_trials << " non-converged)";
        return os.str();
    }
    const Witness& w = *v.witness;
    os << "counterexample at trial " << w.trial << (w.from_prepass ? " (pre-pass)" : "")
       << ", residual " << w.residual << ", interior margin " << w.interior_margin << "\n";
    os << "  point:";
    for (int k = 0; k < static_cast<int>(w.point.size()); ++k) {
        std::string name = k < space.var_count() ? variable_name(space, k)
                                                 : "y" + std::to_string(k - space.var_count() + 1);
        os << " " << name << "=" << format_complex(w.point[k]);
    }
    return os.str();
}

StabilityVerdict run_check(const Polynomial& f, const PolySpace& space, const ConeSpec& cone,
                           const FalsifierOptions& opt) {
    if (cone.kind == ConeSpec::Kind::psd && space.symmetric() && cone.order == space.n)
        return check_psd_stability(f, space.sym(), opt);
    return check_cone_stability(f, cone, opt);
}

ConeSpec default_cone(const PolySpace& space) {
    return space.symmetric() ? ConeSpec::psd(space.n) : ConeSpec::orthant(space.n);
}

void emit(const GlobalOptions& global, const json& doc, const std::string& text) {
    std::string payload = global.out == "json" ? doc.dump(2) + "\n" : text;
    if (global.out_file.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(global.out_file);
    if (!out) throw std::runtime_error("cannot open output file " + global.out_file);
    out << payload;
}

json step_to_json(const MonomialStep& step) {
    const char* kind = step.kind == StepKind::linear ? "linear"
                       : step.kind == StepKind::double_step ? "double"
                                                            : "transposition";
    return json{{"kind", kind},
                {"delta", step.delta},
                {"landed", step.landed},
                {"distance_after", step.distance_after}};
}

std::string monomial_text(const ExponentVec& e, const PolySpace& space) {
    return format_polynomial(Polynomial::monomial(space.var_count(), e, 1.0), space);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conic stability toolkit"};
    app.footer("exit codes: 0 clean or completed, 1 counterexample found, 2 error or disagreement");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "random seed for sampling");
    app.add_option("--trials", global.trials, "falsifier trial count");
    app.add_option("--tol-root", global.tol_root, "root finder residual tolerance");
    app.add_option("--tol-interior", global.tol_interior, "interior margin for witnesses");
    app.add_option("--out", global.out, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out-file", global.out_file, "write the result to a file");
    app.add_flag("--timing", global.timing, "include elapsed time in the output");

    std::string space_text = "vector:2";
    std::string poly_text, cone_text, op_text, from_text, blocks_text, terms_text, filter_text;
    bool do_audit = false, do_expand = false, do_check = false;

    CLI::App* cmd_check = app.add_subcommand("check", "falsify stability over a cone");
    cmd_check->add_option("--space", space_text, "vector:N or sym:N")->required();
    cmd_check->add_option("--poly", poly_text, "polynomial text")->required();
    cmd_check->add_option("--cone", cone_text, "orthant | psd | poly:rows (default from space)");

    CLI::App* cmd_transform = app.add_subcommand("transform", "apply a transform");
    cmd_transform->add_option("--space", space_text, "vector:N or sym:N")->required();
    cmd_transform->add_option("--poly", poly_text, "polynomial text")->required();
    cmd_transform->add_option("--op", op_text, "transform, e.g. psd_diag or invert:1")->required();
    cmd_transform->add_option("--cone", cone_text, "cone for --audit (default from space)");
    cmd_transform->add_flag("--audit", do_audit, "falsify both sides and compare");

    CLI::App* cmd_support = app.add_subcommand("support", "combinatorial support analysis");
    cmd_support->add_option("--space", space_text, "vector:N or sym:N")->required();
    cmd_support->add_option("--poly", poly_text, "polynomial text")->required();

    CLI::App* cmd_conjecture =
        app.add_subcommand("conjecture", "walk from a support monomial to a diagonal one");
    cmd_conjecture->add_option("--space", space_text, "sym:N")->required();
    cmd_conjecture->add_option("--poly", poly_text, "polynomial text")->required();
    cmd_conjecture->add_option("--from", from_text, "start monomial, e.g. z12*z13^2")->required();

    CLI::App* cmd_detpoly =
        app.add_subcommand("detpoly", "polynomial in determinants of diagonal blocks");
    cmd_detpoly->add_option("--blocks", blocks_text, "block sizes, e.g. 1,2")->required();
    cmd_detpoly
        ->add_option("--terms", terms_text, "semicolon list of exponents=coeff, e.g. 1,0=1;0,2=-2")
        ->required();
    cmd_detpoly->add_flag("--expand", do_expand, "print the expanded polynomial");
    cmd_detpoly->add_flag("--check", do_check, "falsify the expanded polynomial");

    CLI::App* cmd_corpus = app.add_subcommand("corpus", "run the bundled worked examples");
    cmd_corpus->add_option("--filter", filter_text, "only keys containing this substring");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    int exit_code = 0;
    const auto started = std::chrono::steady_clock::now();

    try {
        json doc;
        std::ostringstream text;

        if (cmd_check->parsed()) {
            PolySpace space = parse_space(space_text);
            Polynomial f = parse_polynomial(poly_text, space);
            ConeSpec cone =
                cone_text.empty() ? default_cone(space) : parse_cone(cone_text, space);
            StabilityVerdict v = run_check(f, space, cone, global.falsifier());
            if (v.counterexample) exit_code = 1;
            doc = json{{"command", "check"},
                       {"space", space.describe()},
                       {"cone", cone.describe()},
                       {"polynomial", format_polynomial(f, space)},
                       {"verdict", verdict_to_json(v, space)}};
            text << "polynomial: " << format_polynomial(f, space) << "\n"
                 << "space: " << space.describe() << "\n"
                 << "cone: " << cone.describe() << "\n"
                 << "verdict: " << verdict_to_text(v, space) << "\n";
        } else if (cmd_transform->parsed()) {
            PolySpace space = parse_space(space_text);
            Polynomial f = parse_polynomial(poly_text, space);
            PreserverSpec spec = parse_preserver(op_text, space);
            if (do_audit) {
                ConeSpec cone =
                    cone_text.empty() ? default_cone(space) : parse_cone(cone_text, space);
                AuditReport rep = audit(spec, f, space, cone, global.falsifier());
                if (!rep.agreement) exit_code = 2;
                doc = json{{"command", "transform"},
                           {"transform", rep.transform},
                           {"input", format_polynomial(f, space)},
                           {"space", space.describe()},
                           {"cone", cone.describe()},
                           {"guarantee", rep.guarantee},
                           {"guarantee_applies", rep.guarantee_applies},
                           {"input_verdict", verdict_to_json(rep.input_verdict, space)},
                           {"output", format_polynomial(rep.output.poly, rep.output.space)},
                           {"output_space", rep.output.space.describe()},
                           {"output_cone", rep.output_cone.describe()},
                           {"output_is_zero", rep.output_is_zero},
                           {"agreement", rep.agreement}};
                if (!rep.precondition_note.empty()) doc["precondition_note"] = rep.precondition_note;
                if (rep.output.warning) doc["warning"] = *rep.output.warning;
                if (rep.output_verdict)
                    doc["output_verdict"] = verdict_to_json(*rep.output_verdict, rep.output.space);
                text << "transform: " << rep.transform << "\n"
                     << "guarantee: " << rep.guarantee << "\n"
                     << "guarantee applies: " << (rep.guarantee_applies ? "yes" : "no");
                if (!rep.precondition_note.empty()) text << " (" << rep.precondition_note << ")";
                text << "\n"
                     << "input: " << format_polynomial(f, space) << "\n"
                     << "input verdict: " << verdict_to_text(rep.input_verdict, space) << "\n"
                     << "output: " << format_polynomial(rep.output.poly, rep.output.space) << "\n"
                     << "output space: " << rep.output.space.describe() << "\n";
                if (rep.output.warning) text << "warning: " << *rep.output.warning << "\n";
                if (rep.output_verdict)
                    text << "output verdict: "
                         << verdict_to_text(*rep.output_verdict, rep.output.space) << "\n";
                text << "agreement: " << (rep.agreement ? "yes" : "NO") << "\n";
            } else {
                TransformOutput out = apply(spec, f, space);
                doc = json{{"command", "transform"},
                           {"transform", preserver_name(spec)},
                           {"input", format_polynomial(f, space)},
                           {"space", space.describe()},
                           {"output", format_polynomial(out.poly, out.space)},
                           {"output_space", out.space.describe()}};
                if (out.warning) doc["warning"] = *out.warning;
                text << "transform: " << preserver_name(spec) << "\n"
                     << "input: " << format_polynomial(f, space) << "\n"
                     << "output: " << format_polynomial(out.poly, out.space) << "\n"
                     << "output space: " << out.space.describe() << "\n";
                if (out.warning) text << "warning: " << *out.warning << "\n";
            }
        } else if (cmd_support->parsed()) {
            PolySpace space = parse_space(space_text);
            Polynomial f = parse_polynomial(poly_text, space);
            SupportSet support = f.support();
            JumpSystemReport jump = is_jump_system(support);
            doc = json{{"command", "support"},
                       {"polynomial", format_polynomial(f, space)},
                       {"space", space.describe()},
                       {"terms", f.term_count()},
                       {"jump_system", jump.is_jump_system}};
            json support_json = json::array();
            for (const auto& e : support) support_json.push_back(e);
            doc["support"] = support_json;
            text << "polynomial: " << format_polynomial(f, space) << "\n"
                 << "terms: " << f.term_count() << "\n"
                 << "jump system: " << (jump.is_jump_system ? "yes" : "no") << "\n";
            if (jump.witness) {
                doc["jump_witness"] = json{{"alpha", jump.witness->alpha},
                                           {"beta", jump.witness->beta},
                                           {"sigma", jump.witness->sigma}};
                text << "  two-steps axiom fails from " << monomial_text(jump.witness->alpha, space)
                     << " toward " << monomial_text(jump.witness->beta, space) << "\n";
            }
            if (space.symmetric()) {
                SymVarSpace sym = space.sym();
                StructureReport structure = structure_check(f, sym);
                doc["diagonal_occurrence_ok"] = structure.ok;
                text << "diagonal occurrence rule: " << (structure.ok ? "holds" : "violated");
                if (structure.violation) {
                    doc["diagonal_occurrence_violation"] =
                        json::array({structure.violation->first + 1, structure.violation->second + 1});
                    text << " at (" << structure.violation->first + 1 << ","
                         << structure.violation->second + 1 << ")";
                }
                text << "\n";
                NonMixedReport nm = non_mixed_analysis(f, sym);
                doc["non_mixed"] = json{{"is_non_mixed", nm.is_non_mixed},
                                        {"homogeneous", nm.homogeneous},
                                        {"degree", nm.degree},
                                        {"licensed_not_psd_stable", nm.licensed_not_psd_stable},
                                        {"detail", nm.detail}};
                text << "non-mixed terms: " << (nm.is_non_mixed ? "yes" : "no")
                     << ", homogeneous: " << (nm.homogeneous ? "yes" : "no");
                if (nm.degree >= 0) text << ", degree " << nm.degree;
                text << "\n";
                if (nm.licensed_not_psd_stable)
                    text << "  support structure rules out psd-stability\n";
                if (!nm.detail.empty()) text << "  " << nm.detail << "\n";
                if (f.term_count() == 2) {
                    PsdBinomialReport bin = classify_psd_binomial(f, sym);
                    const char* form = bin.form == PsdBinomialForm::diagonal ? "diagonal"
                                       : bin.form == PsdBinomialForm::offdiag_square
                                           ? "offdiag_square"
                                           : "violates";
                    doc["binomial"] =
                        json{{"form", form}, {"ratio_ok", bin.ratio_ok}, {"detail", bin.detail}};
                    text << "binomial form: " << form << " (" << bin.detail << ")\n";
                }
            } else if (f.term_count() == 2) {
                auto it = f.terms().begin();
                auto [e1, c1] = *it;
                ++it;
                auto [e2, c2] = *it;
                StableBinomialReport bin = classify_stable_binomial(e1, e2, c1, c2);
                const char* form =
                    bin.form == StableBinomialForm::constant_times_variable ? "constant_times_variable"
                    : bin.form == StableBinomialForm::two_variables         ? "two_variables"
                    : bin.form == StableBinomialForm::constant_plus_product ? "constant_plus_product"
                                                                            : "violates";
                doc["binomial"] =
                    json{{"form", form}, {"ratio_ok", bin.ratio_ok}, {"detail", bin.detail}};
                text << "binomial form: " << form << " (" << bin.detail << ")\n";
            }
        } else if (cmd_conjecture->parsed()) {
            PolySpace space = parse_space(space_text);
            if (!space.symmetric()) throw ParseError("conjecture needs a symmetric space", 0);
            Polynomial f = parse_polynomial(poly_text, space);
            Polynomial start = parse_polynomial(from_text, space);
            if (start.term_count() != 1) throw ParseError("--from must be a single monomial", 0);
            const ExponentVec beta = start.terms().begin()->first;
            StepSearchResult res = conjecture_search(f, space.sym(), beta);
            doc = json{{"command", "conjecture"},
                       {"polynomial", format_polynomial(f, space)},
                       {"start", res.start},
                       {"found", res.found},
                       {"nodes_explored", res.nodes_explored}};
            text << "polynomial: " << format_polynomial(f, space) << "\n"
                 << "start: " << monomial_text(beta, space) << "\n";
            if (res.found) {
                doc["target"] = res.target;
                json steps = json::array();
                for (const auto& step : res.steps) steps.push_back(step_to_json(step));
                doc["steps"] = steps;
                text << "target: " << monomial_text(res.target, space) << "\n"
                     << "steps: " << res.steps.size() << "\n";
                for (const auto& step : res.steps) {
                    const char* kind = step.kind == StepKind::linear ? "linear"
                                       : step.kind == StepKind::double_step ? "double"
                                                                            : "transposition";
                    text << "  " << kind << " -> " << monomial_text(step.landed, space)
                         << " (distance " << step.distance_after << ")\n";
                }
            } else {
                text << "no decreasing walk to a diagonal support monomial found\n";
            }
        } else if (cmd_detpoly->parsed()) {
            DetBlockSpec spec;
            for (const auto& piece : [&] {
                     std::vector<std::string> parts;
                     std::stringstream ss(blocks_text);
                     std::string item;
                     while (std::getline(ss, item, ',')) parts.push_back(item);
                     return parts;
                 }())
                spec.block_sizes.push_back(std::stoi(piece));
            {
                std::stringstream ss(terms_text);
                std::string item;
                while (std::getline(ss, item, ';')) {
                    auto eq = item.find('=');
                    if (eq == std::string::npos)
                        throw ParseError("term needs the form e1,e2,...=coeff", 0);
                    ExponentVec e;
                    std::stringstream es(item.substr(0, eq));
                    std::string num;
                    while (std::getline(es, num, ',')) e.push_back(std::stoi(num));
                    if (static_cast<int>(e.size()) != spec.block_count())
                        throw ParseError("term exponent length does not match the block count", 0);
                    Polynomial c = parse_polynomial(item.substr(eq + 1), PolySpace::vector_space(1));
                    if (c.total_degree() > 0) throw ParseError("coefficient must be a scalar", 0);
                    spec.terms[e] = c.coefficient(ExponentVec{0});
                }
            }
            if (spec.terms.empty()) throw ParseError("no terms given", 0);
            DetSupportReport rep = det_support_analysis(spec);
            doc = json{{"command", "detpoly"},
                       {"block_sizes", spec.block_sizes},
                       {"gamma", rep.gamma},
                       {"jump_system", rep.jump_system},
                       {"block_size_ok", rep.block_size_ok},
                       {"interval_property", rep.interval_property}};
            json residual = json::array();
            for (const auto& e : rep.residual) residual.push_back(e);
            doc["residual"] = residual;
            if (rep.oversized_block) doc["oversized_block"] = *rep.oversized_block + 1;
            text << "blocks: " << blocks_text << "\n"
                 << "common factor exponent: " << json(rep.gamma).dump() << "\n"
                 << "residual support is a jump system: " << (rep.jump_system ? "yes" : "no")
                 << "\n"
                 << "appearing blocks have size <= 2: " << (rep.block_size_ok ? "yes" : "no")
                 << "\n"
                 << "per-block exponent intervals: " << (rep.interval_property ? "yes" : "no")
                 << "\n";
            PolySpace full = PolySpace::symmetric_space(spec.matrix_order());
            if (do_expand || do_check) {
                Polynomial expanded = expand_det_blocks(spec);
                if (do_expand) {
                    doc["expanded"] = format_polynomial(expanded, full);
                    text << "expanded: " << format_polynomial(expanded, full) << "\n";
                }
                if (do_check) {
                    StabilityVerdict v =
                        check_psd_stability(expanded, full.sym(), global.falsifier());
                    if (v.counterexample) exit_code = 1;
                    doc["verdict"] = verdict_to_json(v, full);
                    text << "verdict: " << verdict_to_text(v, full) << "\n";
                }
            }
        } else if (cmd_corpus->parsed()) {
            json results = json::array();
            int passed = 0, failed = 0;
            for (const auto& entry : corpus_entries()) {
                if (!filter_text.empty() && entry.key.find(filter_text) == std::string::npos)
                    continue;
                CorpusOutcome outcome = entry.run(global.seed);
                (outcome.pass ? passed : failed)++;
                results.push_back(json{{"key", entry.key},
                                       {"description", entry.description},
                                       {"pass", outcome.pass},
                                       {"detail", outcome.detail}});
                text << (outcome.pass ? "PASS " : "FAIL ") << entry.key << ": " << outcome.detail
                     << "\n";
            }
            doc = json{{"command", "corpus"},
                       {"entries", results},
                       {"passed", passed},
                       {"failed", failed}};
            text << passed << " passed, " << failed << " failed\n";
            if (failed > 0) exit_code = 2;
        }

        if (global.timing) {
            const auto elapsed = std::chrono::steady_clock::now() - started;
            const double ms =
                std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed)
                    .count();
            doc["elapsed_ms"] = ms;
            text << "elapsed: " << ms << " ms\n";
        }
        emit(global, doc, text.str());
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << " (position " << e.position << ")\n";
        return 2;
    } catch (const LiebSokalRejection& e) {
        std::cerr << "rejected: " << e.what() << " (measured degree " << e.measured_degree
                  << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
