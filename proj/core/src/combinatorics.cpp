#include "conicstab/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace conicstab {

namespace {

bool ratio_is_real(Complex r, double tol = 1e-9) {
    return std::abs(r.imag()) <= tol * (1.0 + std::abs(r));
}

// Unit vectors +-e_i in a fixed deterministic order: by variable, plus
// before minus.
std::vector<ExponentVec> signed_units(std::size_t n) {
    std::vector<ExponentVec> units;
    units.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        ExponentVec plus(n, 0), minus(n, 0);
        plus[i] = 1;
        minus[i] = -1;
        units.push_back(plus);
        units.push_back(minus);
    }
    return units;
}

ExponentVec vec_add(const ExponentVec& a, const ExponentVec& b) {
    ExponentVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

}  // namespace

long l1_distance(const ExponentVec& a, const ExponentVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    long d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

std::vector<ExponentVec> steps_between(const ExponentVec& alpha, const ExponentVec& beta) {
    if (alpha.size() != beta.size()) throw std::invalid_argument("vector length mismatch");
    if (alpha == beta) throw std::invalid_argument("steps undefined for equal points");
    const long base = l1_distance(alpha, beta);
    std::vector<ExponentVec> steps;
    for (const auto& sigma : signed_units(alpha.size()))
        if (l1_distance(vec_add(alpha, sigma), beta) == base - 1) steps.push_back(sigma);
    return steps;
}

JumpSystemReport is_jump_system(const SupportSet& points) {
    JumpSystemReport report;
    for (const auto& alpha : points) {
        for (const auto& beta : points) {
            if (alpha == beta) continue;
            for (const auto& sigma : steps_between(alpha, beta)) {
                ExponentVec mid = vec_add(alpha, sigma);
                if (points.count(mid)) continue;
                if (mid == beta) continue;  // cannot happen: beta is in points
                bool second_step = false;
                for (const auto& tau : steps_between(mid, beta))
                    if (points.count(vec_add(mid, tau))) {
                        second_step = true;
                        break;
                    }
                if (!second_step) {
                    report.is_jump_system = false;
                    report.witness = JumpSystemWitness{alpha, beta, sigma};
                    return report;
                }
            }
        }
    }
    return report;
}

StableBinomialReport classify_stable_binomial(const ExponentVec& alpha, const ExponentVec& beta,
                                              Complex c_alpha, Complex c_beta) {
    if (alpha.size() != beta.size()) throw std::invalid_argument("vector length mismatch");
    if (alpha == beta) throw std::invalid_argument("binomial needs distinct exponents");
    if (std::abs(c_alpha) == 0.0 || std::abs(c_beta) == 0.0)
        throw std::invalid_argument("binomial coefficients must be nonzero");

    StableBinomialReport report;
    const std::size_t n = alpha.size();
    report.common_factor.resize(n);
    ExponentVec a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        report.common_factor[i] = std::min(alpha[i], beta[i]);
        a[i] = alpha[i] - report.common_factor[i];
        b[i] = beta[i] - report.common_factor[i];
    }

    auto weight = [](const ExponentVec& v) {
        int s = 0;
        for (int x : v) s += x;
        return s;
    };
    auto is_unit = [&](const ExponentVec& v) { return weight(v) == 1 && *std::max_element(v.begin(), v.end()) == 1; };
    auto is_zero_vec = [&](const ExponentVec& v) { return weight(v) == 0; };

    const Complex ratio = c_alpha / c_beta;

    if ((is_zero_vec(a) && is_unit(b)) || (is_zero_vec(b) && is_unit(a))) {
        report.form = StableBinomialForm::constant_times_variable;
        report.detail = "support {0, e_i}";
        return report;
    }
    if (is_unit(a) && is_unit(b)) {
        report.form = StableBinomialForm::two_variables;
        report.ratio_ok = ratio_is_real(ratio) && ratio.real() >= -1e-9;
        if (!report.ratio_ok) {
            report.form = StableBinomialForm::violates;
            report.detail = "support {e_i, e_j} but coefficient ratio is not in R_{>=0}";
        } else {
            report.detail = "support {e_i, e_j} with nonnegative real ratio";
        }
        return report;
    }
    auto is_pair = [&](const ExponentVec& v) {
        return weight(v) == 2 && *std::max_element(v.begin(), v.end()) <= 2;
    };
    if ((is_zero_vec(a) && is_pair(b)) || (is_zero_vec(b) && is_pair(a))) {
        report.form = StableBinomialForm::constant_plus_product;
        report.ratio_ok = ratio_is_real(ratio) && ratio.real() < -1e-9;
        if (!report.ratio_ok) {
            report.form = StableBinomialForm::violates;
            report.detail = "support {0, e_i + e_j} but coefficient ratio is not in R_{<0}";
        } else {
            report.detail = "support {0, e_i + e_j} with negative real ratio";
        }
        return report;
    }
    report.form = StableBinomialForm::violates;
    report.ratio_ok = true;
    report.detail = "support distance exceeds every admissible pattern";
    return report;
}

PsdBinomialReport classify_psd_binomial(const Polynomial& f, const SymVarSpace& space) {
    if (f.nvars() != space.var_count())
        throw std::invalid_argument("polynomial does not match the symmetric variable space");
    if (f.term_count() != 2) throw std::invalid_argument("psd binomial classification needs two terms");

    auto it = f.terms().begin();
    const ExponentVec e1 = it->first;
    const Complex c1 = it->second;
    ++it;
    const ExponentVec e2 = it->first;
    const Complex c2 = it->second;

    PsdBinomialReport report;
    const int V = space.var_count();
    report.common_factor.resize(V);
    ExponentVec a(V), b(V);
    for (int v = 0; v < V; ++v) {
        report.common_factor[v] = std::min(e1[v], e2[v]);
        a[v] = e1[v] - report.common_factor[v];
        b[v] = e2[v] - report.common_factor[v];
    }

    for (int v = 0; v < V; ++v)
        if (report.common_factor[v] > 0) {
            auto [i, j] = space.index_pair(v);
            if (i != j) {
                report.form = PsdBinomialForm::violates;
                report.detail = "common monomial factor contains an off-diagonal variable";
                return report;
            }
        }

    auto purely_diagonal = [&](const ExponentVec& e) {
        for (int v = 0; v < V; ++v)
            if (e[v] > 0) {
                auto [i, j] = space.index_pair(v);
                if (i != j) return false;
            }
        return true;
    };

    if (purely_diagonal(a) && purely_diagonal(b)) {
        // Project onto the diagonal variables and reuse the one-variable
        // classification.
        const int n = space.order();
        ExponentVec da(n, 0), db(n, 0);
        for (int i = 0; i < n; ++i) {
            da[i] = a[space.flat_index(i, i)];
            db[i] = b[space.flat_index(i, i)];
        }
        StableBinomialReport diag = classify_stable_binomial(da, db, c1, c2);
        if (diag.form != StableBinomialForm::violates) {
            report.form = PsdBinomialForm::diagonal;
            report.ratio_ok = diag.ratio_ok;
            report.detail = "diagonal residual: " + diag.detail;
        } else {
            report.form = PsdBinomialForm::violates;
            report.ratio_ok = diag.ratio_ok;
            report.detail = "diagonal residual: " + diag.detail;
        }
        return report;
    }

    // Remaining admissible shape: {z_ii z_jj, z_ij^2} with real ratio.
    auto match_offdiag = [&](const ExponentVec& diag_part, const ExponentVec& off_part) {
        int off_var = -1;
        for (int v = 0; v < V; ++v) {
            if (off_part[v] == 0) continue;
            auto [i, j] = space.index_pair(v);
            if (i == j || off_part[v] != 2 || off_var >= 0) return false;
            off_var = v;
        }
        if (off_var < 0) return false;
        auto [i, j] = space.index_pair(off_var);
        ExponentVec expect(V, 0);
        expect[space.flat_index(i, i)] = 1;
        expect[space.flat_index(j, j)] = 1;
        return diag_part == expect;
    };

    const Complex ratio = c1 / c2;
    if (match_offdiag(a, b) || match_offdiag(b, a)) {
        report.ratio_ok = ratio_is_real(ratio);
        if (report.ratio_ok) {
            report.form = PsdBinomialForm::offdiag_square;
            report.detail = "residual {z_ii z_jj, z_ij^2} with real ratio";
        } else {
            report.form = PsdBinomialForm::violates;
            report.detail = "residual {z_ii z_jj, z_ij^2} but coefficient ratio is not real";
        }
        return report;
    }

    report.form = PsdBinomialForm::violates;
    report.detail = "residual support matches no admissible psd pattern";
    return report;
}

StructureReport structure_check(const Polynomial& f, const SymVarSpace& space) {
    if (f.nvars() != space.var_count())
        throw std::invalid_argument("polynomial does not match the symmetric variable space");
    std::vector<bool> occurs(space.var_count(), false);
    for (const auto& [e, c] : f.terms())
        for (int v = 0; v < space.var_count(); ++v)
            if (e[v] > 0) occurs[v] = true;

    StructureReport report;
    for (int i = 0; i < space.order() && report.ok; ++i)
        for (int j = i + 1; j < space.order(); ++j) {
            if (!occurs[space.flat_index(i, j)]) continue;
            if (!occurs[space.flat_index(i, i)] || !occurs[space.flat_index(j, j)]) {
                report.ok = false;
                report.violation = std::make_pair(i, j);
                break;
            }
        }
    return report;
}

NonMixedReport non_mixed_analysis(const Polynomial& f, const SymVarSpace& space) {
    if (f.nvars() != space.var_count())
        throw std::invalid_argument("polynomial does not match the symmetric variable space");
    NonMixedReport report;
    if (f.is_zero()) {
        report.is_non_mixed = true;
        report.homogeneous = true;
        report.degree = -1;
        return report;
    }

    report.is_non_mixed = true;
    bool first = true;
    int degree = 0;
    report.homogeneous = true;
    for (const auto& [e, c] : f.terms()) {
        int diag = 0, off = 0, total = 0;
        for (int v = 0; v < space.var_count(); ++v) {
            if (e[v] == 0) continue;
            auto [i, j] = space.index_pair(v);
            (i == j ? diag : off) += e[v];
            total += e[v];
        }
        if (off > 0) report.has_offdiagonal_term = true;
        if (diag > 0 && off > 0) report.is_non_mixed = false;
        if (first) {
            degree = total;
            first = false;
        } else if (total != degree) {
            report.homogeneous = false;
        }
        degree = std::max(degree, total);
    }
    report.degree = degree;

    if (report.is_non_mixed && report.homogeneous && report.has_offdiagonal_term &&
        report.degree >= 3) {
        report.hom_degree_bound_ok = false;
        report.licensed_not_psd_stable = true;
        report.detail = "homogeneous non-mixed with off-diagonal support needs degree at most 2";
    }
    if (report.degree == 2) {
        bool ok = true;
        for (const auto& [e, c] : f.terms()) {
            bool has_off = false, pure_square = false;
            for (int v = 0; v < space.var_count(); ++v) {
                if (e[v] == 0) continue;
                auto [i, j] = space.index_pair(v);
                if (i != j) {
                    has_off = true;
                    pure_square = (e[v] == 2);
                }
            }
            if (has_off) {
                int total = 0;
                for (int x : e) total += x;
                if (!(pure_square && total == 2)) ok = false;
            }
        }
        report.degree2_form_ok = ok;
        if (report.is_non_mixed && report.homogeneous && !ok) {
            report.licensed_not_psd_stable = true;
            report.detail = "degree-2 off-diagonal monomials must be pure squares";
        }
    }
    return report;
}

int DetBlockSpec::matrix_order() const {
    return std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
}

DetSupportReport det_support_analysis(const DetBlockSpec& spec) {
    if (spec.block_sizes.empty()) throw std::invalid_argument("block list must be nonempty");
    for (int d : spec.block_sizes)
        if (d < 1) throw std::invalid_argument("block sizes must be positive");
    if (spec.terms.empty()) throw std::invalid_argument("empty determinantal polynomial");
    const int k = spec.block_count();
    for (const auto& [e, c] : spec.terms) {
        if (static_cast<int>(e.size()) != k) throw std::invalid_argument("exponent length mismatch");
        for (int x : e)
            if (x < 0) throw std::invalid_argument("negative determinant exponent");
    }

    DetSupportReport report;
    report.gamma.assign(k, std::numeric_limits<int>::max());
    for (const auto& [e, c] : spec.terms)
        for (int i = 0; i < k; ++i) report.gamma[i] = std::min(report.gamma[i], e[i]);
    for (const auto& [e, c] : spec.terms) {
        ExponentVec r(k);
        for (int i = 0; i < k; ++i) r[i] = e[i] - report.gamma[i];
        report.residual.insert(r);
    }

    JumpSystemReport jump = is_jump_system(report.residual);
    report.jump_system = jump.is_jump_system;
    report.jump_witness = jump.witness;

    std::vector<int> max_exp(k, 0);
    std::vector<bool> appears(k, false);
    for (const auto& beta : report.residual)
        for (int i = 0; i < k; ++i) {
            max_exp[i] = std::max(max_exp[i], beta[i]);
            if (beta[i] > 0) appears[i] = true;
        }
    for (int i = 0; i < k; ++i)
        if (appears[i] && spec.block_sizes[i] > 2) {
            report.block_size_ok = false;
            report.oversized_block = i;
            break;
        }

    for (int i = 0; i < k && report.interval_property; ++i) {
        if (!appears[i] || spec.block_sizes[i] != 2) continue;
        for (const auto& beta : report.residual) {
            for (int c = -beta[i]; c <= max_exp[i] - beta[i]; ++c) {
                ExponentVec moved = beta;
                moved[i] += c;
                if (!report.residual.count(moved)) {
                    report.interval_property = false;
                    report.interval_witness = std::make_pair(beta, i);
                    break;
                }
            }
            if (!report.interval_property) break;
        }
    }
    return report;
}

Polynomial expand_det_blocks(const DetBlockSpec& spec) {
    const int n = spec.matrix_order();
    SymVarSpace space(n);
    const int k = spec.block_count();

    // Block determinants over the full space.
    std::vector<Polynomial> dets;
    dets.reserve(k);
    int offset = 0;
    for (int b = 0; b < k; ++b) {
        const int d = spec.block_sizes[b];
        SymVarSpace block_space(d);
        Polynomial det_b = symbolic_determinant(d);
        Polynomial lifted(space.var_count());
        for (const auto& [e, c] : det_b.terms()) {
            ExponentVec full(space.var_count(), 0);
            for (int v = 0; v < block_space.var_count(); ++v) {
                if (e[v] == 0) continue;
                auto [i, j] = block_space.index_pair(v);
                full[space.flat_index(offset + i, offset + j)] = e[v];
            }
            lifted += Polynomial::monomial(space.var_count(), full, c);
        }
        dets.push_back(std::move(lifted));
        offset += d;
    }

    Polynomial out(space.var_count());
    for (const auto& [e, c] : spec.terms) {
        Polynomial term = Polynomial::constant(space.var_count(), c);
        for (int b = 0; b < k; ++b)
            if (e[b] > 0) term *= dets[b].pow(e[b]);
        out += term;
    }
    return out;
}

Polynomial lpm_polynomial(int order, const std::map<unsigned, Complex>& coefficients) {
    if (order < 1 || order > kMaxSymbolicOrder)
        throw std::invalid_argument("matrix order outside symbolic expansion cap");
    SymVarSpace space(order);
    Polynomial out(space.var_count());
    for (const auto& [mask, c] : coefficients) {
        if (mask >= (1u << order)) throw std::invalid_argument("subset mask out of range");
        std::vector<int> J;
        for (int i = 0; i < order; ++i)
            if (mask & (1u << i)) J.push_back(i);
        if (J.empty()) {
            out += Polynomial::constant(space.var_count(), c);
            continue;
        }
        SymVarSpace sub(static_cast<int>(J.size()));
        Polynomial det_j = symbolic_determinant(static_cast<int>(J.size()));
        for (const auto& [e, cc] : det_j.terms()) {
            ExponentVec full(space.var_count(), 0);
            for (int v = 0; v < sub.var_count(); ++v) {
                if (e[v] == 0) continue;
                auto [i, j] = sub.index_pair(v);
                full[space.flat_index(J[i], J[j])] = e[v];
            }
            out += Polynomial::monomial(space.var_count(), full, c * cc);
        }
    }
    return out;
}

namespace {

// Candidate step deltas over a symmetric variable space, deduplicated within
// each kind, in a deterministic order.
struct StepCatalog {
    std::vector<std::pair<StepKind, ExponentVec>> entries;
};

StepCatalog build_step_catalog(const SymVarSpace& space) {
    StepCatalog catalog;
    const int V = space.var_count();
    std::set<ExponentVec> seen;

    auto push = [&](StepKind kind, const ExponentVec& delta) {
        bool zero = true;
        for (int x : delta)
            if (x != 0) zero = false;
        if (zero) return;
        if (!seen.insert(delta).second) return;
        catalog.entries.emplace_back(kind, delta);
    };

    for (int v = 0; v < V; ++v)
        for (int s : {1, -1}) {
            ExponentVec d(V, 0);
            d[v] = s;
            push(StepKind::linear, d);
        }
    for (int v1 = 0; v1 < V; ++v1)
        for (int v2 = v1; v2 < V; ++v2)
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    ExponentVec d(V, 0);
                    d[v1] += s1;
                    d[v2] += s2;
                    push(StepKind::double_step, d);
                }
    const int n = space.order();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    ExponentVec d(V, 0);
                    d[space.flat_index(i, j)] += 1;
                    d[space.flat_index(k, l)] += 1;
                    d[space.flat_index(i, k)] -= 1;
                    d[space.flat_index(j, l)] -= 1;
                    push(StepKind::transposition, d);
                }
    return catalog;
}

bool is_diagonal_exponent(const SymVarSpace& space, const ExponentVec& e) {
    for (int v = 0; v < space.var_count(); ++v)
        if (e[v] > 0) {
            auto [i, j] = space.index_pair(v);
            if (i != j) return false;
        }
    return true;
}

}  // namespace

StepSearchResult conjecture_search(const Polynomial& f, const SymVarSpace& space,
                                   const ExponentVec& beta) {
    if (f.nvars() != space.var_count())
        throw std::invalid_argument("polynomial does not match the symmetric variable space");
    SupportSet supp = f.support();
    if (!supp.count(beta)) throw std::invalid_argument("start monomial is not in the support");

    StepSearchResult result;
    result.start = beta;

    // Diagonal targets in increasing distance; ties broken toward the
    // graded-lex-larger exponent to keep the search deterministic.
    std::vector<ExponentVec> targets;
    for (const auto& e : supp)
        if (is_diagonal_exponent(space, e)) targets.push_back(e);
    std::sort(targets.begin(), targets.end(), [&](const ExponentVec& a, const ExponentVec& b) {
        long da = l1_distance(beta, a), db = l1_distance(beta, b);
        if (da != db) return da < db;
        return a > b;  // lexicographically larger first
    });
    if (targets.empty()) return result;

    StepCatalog catalog = build_step_catalog(space);

    for (const auto& target : targets) {
        if (beta == target) {
            result.found = true;
            result.target = target;
            return result;
        }
        std::map<ExponentVec, std::pair<ExponentVec, std::pair<StepKind, ExponentVec>>> parent;
        std::deque<ExponentVec> queue{beta};
        std::set<ExponentVec> visited{beta};
        bool reached = false;
        while (!queue.empty() && !reached) {
            ExponentVec u = queue.front();
            queue.pop_front();
            ++result.nodes_explored;
            const long du = l1_distance(u, target);
            for (const auto& [kind, delta] : catalog.entries) {
                ExponentVec w = vec_add(u, delta);
                if (l1_distance(w, target) >= du) continue;
                if (!supp.count(w)) continue;
                if (visited.count(w)) continue;
                visited.insert(w);
                parent.emplace(w, std::make_pair(u, std::make_pair(kind, delta)));
                if (w == target) {
                    reached = true;
                    break;
                }
                queue.push_back(w);
            }
        }
        if (!reached) continue;

        std::vector<MonomialStep> steps;
        ExponentVec cur = target;
        while (cur != beta) {
            const auto& [prev, edge] = parent.at(cur);
            steps.push_back(MonomialStep{edge.first, edge.second, cur, l1_distance(cur, target)});
            cur = prev;
        }
        std::reverse(steps.begin(), steps.end());
        result.found = true;
        result.target = target;
        result.steps = std::move(steps);
        return result;
    }
    return result;
}

}  // namespace conicstab
