#include "conicstab/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

namespace conicstab {

namespace {

std::string fmt_double(double x) {
    char buf[40];
    if (x == 0.0) return "0";
    if (std::nearbyint(x) == x && std::abs(x) < 9e15) {
        std::snprintf(buf, sizeof buf, "%.0f", x);
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class PolyParser {
public:
    PolyParser(const std::string& text, const PolySpace& space)
        : s_(text), space_(space), n_(space.var_count()) {}

    Polynomial parse() {
        Polynomial acc = parse_expression();
        skip_ws();
        if (!eof()) fail("unexpected trailing input");
        return acc;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return eof() ? '\0' : s_[pos_]; }
    char take() { return s_[pos_++]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    void expect(char c, const std::string& what) {
        if (eof() || take() != c) {
            --pos_;
            fail("expected " + what);
        }
    }

    double parse_real() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    // After '('; either a real in parens is rejected, the form is always
    // a complex literal a+bi / a-bi.
    Complex parse_complex_tail() {
        skip_ws();
        double re = parse_real();
        skip_ws();
        if (eof() || (peek() != '+' && peek() != '-')) fail("expected '+' or '-' in complex literal");
        const bool minus = take() == '-';
        skip_ws();
        if (eof() || !(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
            fail("expected the imaginary magnitude");
        double im = parse_real();
        skip_ws();
        expect('i', "'i' in complex literal");
        skip_ws();
        expect(')', "')' closing the complex literal");
        return {re, minus ? -im : im};
    }

    int parse_uint(const std::string& what) {
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected " + what);
        long v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (take() - '0');
            if (v > 1000000) fail(what + " is out of range");
        }
        return static_cast<int>(v);
    }

    // After 'z'; returns the flat variable index.
    int parse_var() {
        if (!space_.symmetric()) {
            int k = parse_uint("a variable index");
            if (k < 1 || k > n_) fail("variable index out of range");
            return k - 1;
        }
        const int order = space_.n;
        int i, j;
        if (peek() == '{') {
            take();
            skip_ws();
            i = parse_uint("a row index");
            skip_ws();
            expect(',', "',' between matrix indices");
            skip_ws();
            j = parse_uint("a column index");
            skip_ws();
            expect('}', "'}' closing the matrix index");
        } else {
            if (order > 9) fail("orders above 9 need the z{i,j} form");
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected a matrix index pair");
            i = take() - '0';
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("symmetric variables need two indices");
            j = take() - '0';
        }
        if (i < 1 || i > order || j < 1 || j > order) fail("matrix index out of range");
        return SymVarSpace(order).flat_index(i - 1, j - 1);
    }

    // Sum of '+'/'-' separated terms; stops before a ')' so it can sit
    // inside a parenthesized factor.
    Polynomial parse_expression() {
        Polynomial acc(n_);
        skip_ws();
        if (eof()) fail("empty polynomial");
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = take() == '-';
        acc += parse_term(neg);
        while (true) {
            skip_ws();
            if (eof() || peek() == ')') break;
            char c = take();
            if (c != '+' && c != '-') fail("expected '+' or '-' between terms");
            acc += parse_term(c == '-');
        }
        return acc;
    }

    Polynomial parse_term(bool negated) {
        Complex coeff = negated ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
        ExponentVec e(n_, 0);
        std::vector<Polynomial> subs;
        while (true) {
            skip_ws();
            if (eof()) fail("unexpected end of input inside a term");
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                coeff *= parse_real();
            } else if (c == '(') {
                // '(' opens either a complex literal or a subexpression;
                // try the literal first and rewind if it does not fit.
                take();
                const std::size_t mark = pos_;
                bool literal = true;
                try {
                    coeff *= parse_complex_tail();
                } catch (const ParseError&) {
                    pos_ = mark;
                    literal = false;
                }
                if (!literal) {
                    Polynomial sub = parse_expression();
                    skip_ws();
                    expect(')', "')' closing the subexpression");
                    int k = 1;
                    skip_ws();
                    if (!eof() && peek() == '^') {
                        take();
                        skip_ws();
                        k = parse_uint("an exponent");
                    }
                    Polynomial powed = Polynomial::monomial(n_, ExponentVec(n_, 0), 1.0);
                    for (int t = 0; t < k; ++t) powed = powed * sub;
                    subs.push_back(std::move(powed));
                }
            } else if (c == 'z') {
                take();
                int var = parse_var();
                int k = 1;
                skip_ws();
                if (!eof() && peek() == '^') {
                    take();
                    skip_ws();
                    k = parse_uint("an exponent");
                }
                e[var] += k;
            } else {
                fail("expected a coefficient or a variable");
            }
            skip_ws();
            if (!eof() && peek() == '*') {
                take();
                continue;
            }
            break;
        }
        Polynomial out = Polynomial::monomial(n_, e, coeff);
        for (const Polynomial& p : subs) out = out * p;
        return out;
    }

    const std::string& s_;
    const PolySpace& space_;
    int n_;
    std::size_t pos_ = 0;
};

bool negligible_imag(Complex c) {
    return std::abs(c.imag()) <= 1e-12 * std::max(1.0, std::abs(c.real()));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t next = text.find(sep, start);
        std::string piece = text.substr(start, next == std::string::npos ? next : next - start);
        // trim
        std::size_t a = piece.find_first_not_of(" \t");
        std::size_t b = piece.find_last_not_of(" \t");
        parts.push_back(a == std::string::npos ? std::string() : piece.substr(a, b - a + 1));
        if (next == std::string::npos) break;
        start = next + 1;
    }
    return parts;
}

double parse_double_strict(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || static_cast<std::size_t>(end - begin) != text.size())
        throw ParseError("expected a number, got '" + text + "'", 0);
    return v;
}

int parse_int_strict(const std::string& text) {
    double v = parse_double_strict(text);
    if (std::nearbyint(v) != v) throw ParseError("expected an integer, got '" + text + "'", 0);
    return static_cast<int>(v);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& piece : split(text, ',')) out.push_back(parse_double_strict(piece));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& piece : split(text, ',')) out.push_back(parse_int_strict(piece));
    return out;
}

Eigen::MatrixXd parse_matrix(const std::vector<std::string>& rows) {
    if (rows.empty()) throw ParseError("expected matrix rows", 0);
    std::vector<std::vector<double>> data;
    for (const auto& r : rows) data.push_back(parse_double_list(r));
    const int m = static_cast<int>(data.size());
    const int n = static_cast<int>(data[0].size());
    Eigen::MatrixXd M(m, n);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(data[i].size()) != n) throw ParseError("ragged matrix rows", 0);
        for (int j = 0; j < n; ++j) M(i, j) = data[i][j];
    }
    return M;
}

// A scalar is parsed as a constant polynomial so "(1+2i)", "-3", "0.5*2"
// all work the same way as coefficients.
Complex parse_scalar(const std::string& text) {
    Polynomial p = parse_polynomial(text, PolySpace::vector_space(1));
    if (p.total_degree() > 0) throw ParseError("expected a scalar, got '" + text + "'", 0);
    return p.coefficient(ExponentVec{0});
}

// 1-based user indices to 0-based, with bounds checking.
int to_index(int user, int n, const std::string& what) {
    if (user < 1 || user > n) throw ParseError(what + " out of range", 0);
    return user - 1;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const PolySpace& space) {
    return PolyParser(text, space).parse();
}

std::string variable_name(const PolySpace& space, int var) {
    if (var < 0 || var >= space.var_count()) throw std::invalid_argument("variable out of range");
    if (!space.symmetric()) return "z" + std::to_string(var + 1);
    auto [i, j] = SymVarSpace(space.n).index_pair(var);
    if (space.n <= 9) return "z" + std::to_string(i + 1) + std::to_string(j + 1);
    return "z{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
}

std::string format_complex(Complex c) {
    if (negligible_imag(c)) return fmt_double(c.real());
    return "(" + fmt_double(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt_double(std::abs(c.imag())) +
           "i)";
}

std::string format_polynomial(const Polynomial& f, const PolySpace& space) {
    if (f.nvars() != space.var_count())
        throw std::invalid_argument("polynomial does not match the space");
    if (f.is_zero()) return "0";

    std::vector<std::pair<ExponentVec, Complex>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& A, const auto& B) {
        int da = std::accumulate(A.first.begin(), A.first.end(), 0);
        int db = std::accumulate(B.first.begin(), B.first.end(), 0);
        if (da != db) return da > db;
        return A.first > B.first;
    });

    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        const bool constant_term =
            std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
        std::string mono;
        for (int v = 0; v < static_cast<int>(e.size()); ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += variable_name(space, v);
            if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }

        std::string coeff_text;
        bool negative = false;
        if (negligible_imag(c)) {
            double re = c.real();
            negative = re < 0;
            double mag = std::abs(re);
            if (constant_term || std::abs(mag - 1.0) > 1e-15) coeff_text = fmt_double(mag);
        } else {
            coeff_text = format_complex(c);
        }

        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        if (coeff_text.empty())
            out += mono;
        else if (mono.empty())
            out += coeff_text;
        else
            out += coeff_text + "*" + mono;
    }
    return out;
}

PolySpace parse_space(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.size() != 2) throw ParseError("expected vector:N or sym:N", 0);
    int n = parse_int_strict(parts[1]);
    if (n < 1) throw ParseError("space size must be positive", 0);
    if (parts[0] == "vector") return PolySpace::vector_space(n);
    if (parts[0] == "sym") {
        if (n > 9) throw ParseError("symmetric orders above 9 are not supported", 0);
        return PolySpace::symmetric_space(n);
    }
    throw ParseError("unknown space kind '" + parts[0] + "'", 0);
}

ConeSpec parse_cone(const std::string& text, const PolySpace& space) {
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    if (kind == "orthant") {
        int n = rest.empty() ? space.var_count() : parse_int_strict(rest);
        if (n < 1) throw ParseError("orthant dimension must be positive", 0);
        return ConeSpec::orthant(n);
    }
    if (kind == "psd") {
        int n;
        if (rest.empty()) {
            if (!space.symmetric())
                throw ParseError("bare psd cone needs a symmetric space", 0);
            n = space.n;
        } else {
            n = parse_int_strict(rest);
        }
        if (n < 1) throw ParseError("matrix order must be positive", 0);
        return ConeSpec::psd(n);
    }
    if (kind == "poly") {
        if (rest.empty()) throw ParseError("polyhedral cone needs generators", 0);
        std::vector<std::vector<double>> gens;
        for (const auto& row : split(rest, ';')) gens.push_back(parse_double_list(row));
        for (const auto& g : gens)
            if (static_cast<int>(g.size()) != space.var_count())
                throw ParseError("generator length does not match the space", 0);
        return ConeSpec::polyhedral(gens);
    }
    throw ParseError("unknown cone '" + kind + "'", 0);
}

PreserverSpec parse_preserver(const std::string& text, const PolySpace& space) {
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    auto groups = split(rest, ';');
    auto need_args = [&](const std::string& why) {
        if (colon == std::string::npos || rest.empty()) throw ParseError(kind + " needs " + why, 0);
    };

    if (kind == "permute") {
        need_args("the image list");
        PermuteSpec s;
        for (int v : parse_int_list(rest)) s.pi.push_back(to_index(v, space.var_count(), "index"));
        return s;
    }
    if (kind == "scale") {
        need_args("a constant and the scale vector");
        if (groups.size() != 2) throw ParseError("scale:CONST;a1,a2,...", 0);
        ScaleSpec s;
        s.c = parse_scalar(groups[0]);
        s.a = parse_double_list(groups[1]);
        return s;
    }
    if (kind == "identify") {
        need_args("two indices");
        auto v = parse_int_list(rest);
        if (v.size() != 2) throw ParseError("identify:i,j", 0);
        IdentifySpec s;
        s.i = to_index(v[0], space.var_count(), "index");
        s.j = to_index(v[1], space.var_count(), "index");
        return s;
    }
    if (kind == "specialize") {
        need_args("an index and a value");
        if (groups.size() != 2) throw ParseError("specialize:i;value", 0);
        SpecializeSpec s;
        s.i = to_index(parse_int_strict(groups[0]), space.var_count(), "index");
        s.b = parse_scalar(groups[1]);
        return s;
    }
    if (kind == "invert") {
        need_args("an index");
        InvertSpec s;
        s.i = to_index(parse_int_strict(rest), space.var_count(), "index");
        return s;
    }
    if (kind == "differentiate") {
        need_args("an index");
        auto v = parse_int_list(rest);
        DifferentiateSpec s;
        if (v.size() == 2 && space.symmetric())
            s.i = SymVarSpace(space.n).flat_index(to_index(v[0], space.n, "index"),
                                                  to_index(v[1], space.n, "index"));
        else if (v.size() == 1)
            s.i = to_index(v[0], space.var_count(), "index");
        else
            throw ParseError("differentiate:k or differentiate:i,j", 0);
        return s;
    }
    if (kind == "dir_derivative") {
        need_args("a direction");
        DirDerivativeSpec s;
        s.v = parse_double_list(rest);
        return s;
    }
    if (kind == "affine") {
        need_args("a base point and directions");
        if (groups.size() < 2) throw ParseError("affine:a1,a2,...;d11,d12,...;...", 0);
        AffineSpec s;
        for (const auto& piece : split(groups[0], ','))
            s.a.push_back(parse_scalar(piece));
        for (std::size_t k = 1; k < groups.size(); ++k)
            s.dirs.push_back(parse_double_list(groups[k]));
        return s;
    }
    if (kind == "initial_form") {
        need_args("a weight vector");
        InitialFormSpec s;
        s.w = parse_double_list(rest);
        return s;
    }
    if (kind == "psd_diag") return PsdDiagSpec{};
    if (kind == "psd_minor") {
        need_args("an index set");
        PsdMinorSpec s;
        for (int v : parse_int_list(rest)) s.J.push_back(to_index(v, space.n, "index"));
        return s;
    }
    if (kind == "psd_congruence") {
        need_args("matrix rows");
        PsdCongruenceSpec s;
        std::vector<std::string> rows = groups;
        if (!rows.empty() && rows[0] == "inv") {
            s.kind = CongruenceKind::inverse;
            rows.erase(rows.begin());
        }
        s.S = parse_matrix(rows);
        return s;
    }
    if (kind == "psd_permute") {
        need_args("the image list");
        PsdPermuteSpec s;
        for (int v : parse_int_list(rest)) s.pi.push_back(to_index(v, space.n, "index"));
        return s;
    }
    if (kind == "psd_dir_derivative") {
        need_args("matrix rows");
        PsdDirDerivativeSpec s;
        s.V = parse_matrix(groups);
        return s;
    }
    if (kind == "psd_inversion") {
        PsdInversionSpec s;
        if (colon != std::string::npos && !rest.empty()) s.blocks = parse_int_list(rest);
        return s;
    }
    if (kind == "psd_initial_form") {
        need_args("matrix rows");
        PsdInitialFormSpec s;
        s.W = parse_matrix(groups);
        return s;
    }
    if (kind == "lieb_sokal") {
        need_args("a polynomial and a direction");
        if (groups.size() != 2) throw ParseError("lieb_sokal:G;v1,v2,...", 0);
        LiebSokalSpec s;
        s.g = parse_polynomial(groups[0], space);
        s.v = parse_double_list(groups[1]);
        return s;
    }
    throw ParseError("unknown transform '" + kind + "'", 0);
}

}  // namespace conicstab
