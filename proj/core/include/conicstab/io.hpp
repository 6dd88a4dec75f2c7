#pragma once

#include <stdexcept>
#include <string>

#include "conicstab/polynomial.hpp"
#include "conicstab/preservers.hpp"
#include "conicstab/stability.hpp"

namespace conicstab {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
};

// Grammar (whitespace free between tokens, '*' required between factors):
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := number | '(' number ('+'|'-') number 'i' ')'
//           | '(' poly ')' ('^' nonneg-int)? | varpow
//   varpow := var ('^' nonneg-int)?
// A '(' is read as a complex literal when it can be, a subexpression
// otherwise.
// Vector-space variables are z1, z2, ... (1-based).  Symmetric variables are
// zij for orders up to 9 (z12 names entry (1,2)) and z{i,j} in general.
Polynomial parse_polynomial(const std::string& text, const PolySpace& space);

// Inverse of the parser up to coefficient rounding: terms in decreasing
// total degree, ties in decreasing lexicographic exponent order.
std::string format_polynomial(const Polynomial& f, const PolySpace& space);

// Name of one flat variable in the conventions above.
std::string variable_name(const PolySpace& space, int var);

// "orthant" | "orthant:N" | "psd" | "psd:N" | "poly:v11,v12;v21,v22;..."
// Bare forms take their size from the space.
ConeSpec parse_cone(const std::string& text, const PolySpace& space);

// One transform, written kind[:arg;arg;...] with comma-separated vector
// entries, semicolon-separated groups (matrix rows, or distinct arguments).
// All indices are 1-based.  Examples:
//   permute:2,1,3            scale:2;1,0.5,3        identify:1,2
//   specialize:2;(0+1i)      invert:1               differentiate:3
//   dir_derivative:1,0,2     affine:0,0;1,1;1,-1    initial_form:2,1,1
//   psd_diag                 psd_minor:1,3          psd_congruence:1,1;0,1
//   psd_congruence:inv;0,1;1,0                      psd_permute:2,1
//   psd_dir_derivative:1,1;1,1                      psd_inversion:1,2
//   psd_initial_form:4,4,6;4,4,6;6,6,0              lieb_sokal:z1*z2+1;1,0
PreserverSpec parse_preserver(const std::string& text, const PolySpace& space);

// Coefficient in the syntax accepted by the parser: plain real when the
// imaginary part is negligible, "(a+bi)" otherwise, exact integers without
// a decimal point.
std::string format_complex(Complex c);

// "vector:N" or "sym:N".
PolySpace parse_space(const std::string& text);

}  // namespace conicstab
