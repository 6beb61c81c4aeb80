// Text form of MeroFunctions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'Y' index | 'exp' '(' expr ')' | '(' expr ')'
//
// Anything divided by must factor into constants, homogeneous linear forms,
// exp(lin) and (a - a*exp(lin)) shapes such as (1 - exp(lin)) or
// (exp(lin) - 1).
#ifndef QHPAIR_CLI_EXPRESSION_HPP
#define QHPAIR_CLI_EXPRESSION_HPP

#include <string>
#include <string_view>

#include "qhpair/mero.hpp"

namespace qhpair {

MeroFunction parse_mero_expression(std::string_view text, int rank);

/// Parses a linear form such as "Y1 + 2*Y2" or "1/3*Y2".
LinearForm parse_linear_form(std::string_view text, int rank);

/// Canonical text that parses back to the identical MeroFunction.
std::string format_mero(const MeroFunction& f);
std::string format_linear_form(const LinearForm& l);
std::string format_polynomial(const Polynomial& p);

}  // namespace qhpair

#endif  // QHPAIR_CLI_EXPRESSION_HPP
