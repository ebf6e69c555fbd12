#ifndef QIDENT_PARSER_HPP
#define QIDENT_PARSER_HPP

#include <string>

#include "qident/expr.hpp"

namespace qident {

/// Parses the CLI expression grammar into an expression tree.
/// Throws SyntaxError with line/column and the expected-token set.
///
/// Grammar (whitespace-insensitive):
///   expr    := ['-'] term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := primary ['^' rexp]
///   primary := integer | 'q' | call | poch | '(' expr ')'
///   call    := ('f'|'Psi') '(' mono ',' mono ')' | ('phi'|'psi'|'fneg') '(' mono ')'
///   poch    := '(' mono (',' mono)* ';' qpow ')' '_' ('inf' | integer)
///   mono    := ['-'] integer ['*' qpow] | ['-'] qpow
///   qpow    := 'q' ['^' rexp]
///   rexp    := ['-'] integer | '(' ['-'] integer '/' integer ')'
ExprPtr parse_expr_text(const std::string& text);

} // namespace qident

#endif
