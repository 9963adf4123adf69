#pragma once

#include <string_view>

#include "g2/profiles/profile.hpp"

namespace g2 {

/// Parses the initial-data mini-language into a closed-form profile.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | primary
///   primary := number | 'r' | 'pi' | '(' expr ')' | func '(' expr ')'
///            | 'pow' '(' expr ',' expr ')'
///
/// func is one of sin, cos, exp, atan. The exponent of pow must fold to a
/// constant. Throws ParseError with the byte offset of the problem.
Profile parse_expression(std::string_view text, const Domain& domain = Domain::line());

}  // namespace g2
