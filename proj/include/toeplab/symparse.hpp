#pragma once

#include <string>
#include <vector>

#include "toeplab/symbol.hpp"

namespace toeplab {

/// Which variable basis a textual expression is written in.
///  - zeta_inverse: a term c*z^k denotes c*zeta^k in p(1/zeta); coefficient
///    lands at a_{-k}. This is the basis used for symbols written as curves.
///  - direct: a term c*z^j denotes c*t^j in p(t); coefficient lands at a_j.
enum class SymbolConvention { zeta_inverse, direct };

/// Parsed expression before the convention is applied: merged (coefficient,
/// power) terms in the textual basis.
struct SymbolExpr {
    std::string source;
    std::vector<std::pair<Complex, int>> terms;  // sorted by power, merged
};

/// Tokenize + parse a Laurent polynomial expression. Accepted term forms:
/// `3*z^2`, `2i*z^-1`, `7/10*z^3`, `z`, `-z^2`, `(1+2i)*z`, `4`, `i`.
/// `*` is optional, whitespace ignored. Throws ParseError (with position and
/// expected-token set) and EmptySymbol.
SymbolExpr parse_expr(const std::string& text);

/// Apply the convention and build the symbol. Throws EmptySymbol,
/// InvariantViolation (e.g. all powers zero).
LaurentSymbol to_symbol(const SymbolExpr& expr, SymbolConvention convention);

/// parse_expr + to_symbol.
LaurentSymbol parse_symbol(const std::string& text, SymbolConvention convention);

/// Canonical textual form in the given convention; parse_symbol of the result
/// reproduces the same coefficient map.
std::string format_symbol(const LaurentSymbol& sym, SymbolConvention convention);

/// One-line grammar description for CLI help.
const char* symbol_grammar_help();

}  // namespace toeplab
