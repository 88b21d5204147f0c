#include "toeplab/symparse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace toeplab {

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(pos, what, err_msg(what));
    }
    std::string err_msg(const std::string& expected) {
        std::ostringstream os;
        os << "parse error at position " << pos << ": expected " << expected;
        if (pos < s.size()) os << ", got '" << s[pos] << "'";
        else os << ", got end of input";
        return os.str();
    }

    bool number_ahead() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    /// Unsigned numeric literal; `a/b` fractions are evaluated here.
    double number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
            ++pos;
        if (pos == start) throw ParseError(pos, "number", err_msg("number"));
        double v = std::strtod(s.substr(start, pos - start).c_str(), nullptr);
        if (pos < s.size() && s[pos] == '/') {
            // Fraction only when a digit follows; otherwise leave '/' alone.
            std::size_t save = pos;
            ++pos;
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t dstart = pos;
                while (pos < s.size() &&
                       (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
                    ++pos;
                double den = std::strtod(s.substr(dstart, pos - dstart).c_str(), nullptr);
                if (den == 0.0) throw ParseError(dstart, "nonzero denominator",
                                                 err_msg("nonzero denominator"));
                v /= den;
            } else {
                pos = save;
            }
        }
        return v;
    }

    int integer() {
        skip_ws();
        int sign = 1;
        if (accept('-')) sign = -1;
        else if (accept('+')) sign = 1;
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError(pos, "integer exponent", err_msg("integer exponent"));
        return sign * std::atoi(s.substr(start, pos - start).c_str());
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& text) : lex(text) {}

    // coefficient := number ['i'] | 'i' | '(' signed (+|-) signed ')'
    Complex coefficient() {
        if (lex.accept('(')) {
            Complex acc = signed_part();
            while (lex.peek() == '+' || lex.peek() == '-') acc += signed_part();
            lex.expect(')', "')'");
            return acc;
        }
        if (lex.accept('i')) return Complex(0.0, 1.0);
        double v = lex.number();
        if (lex.accept('i')) return Complex(0.0, v);
        return Complex(v, 0.0);
    }

    Complex signed_part() {
        double sign = 1.0;
        if (lex.accept('-')) sign = -1.0;
        else lex.accept('+');
        if (lex.accept('i')) return Complex(0.0, sign);
        double v = lex.number();
        if (lex.accept('i')) return Complex(0.0, sign * v);
        return Complex(sign * v, 0.0);
    }

    // variable := 'z' ['^' int]; returns the exponent.
    int variable() {
        lex.expect('z', "'z'");
        if (lex.accept('^')) return lex.integer();
        return 1;
    }

    // term := coefficient ['*'] [variable] | variable
    std::pair<Complex, int> term() {
        if (lex.peek() == 'z') return {Complex(1.0, 0.0), variable()};
        Complex c = coefficient();
        bool starred = lex.accept('*');
        if (starred || lex.peek() == 'z') {
            if (starred && lex.peek() != 'z')
                throw ParseError(lex.pos, "'z' after '*'", lex.err_msg("'z' after '*'"));
            return {c, variable()};
        }
        return {c, 0};
    }

    std::vector<std::pair<Complex, int>> expression() {
        std::vector<std::pair<Complex, int>> terms;
        double sign = 1.0;
        if (lex.accept('-')) sign = -1.0;
        else lex.accept('+');
        auto [c0, p0] = term();
        terms.emplace_back(sign * c0, p0);
        while (!lex.eof()) {
            if (lex.accept('+')) sign = 1.0;
            else if (lex.accept('-')) sign = -1.0;
            else throw ParseError(lex.pos, "'+', '-' or end of input",
                                  lex.err_msg("'+', '-' or end of input"));
            auto [c, p] = term();
            terms.emplace_back(sign * c, p);
        }
        return terms;
    }
};

}  // namespace

SymbolExpr parse_expr(const std::string& text) {
    Parser parser(text);
    auto raw = parser.expression();
    std::map<int, Complex> merged;
    for (const auto& [c, p] : raw) merged[p] += c;
    for (auto it = merged.begin(); it != merged.end();)
        it = (it->second == Complex(0.0, 0.0)) ? merged.erase(it) : std::next(it);
    if (merged.empty()) throw EmptySymbol("all coefficients cancel to zero");
    SymbolExpr expr;
    expr.source = text;
    for (const auto& [p, c] : merged) expr.terms.emplace_back(c, p);
    return expr;
}

LaurentSymbol to_symbol(const SymbolExpr& expr, SymbolConvention convention) {
    std::map<int, Complex> coeffs;
    for (const auto& [c, p] : expr.terms) {
        int j = (convention == SymbolConvention::direct) ? p : -p;
        coeffs[j] += c;
    }
    return LaurentSymbol(std::move(coeffs));
}

LaurentSymbol parse_symbol(const std::string& text, SymbolConvention convention) {
    return to_symbol(parse_expr(text), convention);
}

namespace {

void format_real(std::ostringstream& os, double v) {
    os.precision(17);
    os << v;
}

void format_coeff(std::ostringstream& os, Complex c) {
    if (c.imag() == 0.0) {
        format_real(os, c.real());
    } else if (c.real() == 0.0) {
        format_real(os, c.imag());
        os << "i";
    } else {
        os << "(";
        format_real(os, c.real());
        if (c.imag() >= 0.0) os << "+";
        format_real(os, c.imag());
        os << "i)";
    }
}

}  // namespace

std::string format_symbol(const LaurentSymbol& sym, SymbolConvention convention) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, a] : sym.coeffs()) {
        int p = (convention == SymbolConvention::direct) ? j : -j;
        Complex c = a;
        if (!first) {
            // Pull a positive sign out where the coefficient prints cleanly.
            if (c.imag() == 0.0 && c.real() < 0.0) {
                os << " - ";
                c = -c;
            } else if (c.real() == 0.0 && c.imag() < 0.0) {
                os << " - ";
                c = -c;
            } else {
                os << " + ";
            }
        }
        first = false;
        format_coeff(os, c);
        if (p != 0) {
            os << "*z";
            if (p != 1) os << "^" << p;
        }
    }
    return os.str();
}

const char* symbol_grammar_help() {
    return "Symbol grammar: sum of signed terms  COEFF [*] [z[^K]]  with integer K\n"
           "(negative allowed; plain z means z^1; a bare coefficient means z^0).\n"
           "Coefficient forms: 2, 2.5, 7/10, 2i, i, (1+2i). '*' optional, whitespace\n"
           "ignored. Example: \"2i*z^-1 + z^2 + 7/10*z^3\".\n"
           "Conventions: zeta_inverse (default) reads c*z^k as c*zeta^k in p(1/zeta),\n"
           "i.e. coefficient a_{-k}; direct reads c*z^j as the operator coefficient a_j.";
}

}  // namespace toeplab
