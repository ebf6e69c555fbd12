#include "qident/parser.hpp"

#include <cctype>
#include <vector>

#include "qident/errors.hpp"

namespace qident {

namespace {

struct Token {
    enum class Kind { Int, Ident, Sym, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int tl = line, tc = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::Kind::Int, text.substr(i, j - i), tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::Kind::Ident, text.substr(i, j - i), tl, tc});
            advance(j - i);
            continue;
        }
        if (std::string("+-*/^(),;_").find(c) != std::string::npos) {
            out.push_back({Token::Kind::Sym, std::string(1, c), tl, tc});
            advance(1);
            continue;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", tl, tc, "token");
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    ExprPtr run() {
        ExprPtr e = expr();
        if (!at_end())
            fail("end of input");
        return e;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    bool is_sym(const char* s) const {
        return peek().kind == Token::Kind::Sym && peek().text == s;
    }
    bool is_ident(const char* s) const {
        return peek().kind == Token::Kind::Ident && peek().text == s;
    }

    Token take() { return toks_[pos_++]; }

    void expect_sym(const char* s) {
        if (!is_sym(s)) fail(std::string("'") + s + "'");
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError("expected " + expected + ", found " + got + " at " +
                              std::to_string(t.line) + ":" + std::to_string(t.col),
                          t.line, t.col, expected);
    }

    Integer take_int() {
        if (peek().kind != Token::Kind::Int) fail("integer");
        return Integer(take().text);
    }

    // rexp := ['-'] integer | '(' ['-'] integer '/' integer ')'
    Rational rexp() {
        bool neg = false;
        if (is_sym("-")) {
            ++pos_;
            neg = true;
        }
        if (is_sym("(")) {
            ++pos_;
            bool inner_neg = false;
            if (is_sym("-")) {
                ++pos_;
                inner_neg = true;
            }
            Integer num = take_int();
            expect_sym("/");
            Integer den = take_int();
            expect_sym(")");
            if (den == 0) fail("nonzero denominator");
            Rational r(num, den);
            if (inner_neg || neg) r = -r;
            return r;
        }
        Rational r(take_int());
        return neg ? -r : r;
    }

    // qpow := 'q' ['^' rexp]
    Monomial qpow() {
        if (!is_ident("q")) fail("'q'");
        ++pos_;
        Rational e(1);
        if (is_sym("^")) {
            ++pos_;
            e = rexp();
        }
        return Monomial(1, e);
    }

    // mono := ['-'] integer ['*' qpow] | ['-'] qpow
    Monomial mono() {
        Rational sign(1);
        if (is_sym("-")) {
            ++pos_;
            sign = -1;
        }
        if (peek().kind == Token::Kind::Int) {
            Rational c(take_int());
            if (is_sym("*")) {
                ++pos_;
                Monomial m = qpow();
                return Monomial(sign * c, m.exp);
            }
            return Monomial(sign * c, 0);
        }
        Monomial m = qpow();
        return Monomial(sign * m.coeff, m.exp);
    }

    Monomial expr_as_mono(const ExprPtr& e, const Token& where) {
        if (e->kind == Expr::Kind::Number) return Monomial(e->number, 0);
        if (e->kind == Expr::Kind::Power) return e->mono;
        throw SyntaxError("expected a monomial at " + std::to_string(where.line) + ":" +
                              std::to_string(where.col),
                          where.line, where.col, "monomial");
    }

    // poch continuation after '(' expr, when ',' or ';' follows
    ExprPtr poch_rest(ExprPtr first, const Token& start) {
        std::vector<Monomial> bases{expr_as_mono(first, start)};
        while (is_sym(",")) {
            ++pos_;
            const Token& t = peek();
            bases.push_back(expr_as_mono(expr(), t));
        }
        expect_sym(";");
        const Token& st = peek();
        Monomial step = expr_as_mono(expr(), st);
        if (step.coeff != 1 || step.exp <= 0)
            throw SyntaxError("pochhammer step must be a positive power of q", st.line, st.col,
                              "q^k");
        expect_sym(")");
        expect_sym("_");
        std::optional<long long> len;
        if (is_ident("inf")) {
            ++pos_;
        } else if (peek().kind == Token::Kind::Int) {
            len = static_cast<long long>(take_int());
        } else {
            fail("'inf' or integer length");
        }
        return make_poch(std::move(bases), step.exp, len);
    }

    ExprPtr primary() {
        if (peek().kind == Token::Kind::Int) return make_number(Rational(take_int()));
        if (is_ident("q")) return make_power(qpow());
        if (is_ident("f") || is_ident("Psi")) {
            bool theta = peek().text == "f";
            ++pos_;
            expect_sym("(");
            Monomial a = mono();
            expect_sym(",");
            Monomial b = mono();
            expect_sym(")");
            return theta ? make_theta(a, b) : make_false_theta(a, b);
        }
        if (is_ident("phi") || is_ident("psi") || is_ident("fneg")) {
            std::string name = take().text;
            expect_sym("(");
            Monomial m = mono();
            expect_sym(")");
            if (name == "phi") return make_phi(m);
            if (name == "psi") return make_psi(m);
            return make_fneg(m);
        }
        if (is_sym("(")) {
            Token start = take();
            ExprPtr inner = expr();
            if (is_sym(",") || is_sym(";")) return poch_rest(std::move(inner), start);
            expect_sym(")");
            return inner;
        }
        fail("expression");
    }

    ExprPtr factor() {
        ExprPtr base = primary();
        if (!is_sym("^")) return base;
        Token caret = take();
        Rational e = rexp();
        if (base->kind == Expr::Kind::Power) {
            const Monomial& m = base->mono;
            if (m.coeff == 1) return make_power(Monomial(1, m.exp * e));
            if (is_integer(e)) return make_power(Monomial(rat_pow(m.coeff, to_ll(e)), m.exp * e));
            throw SyntaxError("fractional power of a signed monomial", caret.line, caret.col,
                              "integer exponent");
        }
        if (!is_integer(e))
            throw SyntaxError("fractional power of a non-monomial", caret.line, caret.col,
                              "integer exponent");
        if (base->kind == Expr::Kind::Number) return make_number(rat_pow(base->number, to_ll(e)));
        return make_intpow(std::move(base), to_ll(e));
    }

    ExprPtr term() {
        ExprPtr acc = factor();
        while (is_sym("*") || is_sym("/")) {
            bool mul = peek().text == "*";
            ++pos_;
            ExprPtr rhs = factor();
            if (mul)
                acc = make_mul({std::move(acc), std::move(rhs)});
            else
                acc = make_div(std::move(acc), std::move(rhs));
        }
        return acc;
    }

    ExprPtr expr() {
        bool neg = false;
        if (is_sym("-")) {
            ++pos_;
            neg = true;
        }
        ExprPtr acc = term();
        if (neg) acc = make_neg(std::move(acc));
        while (is_sym("+") || is_sym("-")) {
            bool add = peek().text == "+";
            ++pos_;
            ExprPtr rhs = term();
            if (add)
                acc = make_add(std::move(acc), std::move(rhs));
            else
                acc = make_sub(std::move(acc), std::move(rhs));
        }
        return acc;
    }
};

} // namespace

ExprPtr parse_expr_text(const std::string& text) { return Parser(text).run(); }

} // namespace qident
