#ifndef QIDENT_EXPR_HPP
#define QIDENT_EXPR_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qident/qseries.hpp"

namespace qident {

/// a*n + b with exact rational coefficients.
struct Affine {
    Rational a{0};
    Rational b{0};
    Rational at(long long n) const { return a * n + b; }
    bool operator==(const Affine&) const = default;
};

/// Template for (c * q^(base_exp(n)); q^step)_(len(n)) inside a summand.
struct PochTemplate {
    Rational base_coeff{1};
    Affine base_exp;
    Rational step{1};
    Affine len;
    bool operator==(const PochTemplate&) const = default;
};

/// Additive summand weight c0 + c1*q^(e(n)); covers the (2+q^n) and
/// (1 - q^(12n+6)) shapes.
struct TemplateWeight {
    Rational c0{1};
    Rational c1{0};
    Affine e;
    bool operator==(const TemplateWeight&) const = default;
};

/// One q-hypergeometric sum written exactly as displayed: an optional
/// standalone leading 1, sum over n >= start of
///   (-1)^n? * q^(qexp(n)) * prod(num)/prod(den) * weight(n).
struct SumTemplate {
    bool sign_alternating = false;
    std::array<Rational, 3> qexp{Rational(0), Rational(0), Rational(0)}; ///< c, b, a of a*n^2+b*n+c
    long long start = 0;
    bool leading_one = false;
    std::vector<PochTemplate> num;
    std::vector<PochTemplate> den;
    std::optional<TemplateWeight> weight;

    Rational exponent_at(long long n) const {
        return qexp[2] * n * n + qexp[1] * n + qexp[0];
    }
    bool operator==(const SumTemplate&) const = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression tree over the engine vocabulary. Catalog sides and parsed CLI
/// expressions share this type; TemplateSum nodes appear only in catalog
/// records (the text grammar has no summation syntax).
struct Expr {
    enum class Kind {
        Number,      ///< rational constant
        Power,       ///< mono.coeff * q^mono.exp
        PochList,    ///< (a1,...,ar; q^step)_len, len empty = infinite
        Theta,       ///< f(a, b)
        FalseTheta,  ///< Psi(a, b)
        Phi,         ///< phi(m) = f(m, m)
        Psi,         ///< psi(m) = f(m, m^3)
        FNeg,        ///< fneg(m) = f(-m, -m^2)
        Mul,
        Div,         ///< args[0] / args[1]
        Add,
        Sub,         ///< args[0] - args[1]
        Neg,
        IntPow,      ///< args[0] ^ ipow
        TemplateSum,
    };

    Kind kind = Kind::Number;
    Rational number;
    Monomial mono;
    std::vector<Monomial> bases;
    Rational step{1};
    std::optional<long long> len;
    std::vector<ExprPtr> args;
    long long ipow = 1;
    SumTemplate tsum;
};

// Canonicalizing constructors (fold numeric coefficients into powers, drop
// double negations); both the parser and the catalog loader build through
// these so that pretty-print . parse is the identity on canonical forms.
ExprPtr make_number(const Rational& v);
ExprPtr make_power(const Monomial& m);
ExprPtr make_poch(std::vector<Monomial> bases, const Rational& step, std::optional<long long> len);
ExprPtr make_theta(const Monomial& a, const Monomial& b);
ExprPtr make_false_theta(const Monomial& a, const Monomial& b);
ExprPtr make_phi(const Monomial& m);
ExprPtr make_psi(const Monomial& m);
ExprPtr make_fneg(const Monomial& m);
ExprPtr make_mul(std::vector<ExprPtr> args);
ExprPtr make_div(ExprPtr num, ExprPtr den);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_neg(ExprPtr a);
ExprPtr make_intpow(ExprPtr a, long long k);
ExprPtr make_template_sum(SumTemplate t);

/// Structural equality.
bool expr_equal(const Expr& a, const Expr& b);
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) { return expr_equal(*a, *b); }

/// Truncated evaluation.
QSeries eval_expr(const Expr& e, const Rational& order);
inline QSeries eval_expr(const ExprPtr& e, const Rational& order) { return eval_expr(*e, order); }
QSeries eval_template(const SumTemplate& t, const Rational& order);

/// True when the tree contains a TemplateSum (not renderable as text).
bool contains_template(const Expr& e);

/// Canonical text in the CLI expression grammar. Throws Error on
/// TemplateSum nodes.
std::string render_expr(const Expr& e);
inline std::string render_expr(const ExprPtr& e) { return render_expr(*e); }

/// JSON (de)serialization in the catalog schema.
nlohmann::json expr_to_json(const Expr& e);
ExprPtr expr_from_json(const nlohmann::json& j);

} // namespace qident

#endif
