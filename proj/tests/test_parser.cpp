#include <doctest.h>

#include <nlohmann/json.hpp>

#include "qident/parser.hpp"
#include "qident/catalog.hpp"
#include "qident/qproducts.hpp"
#include "qident/errors.hpp"
#include "oracles.hpp"

using namespace qident;

TEST_CASE("parse: structure of the basic forms") {
    ExprPtr theta = parse_expr_text("f(q,q^3)");
    REQUIRE(theta->kind == Expr::Kind::Theta);
    CHECK(theta->bases[0] == Monomial(1, 1));
    CHECK(theta->bases[1] == Monomial(1, 3));

    ExprPtr quot = parse_expr_text("(q;q)_inf * (q^2;q^2)_inf^-1");
    REQUIRE(quot->kind == Expr::Kind::Mul);
    REQUIRE(quot->args.size() == 2);
    CHECK(quot->args[0]->kind == Expr::Kind::PochList);
    CHECK(quot->args[1]->kind == Expr::Kind::IntPow);
    CHECK(quot->args[1]->ipow == -1);

    ExprPtr multi = parse_expr_text("(q,q^8,q^9;q^9)_inf");
    REQUIRE(multi->kind == Expr::Kind::PochList);
    CHECK(multi->bases.size() == 3);
    CHECK(!multi->len);

    ExprPtr fin = parse_expr_text("(-1;q^3)_5");
    REQUIRE(fin->kind == Expr::Kind::PochList);
    CHECK(fin->bases[0] == Monomial(-1, 0));
    CHECK(fin->len == 5);

    ExprPtr half = parse_expr_text("q^(3/2)");
    REQUIRE(half->kind == Expr::Kind::Power);
    CHECK(half->mono.exp == Rational(3, 2));

    ExprPtr folded = parse_expr_text("2*q^4");
    REQUIRE(folded->kind == Expr::Kind::Power);
    CHECK(folded->mono.coeff == 2);

    ExprPtr frac = parse_expr_text("(1/2)");
    REQUIRE(frac->kind == Expr::Kind::Number);
    CHECK(frac->number == Rational(1, 2));

    CHECK(parse_expr_text("Psi(q^3,q)")->kind == Expr::Kind::FalseTheta);
    CHECK(parse_expr_text("phi(-q^2)")->kind == Expr::Kind::Phi);
    CHECK(parse_expr_text("fneg(q)")->kind == Expr::Kind::FNeg);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_expr_text("(q;q_3");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 1);
        CHECK(e.column >= 5);
        CHECK(e.expected.find(")") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expr_text(""), SyntaxError);
    CHECK_THROWS_AS(parse_expr_text("q +"), SyntaxError);
    CHECK_THROWS_AS(parse_expr_text("f(q)"), SyntaxError);
    CHECK_THROWS_AS(parse_expr_text("(1+q;q)_3"), SyntaxError);
    CHECK_THROWS_AS(parse_expr_text("q @"), SyntaxError);
    CHECK_THROWS_AS(parse_expr_text("(q;q)_"), SyntaxError);
}

TEST_CASE("expand: frozen examples") {
    CHECK(eval_expr(parse_expr_text("psi(q)"), 11).to_text() ==
          "1 + q + q^3 + q^6 + q^10 (+O(q^11))");
    CHECK(eval_expr(parse_expr_text("f(q,q)"), 10).to_text() ==
          "1 + 2*q + 2*q^4 + 2*q^9 (+O(q^10))");
    QSeries euler = eval_expr(parse_expr_text("(q;q)_inf"), 8);
    auto poly = oracles::euler_product_poly(8, 7);
    for (int d = 0; d < 8; ++d) CHECK(euler.coefficient(d) == poly[static_cast<size_t>(d)]);
    CHECK(eval_expr(parse_expr_text("Psi(q,q)"), 50) == QSeries::one(50));
    // division reaches the dense path
    QSeries rr = eval_expr(parse_expr_text("(q^2,q^3,q^5;q^5)_inf/(q;q)_inf"), 10);
    CHECK(rr.coefficient(4) == 2);
    CHECK_THROWS_AS(eval_expr(parse_expr_text("1/((q;q)_0 - 1)"), 10), ZeroLeadingTerm);
}

TEST_CASE("pretty-print then parse is the identity on canonical forms") {
    const char* samples[] = {
        "f(q,q^3)",
        "Psi(q^3,q)",
        "(q,q^8,q^9;q^9)_inf*(q^7,q^11;q^18)_inf/(q;q)_inf",
        "(q^2;q^4)_7^-2*phi(-q^2)",
        "1 - q + 2*q^4",
        "-q^(3/2) + fneg(q)",
        "(q;q)_inf/psi(-q)",
        "q^(1/2)*f(-q,-q^2)",
    };
    for (const char* s : samples) {
        ExprPtr a = parse_expr_text(s);
        std::string printed = render_expr(a);
        ExprPtr b = parse_expr_text(printed);
        CAPTURE(s);
        CAPTURE(printed);
        CHECK(expr_equal(a, b));
    }
}

TEST_CASE("catalog sides render and reparse to the same tree") {
    Catalog cat = Catalog::load_file(QIDENT_SOURCE_CATALOG);
    size_t rendered = 0;
    for (const auto& rec : cat.records()) {
        for (const ExprPtr& side : {rec.lhs, rec.rhs}) {
            if (contains_template(*side)) continue;
            std::string text = render_expr(side);
            ExprPtr back = parse_expr_text(text);
            CAPTURE(rec.id);
            CAPTURE(text);
            CHECK(expr_equal(side, back));
            ++rendered;
        }
    }
    CHECK(rendered >= 32); // every product side plus the remarkable identity
}

TEST_CASE("expression JSON round trips") {
    Catalog cat = Catalog::load_file(QIDENT_SOURCE_CATALOG);
    for (const auto& rec : cat.records()) {
        ExprPtr back = expr_from_json(expr_to_json(*rec.lhs));
        CHECK(expr_equal(*back, *rec.lhs));
        back = expr_from_json(expr_to_json(*rec.rhs));
        CHECK(expr_equal(*back, *rec.rhs));
    }
}
