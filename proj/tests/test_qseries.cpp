#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "qident/qseries.hpp"
#include "qident/errors.hpp"

using namespace qident;

namespace {

QSeries geometric(const Rational& order) {
    // 1/(1-q) expanded by hand
    QSeries s = QSeries::zero(order);
    for (long long k = 0; Rational(k) < order; ++k)
        s += QSeries::monomial(1, k, order);
    return s;
}

QSeries random_series(std::mt19937& rng, const Rational& order, bool unit) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> nterms(1, 10);
    std::uniform_int_distribution<long long> expo(unit ? 1 : 0, 15);
    QSeries s = QSeries::zero(order);
    if (unit) s += QSeries::monomial(coeff(rng) >= 0 ? 1 : -1, 0, order);
    int m = nterms(rng);
    for (int i = 0; i < m; ++i) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        s += QSeries::monomial(c, expo(rng), order);
    }
    return s;
}

} // namespace

TEST_CASE("addition: cancellation, order, grid unification") {
    QSeries one_minus_q = QSeries::monomial(1, 0, 5) - QSeries::monomial(1, 1, 5);
    QSeries q = QSeries::monomial(1, 1, 5);
    CHECK(one_minus_q + q == QSeries::one(5));

    QSeries a = QSeries::one(3);
    QSeries b = QSeries::one(7);
    QSeries two = a + b;
    CHECK(two.order() == 3);
    CHECK(two.coefficient(0) == 2);

    QSeries half = QSeries::monomial(1, Rational(1, 2), 4);
    QSeries sum = half + QSeries::monomial(1, 1, 4);
    CHECK(sum.grid_den() == 2);
    CHECK(sum.coefficient(Rational(1, 2)) == 1);
    CHECK(sum.coefficient(1) == 1);
    CHECK(sum.order() == 4);
}

TEST_CASE("multiplication: order propagation through valuation") {
    QSeries a = QSeries::one(10) - QSeries::monomial(1, 1, 10);
    QSeries b = QSeries::one(10) + QSeries::monomial(1, 1, 10);
    QSeries p = a * b;
    CHECK(p.coefficient(0) == 1);
    CHECK(p.coefficient(1) == 0);
    CHECK(p.coefficient(2) == -1);
    CHECK(p.order() == 10);

    QSeries cube = QSeries::monomial(1, 3, 10);
    QSeries c = QSeries::one(4) + QSeries::monomial(1, 1, 4);
    QSeries pc = cube * c;
    CHECK(pc.order() == 7); // min(10 + 0, 4 + 3)
    CHECK(pc.coefficient(3) == 1);
    CHECK(pc.coefficient(4) == 1);

    QSeries z = QSeries::zero(5);
    QSeries zp = z * cube;
    CHECK(zp.is_zero());
    CHECK(zp.order() == 8); // order(z) + val(cube)
}

TEST_CASE("inverse: geometric series, partition numbers, rational leading") {
    QSeries one_minus_q = QSeries::one(5) - QSeries::monomial(1, 1, 5);
    CHECK(one_minus_q.inverse() == geometric(5));

    QSeries two = QSeries::monomial(2, 0, 3);
    CHECK(two.inverse().coefficient(0) == Rational(1, 2));

    CHECK_THROWS_AS(QSeries::zero(5).inverse(), ZeroLeadingTerm);

    // Laurent shift: inverse of q^2*(1-q) has leading q^-2
    QSeries s = QSeries::monomial(1, 2, 8) - QSeries::monomial(1, 3, 8);
    QSeries inv = s.inverse();
    CHECK(inv.val() == Rational(-2));
    QSeries prod = s * inv;
    CHECK(prod.coefficient(0) == 1);
    CHECK(prod.coefficient(1) == 0);
}

TEST_CASE("inverse is a true inverse on random unit series") {
    std::mt19937 rng(7031);
    for (int it = 0; it < 100; ++it) {
        QSeries s = random_series(rng, 25, true);
        QSeries prod = s * s.inverse();
        auto diff = QSeries::first_difference(prod, QSeries::one(prod.order()), prod.order());
        CAPTURE(it);
        CHECK(!diff);
    }
}

TEST_CASE("ring laws hold below the guaranteed order") {
    std::mt19937 rng(99251);
    for (int it = 0; it < 100; ++it) {
        QSeries s = random_series(rng, 20, false);
        QSeries t = random_series(rng, 20, false);
        QSeries u = random_series(rng, 20, false);
        QSeries left = (s * t) * u;
        QSeries right = s * (t * u);
        Rational bound = std::min(left.order(), right.order());
        CHECK(!QSeries::first_difference(left, right, bound));

        QSeries d1 = s * (t + u);
        QSeries d2 = s * t + s * u;
        bound = std::min(d1.order(), d2.order());
        CHECK(!QSeries::first_difference(d1, d2, bound));
    }
}

TEST_CASE("substitute_power: examples and homomorphism property") {
    QSeries s = QSeries::one(10) + QSeries::monomial(1, 1, 10);
    QSeries s2 = s.substitute_power(2);
    CHECK(s2.coefficient(2) == 1);
    CHECK(s2.order() == 20);

    QSeries half = QSeries::monomial(1, Rational(1, 2), 4);
    QSeries lifted = half.substitute_power(2);
    CHECK(lifted.grid_den() == 1); // grid collapses
    CHECK(lifted.coefficient(1) == 1);

    std::mt19937 rng(424243);
    for (int it = 0; it < 50; ++it) {
        QSeries a = random_series(rng, 12, false);
        QSeries b = random_series(rng, 12, false);
        CHECK(a.substitute_power(1) == a);
        for (Rational m : {Rational(2), Rational(3), Rational(1, 2)}) {
            QSeries lhs = (a * b).substitute_power(m);
            QSeries rhs = a.substitute_power(m) * b.substitute_power(m);
            Rational bound = std::min(lhs.order(), rhs.order());
            CHECK(!QSeries::first_difference(lhs, rhs, bound));
        }
    }
}

TEST_CASE("negate_q: involution and errors") {
    QSeries s = QSeries::one(5) + QSeries::monomial(1, 1, 5) + QSeries::monomial(1, 2, 5);
    QSeries n = s.negate_q();
    CHECK(n.coefficient(1) == -1);
    CHECK(n.coefficient(2) == 1);
    CHECK(n.negate_q() == s);

    QSeries half = QSeries::monomial(1, Rational(1, 2), 4);
    CHECK_THROWS_AS(half.negate_q(), FractionalGrid);
}

TEST_CASE("coefficient access and BeyondOrder") {
    QSeries s = QSeries::one(2) - QSeries::monomial(1, 1, 2);
    CHECK(s.coefficient(1) == -1);
    CHECK(s.coefficient(Rational(1, 2)) == 0);
    CHECK_THROWS_AS(s.coefficient(5), BeyondOrder);
    CHECK_THROWS_AS(s.coefficient(2), BeyondOrder);
}

TEST_CASE("canonical text form") {
    QSeries s = QSeries::one(10) + QSeries::monomial(2, 1, 10) + QSeries::monomial(2, 4, 10) +
                QSeries::monomial(2, 9, 10);
    CHECK(s.to_text() == "1 + 2*q + 2*q^4 + 2*q^9 (+O(q^10))");
    QSeries neg = QSeries::monomial(-1, Rational(3, 2), 2);
    CHECK(neg.to_text() == "-q^(3/2) (+O(q^2))");
    CHECK(QSeries::zero(5).to_text() == "0 (+O(q^5))");
}

TEST_CASE("JSON round trip is the identity") {
    std::mt19937 rng(1212);
    for (int it = 0; it < 40; ++it) {
        QSeries s = random_series(rng, 18, false);
        if (it % 3 == 0) s = s * QSeries::monomial(1, Rational(1, 2), 18);
        QSeries back = QSeries::from_json(s.to_json());
        CHECK(back == s);
        CHECK(back.grid_den() == s.grid_den());
    }
}

TEST_CASE("first_difference finds the least differing exponent") {
    QSeries a = QSeries::one(10) + QSeries::monomial(3, 4, 10) + QSeries::monomial(1, 7, 10);
    QSeries b = QSeries::one(10) + QSeries::monomial(2, 4, 10) + QSeries::monomial(9, 5, 10);
    auto diff = QSeries::first_difference(a, b, 10);
    REQUIRE(diff);
    CHECK(diff->exp == 4);
    CHECK(diff->lhs == 3);
    CHECK(diff->rhs == 2);
}
