#include <doctest.h>

#include "qident/bailey.hpp"
#include "qident/qproducts.hpp"
#include "qident/errors.hpp"

using namespace qident;

TEST_CASE("pair table basics") {
    CHECK(pair_labels().size() == 11);
    CHECK_THROWS_AS(make_pair("P99"), UnknownLabel);

    // P3: beta_n = (-q^3;q^3)_n / ((q^2;q)_{2n} (-q;q)_n), relative to q
    BaileyPair p3 = make_pair("P3");
    CHECK(p3.rel_a_exp == 1);
    QSeries b2 = p3.beta(2, 30);
    QSeries direct = poch_finite(Monomial(-1, 3), 3, 2, 30) *
                     poch_finite(Monomial(1, 2), 1, 4, 30).inverse() *
                     poch_finite(Monomial(-1, 1), 1, 2, 30).inverse();
    CHECK(!QSeries::first_difference(b2, direct, 25));

    // unit pair: beta = delta_{n,0}, alpha_n = (-1)^n q^(n(n-1)/2) (1+q^n)
    BaileyPair unit = make_pair("UNIT");
    CHECK(unit.beta(0, 10) == QSeries::one(10));
    CHECK(unit.beta(3, 10).is_zero());
    QSeries a3 = unit.alpha(3, 20);
    CHECK(a3.coefficient(3) == -1);
    CHECK(a3.coefficient(6) == -1);

    // Bressoud pair: beta_n = 1/(q^2;q^2)_n, alpha_{n>0} = (-1)^n 2 q^(n^2)
    BaileyPair br = make_pair("BRESSOUD");
    QSeries bb = br.beta(2, 20);
    QSeries bref = poch_finite(Monomial(1, 2), 2, 2, 20).inverse();
    CHECK(!QSeries::first_difference(bb, bref, 16));
    CHECK(br.alpha(2, 20).coefficient(4) == 2);
    CHECK(br.alpha(1, 20).coefficient(1) == -2);
}

TEST_CASE("defining relation holds for every pair (fast bound)") {
    for (const auto& label : pair_labels()) {
        PairCheck pc = check_pair(make_pair(label), 10, 50);
        CAPTURE(label);
        CHECK(pc.pass);
    }
}

TEST_CASE("a corrupted pair fails the defining relation at the damaged index") {
    BaileyPair p = make_pair("P1");
    SeqGen orig = p.alpha;
    p.alpha = [orig](long long n, const Rational& order) {
        QSeries a = orig(n, order);
        return n == 1 ? -a : a;
    };
    PairCheck pc = check_pair(p, 5, 40);
    CHECK(!pc.pass);
    CHECK(pc.first_fail_n == 1);
}

TEST_CASE("alpha_from_beta reproduces the stored closed forms") {
    for (const auto& label : {"P2", "J4", "J5"}) {
        BaileyPair p = make_pair(label);
        for (long long n = 0; n <= 6; ++n) {
            QSeries truth = alpha_from_beta(p, n, 60);
            QSeries stored = p.alpha(n, 60);
            CAPTURE(label);
            CAPTURE(n);
            CHECK(!QSeries::first_difference(truth, stored, 55));
        }
    }
}

TEST_CASE("six_psi_six: table rows, n = 0, termination errors") {
    const std::pair<Monomial, Monomial> rows[] = {
        {Monomial(1, 1), Monomial(-1, 2)},
        {Monomial(1, 2), Monomial(-1, 1)},
        {Monomial(1, 2), Monomial(-1, Rational(5, 2))},
        {Monomial(1, 1), Monomial(1, 2)},
    };
    for (const auto& [a, e] : rows) {
        for (long long n : {0, 1, 4, 7}) {
            auto [lhs, rhs] = six_psi_six(a, e, n, 50);
            CAPTURE(a.to_text());
            CAPTURE(e.to_text());
            CAPTURE(n);
            CHECK(!QSeries::first_difference(lhs, rhs, 50));
        }
        auto [l0, r0] = six_psi_six(a, e, 0, 30);
        CHECK(l0 == QSeries::one(30));
    }
    CHECK_THROWS_AS(six_psi_six(Monomial(1, Rational(1, 2)), Monomial(-1, 2), 3, 20),
                    NonTerminating);
    CHECK_THROWS_AS(six_psi_six(Monomial(-1, 1), Monomial(-1, 2), 3, 20), NonTerminating);
}

TEST_CASE("apply_lemma: both sides agree for table pairs and the unit pair") {
    struct Row {
        const char* pair;
        BaileyLemma lemma;
    };
    const Row rows[] = {
        {"P1", BaileyLemma::aPBL}, {"P2", BaileyLemma::aPBL}, {"P3", BaileyLemma::aPBL},
        {"P1", BaileyLemma::aTBL}, {"P2", BaileyLemma::aTBL}, {"P4", BaileyLemma::S2BL},
        {"P5", BaileyLemma::S2BL}, {"J4", BaileyLemma::S2BL}, {"J5", BaileyLemma::S2BL},
        {"P3", BaileyLemma::FBL},  {"P6", BaileyLemma::FBL},  {"P7", BaileyLemma::FBL},
        {"UNIT", BaileyLemma::FBL}, {"UNIT", BaileyLemma::S2BL},
    };
    for (const auto& row : rows) {
        auto [lhs, rhs] = apply_lemma(make_pair(row.pair), row.lemma, 80);
        CAPTURE(row.pair);
        CAPTURE(to_string(row.lemma));
        Rational bound = std::min(lhs.order(), rhs.order());
        CHECK(!QSeries::first_difference(lhs, rhs, bound));
    }
    // pairs relative to 1 cannot feed the a = q^2 displays
    CHECK_THROWS_AS(apply_lemma(make_pair("BRESSOUD"), BaileyLemma::S2BL, 40), IncompatibleRelA);
    CHECK_THROWS_AS(apply_lemma(make_pair("P1"), BaileyLemma::FBL, 40), IncompatibleRelA);
}

TEST_CASE("lemma string mapping") {
    CHECK(lemma_from_string("aPBL") == BaileyLemma::aPBL);
    CHECK(to_string(BaileyLemma::S2BL) == "S2BL");
    CHECK_THROWS_AS(lemma_from_string("XQBL"), UnknownLabel);
}

TEST_CASE("multisum families k <= 2 match their products") {
    for (const std::string fam : {"5.2", "5.3"}) {
        for (long long k = 1; k <= 2; ++k)
            for (long long i = 1; i <= k + 1; ++i) {
                QSeries sum = multisum({fam, k, i}, 60);
                QSeries prod = multisum_product(fam, k, i, 60);
                CAPTURE(fam);
                CAPTURE(k);
                CAPTURE(i);
                CHECK(!QSeries::first_difference(sum, prod, 60));
            }
    }
    for (const std::string fam : {"5.5", "5.6", "5.7", "5.8", "5.9", "5.10"}) {
        for (long long k = 1; k <= 2; ++k) {
            QSeries sum = multisum({fam, k, 1}, 60);
            QSeries prod = multisum_product(fam, k, 1, 60);
            CAPTURE(fam);
            CAPTURE(k);
            CHECK(!QSeries::first_difference(sum, prod, 60));
        }
    }
}

TEST_CASE("multisum pinned instances") {
    // 5.2 at k=1: i=2 gives the first Rogers-Ramanujan sum, i=1 the second
    QSeries rr1_sum = multisum({"5.2", 1, 2}, 40);
    QSeries rr2_sum = multisum({"5.2", 1, 1}, 40);
    QSeries direct1 = QSeries::zero(40);
    QSeries direct2 = QSeries::zero(40);
    for (long long n = 0; n * n < 40; ++n) {
        QSeries inv = poch_finite(Monomial(1, 1), 1, n, 40).inverse();
        direct1 += inv.shifted(Rational(n * n));
        direct2 += inv.shifted(Rational(n * n + n));
    }
    CHECK(!QSeries::first_difference(rr1_sum, direct1, 38));
    CHECK(!QSeries::first_difference(rr2_sum, direct2, 38));

    // 5.10 at k=1: sum q^(n^2)/(q;q)_{2n}
    QSeries s510 = multisum({"5.10", 1, 1}, 40);
    QSeries d510 = QSeries::zero(40);
    for (long long n = 0; n * n < 40; ++n)
        d510 += poch_finite(Monomial(1, 1), 1, 2 * n, 40).inverse().shifted(Rational(n * n));
    CHECK(!QSeries::first_difference(s510, d510, 38));

    // 5.9 at k=1 carries the (-1;q^3)_n / (-1;q)_n weight
    QSeries s59 = multisum({"5.9", 1, 1}, 40);
    QSeries d59 = QSeries::zero(40);
    for (long long n = 0; n * n < 40; ++n) {
        QSeries term = poch_finite(Monomial(-1, 0), 3, n, 40) *
                       poch_finite(Monomial(1, 1), 1, 2 * n, 40).inverse() *
                       poch_finite(Monomial(-1, 0), 1, n, 40).inverse();
        d59 += term.shifted(Rational(n * n));
    }
    CHECK(!QSeries::first_difference(s59, d59, 38));
}

TEST_CASE("product families: degenerate case and range errors") {
    // level 1: the quintuple block collapses, 1 = 1
    CHECK(a22_product(1, 1, 40) == QSeries::one(40));

    QSeries ag12 = ag_product(1, 2, 40);
    QSeries rr1_rhs = poch_infinite(Monomial(1, 2), 5, 40) * poch_infinite(Monomial(1, 3), 5, 40) *
                      poch_infinite(Monomial(1, 5), 5, 40) * euler_inf(40).inverse();
    CHECK(!QSeries::first_difference(ag12, rr1_rhs, 40));

    CHECK_THROWS_AS(ag_product(1, 3, 20), IndexOutOfRange);
    CHECK_THROWS_AS(bressoud_product(2, 0, 20), IndexOutOfRange);
    CHECK_THROWS_AS(a22_product(6, 5, 20), IndexOutOfRange);
    CHECK_THROWS_AS(multisum({"5.2", 0, 1}, 20), IndexOutOfRange);
    CHECK_THROWS_AS(multisum({"5.2", 2, 4}, 20), IndexOutOfRange);
    CHECK_THROWS_AS(multisum({"4.9", 1, 1}, 20), UnknownLabel);
}
