#include "qident/bailey.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "qident/errors.hpp"
#include "qident/qproducts.hpp"
#include "dense_series.hpp"
#include "series_factors.hpp"

namespace qident {

BaileyLemma lemma_from_string(const std::string& name) {
    if (name == "aPBL") return BaileyLemma::aPBL;
    if (name == "aTBL") return BaileyLemma::aTBL;
    if (name == "S2BL") return BaileyLemma::S2BL;
    if (name == "FBL") return BaileyLemma::FBL;
    throw UnknownLabel("unknown Bailey lemma '" + name + "'");
}

std::string to_string(BaileyLemma lemma) {
    switch (lemma) {
    case BaileyLemma::aPBL: return "aPBL";
    case BaileyLemma::aTBL: return "aTBL";
    case BaileyLemma::S2BL: return "S2BL";
    case BaileyLemma::FBL: return "FBL";
    }
    return "?";
}

namespace {

QSeries mono_qs(const Rational& c, const Rational& e, const Rational& order) {
    return QSeries::monomial(c, e, order);
}

/// (1 - q^m)/(1 - q) = 1 + q + ... + q^(m-1), m >= 0.
QSeries geom(long long m, const Rational& order) {
    DenseSeries d = DenseSeries::zero(order, 1);
    for (long long i = 0; i < m && Rational(i) < order; ++i) d.add_term(i, Rational(1));
    return d.to_qseries();
}

QSeries two_term(const Rational& c1, const Rational& e1, const Rational& c2, const Rational& e2,
                 const Rational& order) {
    return mono_qs(c1, e1, order) + mono_qs(c2, e2, order);
}

Rational half(long long num) { return Rational(num, 2); }

/// quadratic (9/2)r^2 + b*r + c at integer r
Rational quad92(long long r, const Rational& b, const Rational& c) {
    return half(9) * r * r + b * r + c;
}

} // namespace

BaileyPair BaileyPair::substituted(long long m) const {
    if (m < 1) throw DomainViolation("substituted requires m >= 1");
    BaileyPair p;
    p.label = label + "@q^" + std::to_string(m);
    p.rel_a_exp = rel_a_exp * m;
    p.base_pow = base_pow * m;
    auto wrap = [m](const SeqGen& f) -> SeqGen {
        if (!f) return {};
        return [f, m](long long n, const Rational& order) {
            return f(n, order / m).substitute_power(Rational(m));
        };
    };
    p.alpha = wrap(alpha);
    p.beta = wrap(beta);
    p.alpha_at_q = wrap(alpha_at_q);
    return p;
}

const std::vector<std::string>& pair_labels() {
    static const std::vector<std::string> labels = {"P1", "P2", "P3", "P4", "P5", "P6",
                                                    "P7", "UNIT", "BRESSOUD", "J4", "J5"};
    return labels;
}

namespace {

// beta builders ------------------------------------------------------------

// (-1; q^3)_n / ((q;q)_{2n} (-1;q)_n), optionally shifted by q^n and scaled
// by (1-q); the common shape of P1/P2/P6.
SeqGen beta_m18(bool q_to_n, bool one_minus_q) {
    return [=](long long n, const Rational& order) {
        DenseSeries d = DenseSeries::one(order, 1);
        mul_poch_finite(d, Monomial(Rational(-1), Rational(0)), 3, n);
        div_poch_finite(d, Monomial(Rational(1), Rational(1)), 1, 2 * n);
        div_poch_finite(d, Monomial(Rational(-1), Rational(0)), 1, n);
        if (one_minus_q) mul_poch_factor(d, Rational(1), Rational(1));
        if (q_to_n) d.mul_monomial(Rational(1), n);
        return d.to_qseries();
    };
}

// (s*q^(3/2); q^3)_n / ((q^2;q)_{2n} (s*q^(1/2); q)_n) for s = -1 (P4/P5)
// or s = +1 (J4/J5), optionally shifted by q^n.
SeqGen beta_half_grid(int sign, bool q_to_n) {
    return [=](long long n, const Rational& order) {
        DenseSeries d = DenseSeries::one(order, 2);
        mul_poch_finite(d, Monomial(Rational(sign), half(3)), 3, n);
        div_poch_finite(d, Monomial(Rational(1), Rational(2)), 1, 2 * n);
        div_poch_finite(d, Monomial(Rational(sign), half(1)), 1, n);
        if (q_to_n) d.mul_monomial(Rational(1), 2 * n); // key units on grid 2
        return d.to_qseries();
    };
}

// alpha assembled from the three residue branches of the tables.
struct AlphaBranches {
    std::function<QSeries(long long r, const Rational&)> at_3r;       // r >= 1
    std::function<QSeries(long long r, const Rational&)> at_3r_plus;  // r >= 0
    std::function<QSeries(long long r, const Rational&)> at_3r_minus; // r >= 1
};

SeqGen alpha_mod3(AlphaBranches b, bool override_zero) {
    return [b = std::move(b), override_zero](long long n, const Rational& order) {
        if (n == 0 && override_zero) return QSeries::one(order);
        if (n < 0) throw DomainViolation("alpha index must be >= 0");
        switch (n % 3) {
        case 0: return b.at_3r(n / 3, order);
        case 1: return b.at_3r_plus((n - 1) / 3, order);
        default: return b.at_3r_minus((n + 1) / 3, order);
        }
    };
}

} // namespace

BaileyPair make_pair(const std::string& label) {
    BaileyPair p;
    p.label = label;
    p.base_pow = 1;

    if (label == "P1") {
        p.rel_a_exp = 0;
        p.beta = beta_m18(false, false);
        p.alpha = alpha_mod3(
            {[](long long r, const Rational& o) {
                 return two_term(1, quad92(r, half(-3), 0), 1, quad92(r, half(3), 0), o);
             },
             [](long long r, const Rational& o) { return mono_qs(-1, quad92(r, half(9), 1), o); },
             [](long long r, const Rational& o) { return mono_qs(-1, quad92(r, half(-9), 1), o); }},
            true);
        return p;
    }
    if (label == "P2") {
        p.rel_a_exp = 0;
        p.beta = beta_m18(true, false);
        p.alpha = alpha_mod3(
            {[](long long r, const Rational& o) {
                 return two_term(1, quad92(r, half(-3), 0), 1, quad92(r, half(3), 0), o);
             },
             [](long long r, const Rational& o) { return mono_qs(-1, quad92(r, half(3), 0), o); },
             [](long long r, const Rational& o) { return mono_qs(-1, quad92(r, half(-3), 0), o); }},
            true);
        return p;
    }
    if (label == "P3") {
        p.rel_a_exp = 1;
        p.beta = [](long long n, const Rational& order) {
            DenseSeries d = DenseSeries::one(order, 1);
            mul_poch_finite(d, Monomial(Rational(-1), Rational(3)), 3, n);
            div_poch_finite(d, Monomial(Rational(1), Rational(2)), 1, 2 * n);
            div_poch_finite(d, Monomial(Rational(-1), Rational(1)), 1, n);
            return d.to_qseries();
        };
        p.alpha = alpha_mod3(
            {[](long long r, const Rational& o) { return mono_qs(1, quad92(r, half(3), 0), o); },
             [](long long r, const Rational& o) { return mono_qs(-2, quad92(r, half(9), 1), o); },
             [](long long r, const Rational& o) { return mono_qs(1, quad92(r, half(-3), 0), o); }},
            true);
        return p;
    }
    if (label == "P4") {
        p.rel_a_exp = 1;
        p.beta = beta_half_grid(-1, false);
        p.alpha = alpha_mod3(
            {[](long long r, const Rational& o) { return mono_qs(1, quad92(r, 0, 0), o); },
             [](long long r, const Rational& o) {
                 QSeries m = mono_qs(-1, quad92(r, 3, half(1)), o);
                 return m * two_term(1, 0, 1, Rational(3) * r + half(3), o);
             },
             [](long long r, const Rational& o) { return mono_qs(1, quad92(r, 0, 0), o); }},
            true);
        return p;
    }
    if (label == "P5") {
        p.rel_a_exp = 1;
        p.beta = beta_half_grid(-1, true);
        p.alpha = alpha_mod3(
            {[](long long r, const Rational& o) { return mono_qs(1, quad92(r, 3, 0), o); },
             [](long long r, const Rational& o) {
                 QSeries m = mono_qs(-1, quad92(r, 3, 0), o);
                 return m * two_term(1, 0, 1, Rational(3) * r + half(3), o);
             },
             [](long long r, const Rational& o) { return mono_qs(1, quad92(r, -3, 0), o); }},
            true);
        return p;
    }
    if (label == "P6") {
        // Taken literally: alpha_0 = beta_0 = 1 - q, which is the assignment
        // under which the defining relation actually holds.
        p.rel_a_exp = 1;
        p.beta = beta_m18(false, true);
        p.alpha = alpha_mod3(
            {[](long long r, const Rational& o) {
                 return mono_qs(1, quad92(r, half(-3), 0), o) -
                        mono_qs(1, quad92(r, half(9), 1), o);
             },
             [](long long, const Rational& o) { return QSeries::zero(o); },
             [](long long r, const Rational& o) {
                 QSeries m = mono_qs(-1, quad92(r, half(-9), 1), o);
                 return m * two_term(1, 0, -1, Rational(6) * r - 1, o);
             }},
            false);
        return p;
    }
    if (label == "P7") {
        p.rel_a_exp = 1;
        p.beta = [](long long n, const Rational& order) {
            if (n == 0) return QSeries::one(order);
            DenseSeries d = DenseSeries::one(order, 1);
            mul_poch_finite(d, Monomial(Rational(1), Rational(3)), 3, n - 1);
            div_poch_finite(d, Monomial(Rational(1), Rational(2)), 1, 2 * n - 1);
            div_poch_finite(d, Monomial(Rational(1), Rational(1)), 1, n - 1);
            return d.to_qseries();
        };
        p.alpha = alpha_mod3(
            {[](long long r, const Rational& o) {
                 QSeries g = geom(6 * r + 1, o - quad92(r, half(-3), 0));
                 Rational s = r % 2 == 0 ? 1 : -1;
                 return g.shifted(Monomial(s, quad92(r, half(-3), 0)));
             },
             [](long long r, const Rational& o) {
                 QSeries g = geom(6 * r + 3, o - quad92(r, half(3), 1));
                 Rational s = r % 2 == 0 ? -1 : 1;
                 return g.shifted(Monomial(s, quad92(r, half(3), 1)));
             },
             [](long long r, const Rational& o) {
                 QSeries g = geom(6 * r - 1, o - quad92(r, half(-9), 1));
                 Rational s = r % 2 == 0 ? -1 : 1;
                 return g.shifted(Monomial(s, quad92(r, half(-9), 1)));
             }},
            false);
        return p;
    }
    if (label == "UNIT") {
        p.rel_a_exp = 0;
        p.beta = [](long long n, const Rational& order) {
            return n == 0 ? QSeries::one(order) : QSeries::zero(order);
        };
        p.alpha = [](long long n, const Rational& order) {
            if (n == 0) return QSeries::one(order);
            Rational sign = n % 2 == 0 ? 1 : -1;
            Rational e(Integer(n) * Integer(n - 1), 2);
            return two_term(sign, e, sign, e + n, order);
        };
        p.alpha_at_q = [](long long n, const Rational& order) {
            // unit pair relative to a = q: (-1)^n q^(n(n-1)/2) (1-q^(2n+1))/(1-q)
            Rational e(Integer(n) * Integer(n - 1), 2);
            QSeries g = geom(2 * n + 1, order - e);
            Rational sign = n % 2 == 0 ? 1 : -1;
            return g.shifted(Monomial(sign, e));
        };
        return p;
    }
    if (label == "BRESSOUD") {
        p.rel_a_exp = 0;
        p.beta = [](long long n, const Rational& order) {
            DenseSeries d = DenseSeries::one(order, 1);
            div_poch_finite(d, Monomial(Rational(1), Rational(2)), 2, n);
            return d.to_qseries();
        };
        p.alpha = [](long long n, const Rational& order) {
            if (n == 0) return QSeries::one(order);
            Rational sign = n % 2 == 0 ? 2 : -2;
            return mono_qs(sign, Rational(Integer(n) * Integer(n)), order);
        };
        return p;
    }
    if (label == "J4" || label == "J5") {
        // Slater-style companions of P4/P5 with the signs of the half-integer
        // Pochhammers flipped; alpha closed forms pinned numerically by
        // alpha_from_beta and guarded by check_pair.
        bool shift = label == "J5";
        p.rel_a_exp = 1;
        p.beta = beta_half_grid(+1, shift);
        if (label == "J4") {
            p.alpha = alpha_mod3(
                {[](long long r, const Rational& o) {
                     Rational s = r % 2 == 0 ? 1 : -1;
                     return mono_qs(s, quad92(r, 0, 0), o);
                 },
                 [](long long r, const Rational& o) {
                     Rational s = r % 2 == 0 ? 1 : -1;
                     QSeries m = mono_qs(s, quad92(r, 3, half(1)), o);
                     return m * two_term(1, 0, -1, Rational(3) * r + half(3), o);
                 },
                 [](long long r, const Rational& o) {
                     Rational s = r % 2 == 0 ? 1 : -1;
                     return mono_qs(s, quad92(r, 0, 0), o);
                 }},
                true);
        } else {
            p.alpha = alpha_mod3(
                {[](long long r, const Rational& o) {
                     Rational s = r % 2 == 0 ? 1 : -1;
                     return mono_qs(s, quad92(r, 3, 0), o);
                 },
                 [](long long r, const Rational& o) {
                     Rational s = r % 2 == 0 ? -1 : 1;
                     QSeries m = mono_qs(s, quad92(r, 3, 0), o);
                     return m * two_term(1, 0, -1, Rational(3) * r + half(3), o);
                 },
                 [](long long r, const Rational& o) {
                     Rational s = r % 2 == 0 ? 1 : -1;
                     return mono_qs(s, quad92(r, -3, 0), o);
                 }},
                true);
        }
        return p;
    }
    throw UnknownLabel("unknown Bailey pair '" + label + "'");
}

namespace {

// smallest grid carrying the pair's alpha/beta exponents near the origin
long long pair_grid(const BaileyPair& p, long long base_grid, const Rational& order) {
    Rational probe = std::min(order, Rational(8));
    long long g = base_grid;
    for (long long n : {1LL, 2LL}) {
        g = std::lcm(g, p.beta(n, probe).grid_den());
        g = std::lcm(g, p.alpha(n, probe).grid_den());
    }
    return g;
}

// 1/(q^(a+b); q^b)_m and 1/(q^b; q^b)_m caches used by the relation checks.
struct InvPochTable {
    std::vector<QSeries> inv;
    InvPochTable(const Rational& base_exp, const Rational& step, long long m_max,
                 const Rational& order, long long grid) {
        DenseSeries d = DenseSeries::one(order, grid);
        inv.push_back(d.to_qseries());
        for (long long m = 1; m <= m_max; ++m) {
            div_poch_factor(d, Rational(1), base_exp + step * (m - 1));
            inv.push_back(d.to_qseries());
        }
    }
};

} // namespace

QSeries alpha_from_beta(const BaileyPair& p, long long n, const Rational& order) {
    Rational b = p.base_pow;
    Rational aq = p.rel_a_exp + b;
    long long grid = grid_for({aq, b, Rational(1, 2)});
    InvPochTable invA(aq, b, 2 * n, order, grid);
    InvPochTable invB(b, b, n, order, grid);
    std::vector<QSeries> alphas;
    for (long long m = 0; m <= n; ++m) {
        QSeries rhs = QSeries::zero(order, grid);
        for (long long r = 0; r < m; ++r)
            rhs += alphas[static_cast<size_t>(r)] * invA.inv[static_cast<size_t>(m + r)] *
                   invB.inv[static_cast<size_t>(m - r)];
        QSeries diff = p.beta(m, order) - rhs;
        // alpha_m = (aq;q)_{2m} * (beta_m - partial sum)
        DenseSeries d = DenseSeries::from(diff);
        for (long long j = 0; j < 2 * m; ++j) mul_poch_factor(d, Rational(1), aq + b * j);
        alphas.push_back(d.to_qseries());
    }
    return alphas.back();
}

PairCheck check_pair(const BaileyPair& p, long long n_max, const Rational& order) {
    PairCheck out;
    out.label = p.label;
    out.order = order;
    Rational b = p.base_pow;
    Rational aq = p.rel_a_exp + b;
    long long grid = pair_grid(p, grid_for({aq, b}), order);
    InvPochTable invA(aq, b, 2 * n_max, order, grid);
    InvPochTable invB(b, b, n_max, order, grid);
    for (long long n = 0; n <= n_max; ++n) {
        QSeries rhs = QSeries::zero(order, grid);
        for (long long r = 0; r <= n; ++r)
            rhs += p.alpha(r, order) * invA.inv[static_cast<size_t>(n + r)] *
                   invB.inv[static_cast<size_t>(n - r)];
        QSeries beta_n = p.beta(n, order);
        auto diff = QSeries::first_difference(rhs, beta_n, order);
        if (diff) {
            out.pass = false;
            out.first_fail_n = n;
            out.diff = diff;
            return out;
        }
    }
    return out;
}

// --------------------------------------------------------------- 6psi6

std::pair<QSeries, QSeries> six_psi_six(const Monomial& a, const Monomial& e, long long n,
                                        const Rational& order) {
    if (a.coeff != 1 || !is_integer(a.exp) || a.exp < 1)
        throw NonTerminating("six_psi_six requires a to be a positive integer power of q");
    if (n < 0) throw DomainViolation("six_psi_six requires n >= 0");
    if (e.coeff == 0) throw DomainViolation("six_psi_six requires e != 0");
    long long s = to_ll(a.exp);
    long long grid = grid_for({e.exp, Rational(1)});

    // bilateral sum; terms vanish outside ceil((-s-n)/3) <= r <= floor(n/3)
    DenseSeries acc = DenseSeries::zero(order, grid);
    long long rmin = to_ll(rat_ceil(Rational(-s - n, 3)));
    long long rmax = n / 3;
    for (long long r = rmin; r <= rmax; ++r) {
        // Laurent factors lower the guaranteed order; compute once to measure
        // the deficit, then rerun with that much headroom.
        auto build = [&](const Rational& work_order) {
            DenseSeries t = DenseSeries::one(work_order, grid);
            mul_poch_factor(t, Rational(1), Rational(s + 6 * r)); // (1 - a q^{6r})
            div_poch_factor(t, Rational(1), Rational(s));         // 1 - a
            mul_poch_signed(t, Monomial(Rational(1), Rational(-n)), 1, 3 * r);
            div_poch_signed(t, Monomial(Rational(1), Rational(s + n + 1)), 1, 3 * r);
            mul_poch_signed(t, e, 3, r);
            div_poch_signed(t, Monomial(Rational(1) / e.coeff, Rational(s + 3) - e.exp), 3, r);
            Rational pre_c = rat_pow(e.coeff, -r);
            Rational pre_e = Rational(2 * s * r + 3 * n * r) - e.exp * r;
            t.mul_monomial(pre_c, to_ll(pre_e * grid));
            return t;
        };
        DenseSeries t = build(order);
        if (t.order < order) t = build(order + (order - t.order));
        acc.add_scaled(t, Rational(1));
    }
    QSeries lhs = acc.to_qseries();

    // right side: factor lists with formal cancellation of matching (1-1)s
    struct Factor {
        Rational c;
        Rational e;
    };
    std::vector<Factor> num, den;
    auto push_inf = [&](std::vector<Factor>& v, const Monomial& base, const Rational& step) {
        for (Rational ex = base.exp; ex < order; ex += step) v.push_back({base.coeff, ex});
    };
    auto push_fin = [&](std::vector<Factor>& v, const Monomial& base, const Rational& step,
                        long long m) {
        for (long long j = 0; j < m; ++j) v.push_back({base.coeff, base.exp + step * j});
    };
    Monomial aq2_over_e{Rational(1) / e.coeff, Rational(s + 2) - e.exp};
    Monomial aq_over_e{Rational(1) / e.coeff, Rational(s + 1) - e.exp};
    Monomial a2_over_e{Rational(1) / e.coeff, Rational(2 * s) - e.exp};
    Monomial q3_over_e{Rational(1) / e.coeff, Rational(3) - e.exp};

    push_inf(num, Monomial(Rational(1), Rational(s)), 3);
    push_inf(num, Monomial(Rational(1), Rational(3 - s)), 3);
    push_inf(num, aq2_over_e, 3);
    push_inf(num, aq_over_e, 3);
    push_fin(num, Monomial(Rational(1), Rational(1)), 1, n);
    push_fin(num, Monomial(Rational(1), Rational(s + 1)), 1, n);
    push_fin(num, a2_over_e, 3, n);

    push_inf(den, Monomial(Rational(1), Rational(1)), 3);
    push_inf(den, Monomial(Rational(1), Rational(2)), 3);
    push_inf(den, q3_over_e, 3);
    push_inf(den, a2_over_e, 3);
    push_fin(den, Monomial(Rational(1), Rational(s)), 1, 2 * n);
    push_fin(den, aq_over_e, 1, n);

    auto is_zero_factor = [](const Factor& f) { return f.c == 1 && f.e == 0; };
    long long zn = std::count_if(num.begin(), num.end(), is_zero_factor);
    long long zd = std::count_if(den.begin(), den.end(), is_zero_factor);
    if (zd > zn) throw DomainViolation("six_psi_six: right side has an uncancelled pole");
    long long cancel = std::min(zn, zd);
    bool vanishes = zn > zd;

    QSeries rhs;
    if (vanishes) {
        rhs = QSeries::zero(order, grid);
    } else {
        DenseSeries d = DenseSeries::one(order, grid);
        long long remaining = cancel;
        for (const auto& f : num) {
            if (remaining > 0 && is_zero_factor(f)) {
                --remaining;
                continue;
            }
            mul_poch_factor(d, f.c, f.e);
        }
        remaining = cancel;
        for (const auto& f : den) {
            if (remaining > 0 && is_zero_factor(f)) {
                --remaining;
                continue;
            }
            div_poch_factor(d, f.c, f.e);
        }
        rhs = d.to_qseries();
    }
    return {lhs, rhs};
}

// ----------------------------------------------------------- Bailey lemmas

namespace {

// the pair landed on (a, q) = (q^2, q^2); S2BL/FBL operate on this form
BaileyPair rel_q_squared(const BaileyPair& p) {
    if (p.rel_a_exp == p.base_pow && p.base_pow == 1) return p.substituted(2);
    if (p.rel_a_exp == 2 && p.base_pow == 2) return p;
    if (p.base_pow == 1 && p.alpha_at_q) {
        BaileyPair q_rel = p;
        q_rel.rel_a_exp = 1;
        q_rel.alpha = p.alpha_at_q;
        q_rel.alpha_at_q = {};
        return q_rel.substituted(2);
    }
    throw IncompatibleRelA("lemma requires a pair relative to q (pair '" + p.label + "')");
}

} // namespace

std::pair<QSeries, QSeries> apply_lemma(const BaileyPair& p, BaileyLemma lemma,
                                        const Rational& order) {
    switch (lemma) {
    case BaileyLemma::aPBL: {
        if (p.base_pow != 1)
            throw IncompatibleRelA("aPBL expects a pair at base q");
        Rational ra = p.rel_a_exp;
        long long grid = pair_grid(p, grid_for({ra}), order);
        DenseSeries lhs = DenseSeries::zero(order, grid);
        for (long long n = 0; Rational(n) * n + ra * n < order; ++n) {
            DenseSeries t = DenseSeries::from(p.beta(n, order).on_grid(grid));
            t.mul_monomial(Rational(1), to_ll((Rational(n) * n + ra * n) * grid));
            lhs.add_scaled(t, Rational(1));
        }
        DenseSeries rhs = DenseSeries::zero(order, grid);
        for (long long r = 0; Rational(r) * r + ra * r < order; ++r) {
            DenseSeries t = DenseSeries::from(p.alpha(r, order).on_grid(grid));
            t.mul_monomial(Rational(1), to_ll((Rational(r) * r + ra * r) * grid));
            rhs.add_scaled(t, Rational(1));
        }
        div_poch_infinite(rhs, Monomial(Rational(1), ra + 1), Rational(1));
        return {lhs.to_qseries(), rhs.to_qseries()};
    }
    case BaileyLemma::aTBL: {
        if (p.base_pow != 1)
            throw IncompatibleRelA("aTBL expects a pair at base q before substitution");
        BaileyPair p2 = p.substituted(2);
        Rational ra = p2.rel_a_exp; // a = q^ra with ra in {0, 2}
        long long grid = pair_grid(p2, grid_for({ra}), order);
        DenseSeries lhs = DenseSeries::zero(order, grid);
        for (long long n = 0; Rational(n) * n + ra * n < order; ++n) {
            DenseSeries t = DenseSeries::from(p2.beta(n, order).on_grid(grid));
            mul_poch_finite(t, Monomial(Rational(-1), Rational(1)), 2, n); // (-q;q^2)_n
            t.mul_monomial(Rational(1), to_ll((Rational(n) * n + ra * n) * grid));
            lhs.add_scaled(t, Rational(1));
        }
        DenseSeries rhs = DenseSeries::zero(order, grid);
        for (long long r = 0; Rational(r) * r + ra * r < order; ++r) {
            DenseSeries t = DenseSeries::from(p2.alpha(r, order).on_grid(grid));
            t.mul_monomial(Rational(1), to_ll((Rational(r) * r + ra * r) * grid));
            rhs.add_scaled(t, Rational(1));
        }
        mul_poch_infinite(rhs, Monomial(Rational(-1), ra + 1), Rational(2)); // (-aq;q^2)_inf
        div_poch_infinite(rhs, Monomial(Rational(1), ra + 2), Rational(2)); // (aq^2;q^2)_inf
        return {lhs.to_qseries(), rhs.to_qseries()};
    }
    case BaileyLemma::S2BL:
    case BaileyLemma::FBL: {
        BaileyPair p2 = rel_q_squared(p);
        bool fbl = lemma == BaileyLemma::FBL;
        long long grid = pair_grid(p2, 1, order);
        DenseSeries lhs = DenseSeries::zero(order, grid);
        for (long long n = 0; Rational(n) * (n + 1) < order; ++n) {
            DenseSeries t = DenseSeries::from(p2.beta(n, order).on_grid(grid));
            mul_poch_finite(t, Monomial(Rational(fbl ? 1 : -1), Rational(2)), 2, n);
            t.mul_monomial(Rational(fbl && n % 2 == 1 ? -1 : 1),
                           to_ll(Rational(n) * (n + 1) * grid));
            lhs.add_scaled(t, Rational(1));
        }
        div_poch_factor(lhs, Rational(1), Rational(2)); // 1/(1-q^2)
        DenseSeries rhs = DenseSeries::zero(order, grid);
        for (long long r = 0; Rational(r) * (r + 1) < order; ++r) {
            DenseSeries t = DenseSeries::from(p2.alpha(r, order).on_grid(grid));
            t.mul_monomial(Rational(fbl && r % 2 == 1 ? -1 : 1),
                           to_ll(Rational(r) * (r + 1) * grid));
            rhs.add_scaled(t, Rational(1));
        }
        QSeries rhs_q = rhs.to_qseries();
        if (!fbl) {
            QSeries phi_m = phi(Monomial(Rational(-1), Rational(2)), order); // phi(-q^2)
            rhs_q = (rhs_q * phi_m.inverse()).truncated(order);
        }
        return {lhs.to_qseries(), rhs_q};
    }
    }
    throw Error("unreachable");
}

// --------------------------------------------------------------- multisums

namespace {

int legendre3(long long m) {
    long long r = ((m % 3) + 3) % 3;
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

} // namespace

QSeries multisum(const MultisumSpec& spec, const Rational& order) {
    const std::string& fam = spec.family;
    long long k = spec.k;
    long long i = spec.i;
    static const std::vector<std::string> families = {"5.2", "5.3", "5.5", "5.6",
                                                      "5.7", "5.8", "5.9", "5.10"};
    if (std::find(families.begin(), families.end(), fam) == families.end())
        throw UnknownLabel("unknown multisum family '" + fam + "'");
    if (k < 1) throw IndexOutOfRange("multisum requires k >= 1");
    bool has_i = fam == "5.2" || fam == "5.3";
    if (has_i && (i < 1 || i > k + 1))
        throw IndexOutOfRange("multisum i must satisfy 1 <= i <= k+1");

    bool triangular_head = fam == "5.5" || fam == "5.7";
    long long bound = 0;
    while (true) {
        Rational head = triangular_head ? Rational(bound * (bound + 1), 2) : Rational(bound) * bound;
        if (head >= order) break;
        ++bound;
    }

    long long vars = fam == "5.6" ? k + 1 : k;
    DenseSeries acc = DenseSeries::zero(order, 1);
    std::vector<long long> n(static_cast<size_t>(vars), 0);

    auto add_term = [&]() {
        // N_j = n_j + ... + n_k (1-based j, over the first k variables)
        std::vector<long long> N(static_cast<size_t>(k), 0);
        long long tail = 0;
        for (long long j = k - 1; j >= 0; --j) {
            tail += n[static_cast<size_t>(j)];
            N[static_cast<size_t>(j)] = tail;
        }
        Rational expo(0);
        Rational weight(1);
        if (fam == "5.2" || fam == "5.3") {
            for (long long j = 0; j < k; ++j) expo += Rational(N[j]) * N[j];
            for (long long j = i - 1; j < k; ++j) expo += N[j];
        } else if (fam == "5.5" || fam == "5.7") {
            expo = Rational(N[0] * (N[0] + 1), 2);
            for (long long j = 1; j < k; ++j) expo += Rational(N[j]) * (N[j] + 1);
            if (fam == "5.5") expo += Rational(N[k - 1]) * N[k - 1];
        } else if (fam == "5.8") {
            for (long long j = 0; j + 1 < k; ++j) expo += Rational(N[j]) * N[j];
            expo += 2 * Rational(N[k - 1]) * N[k - 1];
        } else { // 5.6, 5.9, 5.10
            for (long long j = 0; j < k; ++j) expo += Rational(N[j]) * N[j];
        }
        if (fam == "5.6") {
            long long m = 2 * n[static_cast<size_t>(k - 1)] - n[static_cast<size_t>(k)];
            if (m < 0) return;
            int chi = legendre3(n[static_cast<size_t>(k - 1)] - n[static_cast<size_t>(k)] + 1);
            if (chi == 0) return;
            weight = chi;
        }
        if (expo >= order) return;

        DenseSeries t = DenseSeries::one(order - expo, 1);
        auto div_qfact = [&](long long m, long long step) {
            div_poch_finite(t, Monomial(Rational(1), Rational(step)), step, m);
        };
        if (fam == "5.2") {
            for (long long j = 0; j < k; ++j) div_qfact(n[static_cast<size_t>(j)], 1);
        } else if (fam == "5.3") {
            for (long long j = 0; j + 1 < k; ++j) div_qfact(n[static_cast<size_t>(j)], 1);
            div_qfact(n[static_cast<size_t>(k - 1)], 2);
        } else if (fam == "5.5" || fam == "5.7") {
            for (long long j = 0; j + 1 < k; ++j) div_qfact(n[static_cast<size_t>(j)], 1);
            div_poch_finite(t, Monomial(Rational(1), Rational(1)), 1,
                            2 * n[static_cast<size_t>(k - 1)] + 1);
            div_poch_infinite(t, Monomial(Rational(-1), Rational(N[0] + 1)), Rational(1));
        } else if (fam == "5.6") {
            // the n_k slot is taken by the two inner factors; (q;q)_{n_k} is absent
            for (long long j = 0; j + 1 < k; ++j) div_qfact(n[static_cast<size_t>(j)], 1);
            div_qfact(n[static_cast<size_t>(k)], 1);
            div_poch_finite(t, Monomial(Rational(1), Rational(1)), 1,
                            2 * n[static_cast<size_t>(k - 1)] - n[static_cast<size_t>(k)]);
        } else if (fam == "5.8" || fam == "5.10") {
            for (long long j = 0; j + 1 < k; ++j) div_qfact(n[static_cast<size_t>(j)], 1);
            div_qfact(2 * n[static_cast<size_t>(k - 1)], 1);
        } else { // 5.9
            for (long long j = 0; j + 1 < k; ++j) div_qfact(n[static_cast<size_t>(j)], 1);
            long long nk = n[static_cast<size_t>(k - 1)];
            mul_poch_finite(t, Monomial(Rational(-1), Rational(0)), 3, nk);
            div_qfact(2 * nk, 1);
            div_poch_finite(t, Monomial(Rational(-1), Rational(0)), 1, nk);
        }
        t.mul_monomial(weight, to_ll(expo));
        acc.add_scaled(t, Rational(1));
    };

    std::function<void(long long, long long)> rec = [&](long long idx, long long used) {
        if (idx == vars) {
            add_term();
            return;
        }
        long long cap = (fam == "5.6" && idx == k) ? 2 * n[static_cast<size_t>(k - 1)]
                                                   : bound - used;
        for (long long v = 0; v <= cap; ++v) {
            n[static_cast<size_t>(idx)] = v;
            rec(idx + 1, idx < k ? used + v : used);
        }
    };
    rec(0, 0);
    return acc.to_qseries();
}

namespace {

QSeries triple_over_euler(long long x1, long long x2, long long m, const Rational& order) {
    DenseSeries d = DenseSeries::one(order, 1);
    mul_poch_infinite(d, Monomial(Rational(1), Rational(x1)), Rational(m));
    mul_poch_infinite(d, Monomial(Rational(1), Rational(x2)), Rational(m));
    mul_poch_infinite(d, Monomial(Rational(1), Rational(m)), Rational(m));
    div_poch_infinite(d, Monomial(Rational(1), Rational(1)), Rational(1));
    return d.to_qseries();
}

} // namespace

QSeries ag_product(long long k, long long i, const Rational& order) {
    if (k < 1 || i < 1 || i > k + 1) throw IndexOutOfRange("ag_product requires 1 <= i <= k+1");
    return triple_over_euler(i, 2 * k + 3 - i, 2 * k + 3, order);
}

QSeries bressoud_product(long long k, long long i, const Rational& order) {
    if (k < 1 || i < 1 || i > k + 1)
        throw IndexOutOfRange("bressoud_product requires 1 <= i <= k+1");
    return triple_over_euler(i, 2 * k + 2 - i, 2 * k + 2, order);
}

QSeries a22_product(long long level, long long i, const Rational& order) {
    if (level < 1 || i < 1 || i > 1 + level / 2)
        throw IndexOutOfRange("a22_product requires 1 <= i <= 1 + floor(level/2)");
    long long m = level + 3;
    DenseSeries d = DenseSeries::one(order, 1);
    mul_poch_infinite(d, Monomial(Rational(1), Rational(i)), Rational(m));
    mul_poch_infinite(d, Monomial(Rational(1), Rational(m - i)), Rational(m));
    mul_poch_infinite(d, Monomial(Rational(1), Rational(m)), Rational(m));
    mul_poch_infinite(d, Monomial(Rational(1), Rational(m - 2 * i)), Rational(2 * m));
    mul_poch_infinite(d, Monomial(Rational(1), Rational(m + 2 * i)), Rational(2 * m));
    div_poch_infinite(d, Monomial(Rational(1), Rational(1)), Rational(1));
    return d.to_qseries();
}

QSeries multisum_product(const std::string& family, long long k, long long i,
                         const Rational& order) {
    if (family == "5.2") return ag_product(k, i, order);
    if (family == "5.3") return bressoud_product(k, i, order);
    if (family == "5.5") return a22_product(6 * k - 4, 2 * k - 1, order);
    if (family == "5.6") return a22_product(6 * k - 3, k, order);
    if (family == "5.7") return a22_product(6 * k - 2, 2 * k, order);
    if (family == "5.8") return a22_product(6 * k - 1, k, order);
    if (family == "5.9") return a22_product(6 * k, k + 1, order);
    if (family == "5.10") return a22_product(6 * k + 1, k + 1, order);
    throw UnknownLabel("unknown multisum family '" + family + "'");
}

} // namespace qident
