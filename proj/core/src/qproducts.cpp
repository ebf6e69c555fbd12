#include "qident/qproducts.hpp"

#include <numeric>

#include "qident/errors.hpp"
#include "dense_series.hpp"
#include "series_factors.hpp"

namespace qident {

long long grid_for(std::initializer_list<Rational> exps) {
    Integer g(1);
    for (const Rational& e : exps) g = boost::multiprecision::lcm(g, rat_den(e));
    return to_ll(g);
}

void mul_poch_factor(DenseSeries& d, const Rational& c, const Rational& e) {
    // multiply by (1 - c*q^e)
    Rational key = e * d.grid;
    long long j = to_ll(key);
    if (j == 0) {
        d.scale(Rational(1) - c);
        return;
    }
    if (j > 0) {
        if (e < d.factor_cutoff()) d.mul_binomial(-c, j);
        return;
    }
    // (1 - c q^-s) = -c q^-s (1 - (1/c) q^s)
    d.mul_monomial(-c, j);
    d.mul_binomial(Rational(-1) / c, -j);
}

void div_poch_factor(DenseSeries& d, const Rational& c, const Rational& e) {
    // divide by (1 - c*q^e)
    Rational key = e * d.grid;
    long long j = to_ll(key);
    if (j == 0) {
        Rational f = Rational(1) - c;
        if (f == 0) throw ZeroLeadingTerm("division by the zero factor (1 - 1)");
        d.scale(Rational(1) / f);
        return;
    }
    if (j > 0) {
        d.div_binomial(-c, j);
        return;
    }
    d.mul_monomial(Rational(-1) / c, -j);
    d.div_binomial(Rational(-1) / c, -j);
}

void mul_poch_finite(DenseSeries& d, const Monomial& base, const Rational& step, long long n) {
    for (long long j = 0; j < n; ++j) mul_poch_factor(d, base.coeff, base.exp + step * j);
}

void div_poch_finite(DenseSeries& d, const Monomial& base, const Rational& step, long long n) {
    for (long long j = 0; j < n; ++j) div_poch_factor(d, base.coeff, base.exp + step * j);
}

void mul_poch_signed(DenseSeries& d, const Monomial& base, const Rational& step, long long m) {
    if (m >= 0) {
        mul_poch_finite(d, base, step, m);
        return;
    }
    // (x;q)_{-m} = 1 / (x q^{-m}; q)_m
    Monomial shifted{base.coeff, base.exp + step * m};
    div_poch_finite(d, shifted, step, -m);
}

void div_poch_signed(DenseSeries& d, const Monomial& base, const Rational& step, long long m) {
    if (m >= 0) {
        div_poch_finite(d, base, step, m);
        return;
    }
    Monomial shifted{base.coeff, base.exp + step * m};
    mul_poch_finite(d, shifted, step, -m);
}

void mul_poch_infinite(DenseSeries& d, const Monomial& base, const Rational& step) {
    if (step <= 0) throw DomainViolation("poch_infinite requires step > 0");
    if (base.exp < 0) throw DomainViolation("poch_infinite requires base exponent >= 0");
    if (base.exp == 0 && base.coeff == 1)
        throw DivergentBase("(1; q^k)_inf vanishes: factor (1 - 1)");
    for (Rational e = base.exp; e < d.factor_cutoff(); e += step) mul_poch_factor(d, base.coeff, e);
}

void div_poch_infinite(DenseSeries& d, const Monomial& base, const Rational& step) {
    if (step <= 0) throw DomainViolation("poch_infinite requires step > 0");
    if (base.exp < 0) throw DomainViolation("poch_infinite requires base exponent >= 0");
    if (base.exp == 0 && base.coeff == 1)
        throw ZeroLeadingTerm("division by (1; q^k)_inf = 0");
    for (Rational e = base.exp; e < d.factor_cutoff(); e += step) div_poch_factor(d, base.coeff, e);
}

QSeries poch_finite(const Monomial& base, const Rational& step, long long n, const Rational& order) {
    if (step <= 0) throw DomainViolation("poch_finite requires step > 0");
    if (n < 0) throw DomainViolation("poch_finite requires n >= 0");
    long long g = grid_for({base.exp, step});
    DenseSeries d = DenseSeries::one(order, g);
    mul_poch_finite(d, base, step, n);
    return d.to_qseries();
}

QSeries poch_signed(const Monomial& base, const Rational& step, long long m, const Rational& order) {
    if (step <= 0) throw DomainViolation("poch_signed requires step > 0");
    long long g = grid_for({base.exp, step});
    DenseSeries d = DenseSeries::one(order, g);
    mul_poch_signed(d, base, step, m);
    return d.to_qseries();
}

QSeries poch_infinite(const Monomial& base, const Rational& step, const Rational& order) {
    long long g = grid_for({base.exp, step});
    DenseSeries d = DenseSeries::one(order, g);
    mul_poch_infinite(d, base, step);
    return d.to_qseries();
}

namespace {

Rational triangular(long long n) {
    // n(n+1)/2 as a rational; nonnegative for every integer n
    return Rational(Integer(n) * Integer(n + 1), 2);
}

} // namespace

QSeries theta_f(const Monomial& a, const Monomial& b, const Rational& order) {
    if (a.coeff == 0 || b.coeff == 0) throw DomainViolation("theta_f requires nonzero arguments");
    if (a.exp + b.exp <= 0) throw DomainViolation("theta_f requires a.exp + b.exp > 0");
    long long g = grid_for({a.exp, b.exp});
    DenseSeries d = DenseSeries::zero(order, g);
    // exponent E(n) = A n^2 + B n with A = (ea+eb)/2 > 0, B = (ea-eb)/2
    Rational A = (a.exp + b.exp) / 2;
    Rational B = (a.exp - b.exp) / 2;
    auto term_exp = [&](long long n) { return A * n * n + B * n; };
    auto add_term = [&](long long n) {
        Rational e = term_exp(n);
        if (e >= order) return false;
        Rational c = rat_pow(a.coeff, to_ll(triangular(n))) * rat_pow(b.coeff, to_ll(triangular(n - 1)));
        d.add_term(to_ll(e * g), c);
        return true;
    };
    long long nv = to_ll(rat_floor(-B / (2 * A)));
    for (long long n = nv;; ++n)
        if (!add_term(n) && n > nv) break;
    for (long long n = nv - 1;; --n)
        if (!add_term(n)) break;
    return d.to_qseries();
}

namespace {

// (base; step)_inf where the step is a signed monomial: factors
// (1 - base * step^j), so a negative step alternates the factor signs.
void mul_poch_infinite_signed(DenseSeries& d, const Monomial& base, const Monomial& step) {
    if (step.exp <= 0) throw DomainViolation("infinite product requires step exponent > 0");
    if (base.exp < 0) throw DomainViolation("infinite product requires base exponent >= 0");
    if (base.exp == 0 && base.coeff == 1)
        throw DivergentBase("(1; ...)_inf vanishes: factor (1 - 1)");
    Rational sign(1);
    for (Rational e = base.exp; e < d.factor_cutoff(); e += step.exp) {
        mul_poch_factor(d, base.coeff * sign, e);
        sign *= step.coeff;
    }
}

} // namespace

QSeries jacobi_triple_product(const Monomial& a, const Monomial& b, const Rational& order) {
    if (a.exp + b.exp <= 0) throw DomainViolation("jacobi_triple_product requires a.exp + b.exp > 0");
    Monomial ab = a * b;
    long long g = grid_for({a.exp, b.exp});
    DenseSeries d = DenseSeries::one(order, g);
    mul_poch_infinite_signed(d, -a, ab);
    mul_poch_infinite_signed(d, -b, ab);
    mul_poch_infinite_signed(d, ab, ab);
    return d.to_qseries();
}

QSeries false_theta(const Monomial& a, const Monomial& b, const Rational& order) {
    if (a.coeff == 0 || b.coeff == 0) throw DomainViolation("false_theta requires nonzero arguments");
    if (a.exp + b.exp <= 0) throw DomainViolation("false_theta requires a.exp + b.exp > 0");
    long long g = grid_for({a.exp, b.exp});
    DenseSeries d = DenseSeries::zero(order, g);
    Rational A = (a.exp + b.exp) / 2;
    Rational B = (a.exp - b.exp) / 2;
    Rational v1 = -B / (2 * A);
    Rational v2 = -(B + 2 * b.exp) / (2 * A);
    Rational vertex = std::max(v1, v2);
    for (long long n = 0;; ++n) {
        Rational e1 = A * n * n + B * n;
        Rational e2 = e1 + (2 * n + 1) * b.exp;
        if (e1 >= order && e2 >= order && Rational(n) > vertex) break;
        Rational c = rat_pow(a.coeff, to_ll(triangular(n))) * rat_pow(b.coeff, to_ll(triangular(n - 1)));
        if (e1 < order) d.add_term(to_ll(e1 * g), c);
        if (e2 < order) d.add_term(to_ll(e2 * g), -c * rat_pow(b.coeff, 2 * n + 1));
    }
    return d.to_qseries();
}

QuintupleForms quintuple_product(const Monomial& w, const Monomial& x, const Rational& order) {
    if (w.exp <= 0) throw DomainViolation("quintuple_product requires w.exp > 0");
    if (x.coeff == 0) throw DomainViolation("quintuple_product requires x != 0");
    if (order <= 0) {
        // vacuous truncation; the quotient form would otherwise invert a
        // series with no guaranteed coefficients
        long long g = grid_for({w.exp, x.exp});
        QSeries z = QSeries::zero(order, g);
        return {z, z, z};
    }
    Monomial x3 = x.pow(3);
    Monomial w2 = w.pow(2);
    Monomial x2 = x.pow(2);

    QuintupleForms out;
    // theta-sum form
    QSeries t1 = theta_f(-(w * x3), -(w2 * x3.inverse()), order);
    QSeries t2 = theta_f(-(w * x3.inverse()), -(w2 * x3), order - x.exp);
    out.theta_sum = t1 + t2.shifted(x);

    // quotient form
    QSeries u1 = theta_f(w * x.inverse(), x, order);
    QSeries u2 = theta_f(-(w * x2.inverse()), -(w * x2), order);
    out.quotient = (u1 * u2) * f_neg(w2, order).inverse();
    out.quotient = out.quotient.truncated(order);

    // product form
    long long g = grid_for({w.exp, x.exp});
    DenseSeries d = DenseSeries::one(order, g);
    mul_poch_infinite(d, -(w * x.inverse()), w.exp);
    mul_poch_infinite(d, -x, w.exp);
    mul_poch_infinite(d, w, w.exp);
    mul_poch_infinite(d, w * x2.inverse(), w2.exp);
    mul_poch_infinite(d, w * x2, w2.exp);
    out.product = d.to_qseries();
    return out;
}

QSeries quad_poch(const QuadFactor& f, const Rational& order) {
    if (f.step_exp <= 0) throw DomainViolation("quad_poch requires step_exp > 0");
    if (f.linear_coeff < -1 || f.linear_coeff > 1)
        throw DomainViolation("quad_poch requires t in {-1, 0, +1}");
    long long g = grid_for({f.base_exp, f.step_exp});
    DenseSeries d = DenseSeries::one(order, g);
    long long count = f.length ? *f.length : -1;
    for (long long j = 0; count < 0 || j < count; ++j) {
        Rational e = f.base_exp + f.step_exp * j;
        if (e < 0) throw DomainViolation("quad_poch factor with negative exponent");
        if (e == 0) {
            d.scale(Rational(2 - f.linear_coeff));
            continue;
        }
        if (e >= order) {
            if (count < 0) break;
            continue;
        }
        d.mul_quad(Rational(f.linear_coeff), to_ll(e * g));
    }
    return d.to_qseries();
}

QSeries phi(const Monomial& m, const Rational& order) { return theta_f(m, m, order); }

QSeries psi(const Monomial& m, const Rational& order) { return theta_f(m, m.pow(3), order); }

QSeries f_neg(const Monomial& m, const Rational& order) { return theta_f(-m, -m.pow(2), order); }

QSeries euler_inf(const Rational& order) {
    return poch_infinite(Monomial::q(), Rational(1), order);
}

} // namespace qident
