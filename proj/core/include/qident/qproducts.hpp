#ifndef QIDENT_QPRODUCTS_HPP
#define QIDENT_QPRODUCTS_HPP

#include <optional>
#include <vector>

#include "qident/qseries.hpp"

namespace qident {

/// A paired-conjugate Pochhammer block: prod_j (1 - t*q^(e_j) + q^(2*e_j))
/// with e_j = base_exp + step_exp*j. Realizes the complex-root
/// specializations (1-b q^e)(1-conj(b) q^e) with t = b+conj(b) in {-1,0,+1}
/// without leaving the rational coefficient ring.
struct QuadFactor {
    int linear_coeff = 1;       ///< t
    Rational base_exp{1};       ///< e_0
    Rational step_exp{1};       ///< > 0
    std::optional<long long> length; ///< factor count; empty = infinite
};

/// (base; q^step)_n = prod_{j<n} (1 - base*q^(step*j)), truncated to order.
QSeries poch_finite(const Monomial& base, const Rational& step, long long n, const Rational& order);

/// (base; q^step)_m for any integer m; negative m uses
/// (x;q)_{-m} = 1/(x q^{-m}; q)_m.
QSeries poch_signed(const Monomial& base, const Rational& step, long long m, const Rational& order);

/// (base; q^step)_inf. Requires base.exp >= 0; factors at or past the order
/// are skipped. Throws DivergentBase when the first factor is (1 - 1).
QSeries poch_infinite(const Monomial& base, const Rational& step, const Rational& order);

/// Ramanujan theta: f(a,b) = sum_{n in Z} a^(n(n+1)/2) b^(n(n-1)/2).
/// Requires a.exp + b.exp > 0.
QSeries theta_f(const Monomial& a, const Monomial& b, const Rational& order);

/// Product form (-a, -b, ab; ab)_inf of f(a,b).
QSeries jacobi_triple_product(const Monomial& a, const Monomial& b, const Rational& order);

struct QuintupleForms {
    QSeries theta_sum; ///< f(-w x^3, -w^2 x^-3) + x f(-w x^-3, -w^2 x^3)
    QSeries quotient;  ///< f(w/x, x) f(-w/x^2, -w x^2) / f(-w^2)
    QSeries product;   ///< (-w/x, -x, w; w)_inf (w/x^2, w x^2; w^2)_inf
};

/// The three displayed forms of the quintuple product identity.
QuintupleForms quintuple_product(const Monomial& w, const Monomial& x, const Rational& order);

/// False theta: Psi(a,b) = sum_{n>=0} a^(n(n+1)/2) b^(n(n-1)/2) (1 - b^(2n+1)).
QSeries false_theta(const Monomial& a, const Monomial& b, const Rational& order);

/// Expansion of a QuadFactor block.
QSeries quad_poch(const QuadFactor& f, const Rational& order);

QSeries phi(const Monomial& m, const Rational& order);   ///< f(m, m)
QSeries psi(const Monomial& m, const Rational& order);   ///< f(m, m^3)
QSeries f_neg(const Monomial& m, const Rational& order); ///< f(-m, -m^2)

/// (q; q)_inf
QSeries euler_inf(const Rational& order);

} // namespace qident

#endif
