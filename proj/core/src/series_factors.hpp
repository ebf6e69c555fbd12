#ifndef QIDENT_SERIES_FACTORS_HPP
#define QIDENT_SERIES_FACTORS_HPP

#include <initializer_list>

#include "qident/qseries.hpp"
#include "dense_series.hpp"

namespace qident {

/// lcm of the exponent denominators; the minimal grid carrying them all.
long long grid_for(std::initializer_list<Rational> exps);

// In-place multiplication/division by a single Pochhammer factor (1 - c*q^e).
// e may be negative or zero; negative exponents factor through a monomial
// shift, e == 0 degenerates to the constant (1 - c).
void mul_poch_factor(DenseSeries& d, const Rational& c, const Rational& e);
void div_poch_factor(DenseSeries& d, const Rational& c, const Rational& e);

void mul_poch_finite(DenseSeries& d, const Monomial& base, const Rational& step, long long n);
void div_poch_finite(DenseSeries& d, const Monomial& base, const Rational& step, long long n);
void mul_poch_signed(DenseSeries& d, const Monomial& base, const Rational& step, long long m);
void div_poch_signed(DenseSeries& d, const Monomial& base, const Rational& step, long long m);
void mul_poch_infinite(DenseSeries& d, const Monomial& base, const Rational& step);
void div_poch_infinite(DenseSeries& d, const Monomial& base, const Rational& step);

} // namespace qident

#endif
