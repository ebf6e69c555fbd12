#ifndef QIDENT_QSERIES_HPP
#define QIDENT_QSERIES_HPP

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qident/rational.hpp"

namespace qident {

/// A signed power c*q^e with exact rational coefficient and exponent.
/// The atom for theta arguments and Pochhammer bases.
struct Monomial {
    Rational coeff{1};
    Rational exp{0};

    Monomial() = default;
    Monomial(Rational c, Rational e) : coeff(std::move(c)), exp(std::move(e)) {}

    Monomial operator*(const Monomial& o) const { return {coeff * o.coeff, exp + o.exp}; }
    Monomial operator-() const { return {-coeff, exp}; }
    Monomial pow(long long k) const { return {rat_pow(coeff, k), exp * k}; }
    Monomial inverse() const;
    bool operator==(const Monomial& o) const = default;

    std::string to_text() const;
    static Monomial q(); ///< the monomial q^1
};

/// Truncated formal series in q^(1/d) with exact rational coefficients.
///
/// Exponents live on the grid (1/grid_den)*Z; the map key k holds the
/// coefficient of q^(k/grid_den). Coefficients are authoritative for all
/// exponents strictly below order(). Canonical sparse form: no stored zero.
/// Negative keys (finitely many) are allowed, which covers the Laurent
/// shifts produced by inverse() and the bilateral-sum intermediates.
class QSeries {
public:
    QSeries() = default; ///< zero series of order 0

    static QSeries zero(const Rational& order, long long grid = 1);
    static QSeries one(const Rational& order);
    static QSeries monomial(const Rational& c, const Rational& e, const Rational& order);
    static QSeries monomial(const Monomial& m, const Rational& order);

    long long grid_den() const { return grid_; }
    const Rational& order() const { return order_; }
    const std::map<long long, Rational>& terms() const { return c_; }

    bool is_zero() const { return c_.empty(); }

    /// Least exponent with a nonzero coefficient; order() for the zero series.
    Rational val() const;

    /// Coefficient at exponent e. Off-grid exponents below order give 0.
    /// Throws BeyondOrder for e >= order().
    Rational coefficient(const Rational& e) const;

    /// True when every coefficient is an integer.
    bool is_integral() const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator-() const;

    /// Multiplicative inverse. Throws ZeroLeadingTerm if zero to its order.
    QSeries inverse() const;

    /// q -> q^m for positive rational m; order maps to m*order and the grid
    /// is reduced to the minimal denominator.
    QSeries substitute_power(const Rational& m) const;

    /// q -> -q. Requires integer exponents (FractionalGrid otherwise).
    QSeries negate_q() const;

    /// Series restricted to exponents < new_order (new_order <= order()).
    QSeries truncated(const Rational& new_order) const;

    /// Multiplication by c*q^e (order shifts by e).
    QSeries shifted(const Monomial& m) const;
    QSeries shifted(const Rational& e) const { return shifted(Monomial(1, e)); }

    QSeries& scale(const Rational& c);
    QSeries pow_int(long long k) const; ///< k may be negative (via inverse)

    /// Representation with denominator lcm(grid_den, d); value unchanged.
    QSeries on_grid(long long d) const;

    /// Smallest grid able to carry the stored exponents and the order.
    QSeries reduce_grid() const;

    /// Mathematical equality: same order and same coefficients.
    bool operator==(const QSeries& o) const;

    struct Difference {
        Rational exp;
        Rational lhs;
        Rational rhs;
    };

    /// Least exponent below `bound` where a and b differ, if any.
    /// `bound` must not exceed either order.
    static std::optional<Difference> first_difference(const QSeries& a, const QSeries& b,
                                                      const Rational& bound);

    /// "c0*q^(e0) + c1*q^(e1) + ... (+O(q^N))", exponents ascending.
    std::string to_text() const;

    /// {grid_den, order:[num,den], terms:[[exp_num, coeff_num, coeff_den],...]}
    nlohmann::json to_json() const;
    static QSeries from_json(const nlohmann::json& j);

private:
    long long grid_ = 1;
    Rational order_{0};
    std::map<long long, Rational> c_;

    friend struct DenseSeries;

    /// First integer key not representable: k valid iff k < key_end().
    Integer key_end() const;
    void set_term(long long key, Rational v);
};

QSeries operator*(const Rational& c, const QSeries& s);

} // namespace qident

#endif
