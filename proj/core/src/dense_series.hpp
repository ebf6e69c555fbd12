#ifndef QIDENT_DENSE_SERIES_HPP
#define QIDENT_DENSE_SERIES_HPP

#include <vector>

#include "qident/qseries.hpp"

namespace qident {

/// Internal dense workhorse behind the sparse QSeries. Evaluators convert
/// once, run factor-by-factor O(T) binomial multiplications/divisions, and
/// convert back at the boundary. v[i] is the coefficient of
/// q^((lo+i)/grid); entries cover [lo, kend).
struct DenseSeries {
    long long grid = 1;
    Rational order{0};
    long long lo = 0;
    std::vector<Rational> v;

    static long long key_end(const Rational& order, long long grid) {
        return to_ll(rat_ceil(order * grid));
    }

    long long kend() const { return key_end(order, grid); }

    static DenseSeries zero(const Rational& order, long long grid = 1) {
        DenseSeries d;
        d.grid = grid;
        d.order = order;
        d.lo = 0;
        long long n = d.kend();
        d.v.assign(n > 0 ? static_cast<size_t>(n) : 0, Rational(0));
        return d;
    }

    static DenseSeries one(const Rational& order, long long grid = 1) {
        DenseSeries d = zero(order, grid);
        d.add_term(0, Rational(1));
        return d;
    }

    static DenseSeries from(const QSeries& s) {
        DenseSeries d;
        d.grid = s.grid_den();
        d.order = s.order();
        long long end = d.kend();
        d.lo = s.terms().empty() ? 0 : s.terms().begin()->first;
        if (d.lo > 0) d.lo = 0;
        if (end <= d.lo) {
            d.v.clear();
            return d;
        }
        d.v.assign(static_cast<size_t>(end - d.lo), Rational(0));
        for (const auto& [k, c] : s.terms()) d.v[static_cast<size_t>(k - d.lo)] = c;
        return d;
    }

    QSeries to_qseries() const;

    void ensure_lo(long long new_lo) {
        if (new_lo >= lo) return;
        v.insert(v.begin(), static_cast<size_t>(lo - new_lo), Rational(0));
        lo = new_lo;
    }

    /// Exponent below which a factor (1 - c*q^e) can still contribute below
    /// the order; accounts for Laurent content (negative keys).
    Rational factor_cutoff() const {
        long long l = lo < 0 ? lo : 0;
        return order - Rational(l, grid);
    }

    /// Restores the invariant v.size() == max(0, kend - lo).
    void pad() {
        long long n = kend() - lo;
        if (n < 0) n = 0;
        v.resize(static_cast<size_t>(n), Rational(0));
    }

    void add_term(long long key, const Rational& c) {
        if (key >= kend()) return;
        ensure_lo(key);
        size_t i = static_cast<size_t>(key - lo);
        if (i >= v.size()) v.resize(i + 1, Rational(0));
        v[i] += c;
    }

    /// *= c * q^(j/grid); order shifts by j/grid.
    void mul_monomial(const Rational& c, long long j) {
        lo += j;
        order += Rational(j, grid);
        if (c != 1)
            for (auto& x : v)
                if (x != 0) x *= c;
    }

    /// *= (1 + b*q^(j/grid)), j > 0. Exact factor: order unchanged.
    void mul_binomial(const Rational& b, long long j) {
        pad();
        long long n = static_cast<long long>(v.size());
        for (long long i = n - 1; i >= j; --i)
            if (v[static_cast<size_t>(i - j)] != 0)
                v[static_cast<size_t>(i)] += b * v[static_cast<size_t>(i - j)];
    }

    /// /= (1 + b*q^(j/grid)), j > 0.
    void div_binomial(const Rational& b, long long j) {
        pad();
        long long n = static_cast<long long>(v.size());
        for (long long i = j; i < n; ++i)
            if (v[static_cast<size_t>(i - j)] != 0)
                v[static_cast<size_t>(i)] -= b * v[static_cast<size_t>(i - j)];
    }

    /// *= (1 - t*q^(j/grid) + q^(2j/grid)), j > 0.
    void mul_quad(const Rational& t, long long j) {
        pad();
        long long n = static_cast<long long>(v.size());
        for (long long i = n - 1; i >= j; --i) {
            Rational acc;
            bool touched = false;
            if (t != 0 && v[static_cast<size_t>(i - j)] != 0) {
                acc -= t * v[static_cast<size_t>(i - j)];
                touched = true;
            }
            if (i >= 2 * j && v[static_cast<size_t>(i - 2 * j)] != 0) {
                acc += v[static_cast<size_t>(i - 2 * j)];
                touched = true;
            }
            if (touched) v[static_cast<size_t>(i)] += acc;
        }
    }

    void scale(const Rational& c) {
        if (c == 1) return;
        for (auto& x : v)
            if (x != 0) x *= c;
    }

    void add_scaled(const DenseSeries& o, const Rational& c);
};

} // namespace qident

#endif
