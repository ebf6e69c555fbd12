#include "qident/qseries.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qident/errors.hpp"
#include "dense_series.hpp"

namespace qident {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::inverse() const {
    if (coeff == 0) throw Error("Monomial::inverse: zero coefficient");
    return {Rational(1) / coeff, -exp};
}

Monomial Monomial::q() { return {Rational(1), Rational(1)}; }

static std::string exp_text(const Rational& e) {
    if (e == 1) return "q";
    if (is_integer(e) && e >= 0) return "q^" + rat_str(e);
    return "q^(" + rat_str(e) + ")";
}

std::string Monomial::to_text() const {
    if (exp == 0) return rat_str(coeff);
    std::string head;
    if (coeff == -1)
        head = "-";
    else if (coeff != 1)
        head = rat_str(coeff) + "*";
    return head + exp_text(exp);
}

// ---------------------------------------------------------------- helpers

namespace {

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

bool json_fits_ll(const Integer& n) {
    static const Integer lo = Integer(std::numeric_limits<long long>::min());
    static const Integer hi = Integer(std::numeric_limits<long long>::max());
    return n >= lo && n <= hi;
}

nlohmann::json int_to_json(const Integer& n) {
    if (json_fits_ll(n)) return static_cast<long long>(n);
    return n.str();
}

Integer int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw CatalogError("expected integer or integer string in series JSON");
}

} // namespace

// ---------------------------------------------------------------- QSeries

Integer QSeries::key_end() const { return rat_ceil(order_ * grid_); }

void QSeries::set_term(long long key, Rational v) {
    if (v == 0)
        c_.erase(key);
    else
        c_[key] = std::move(v);
}

QSeries QSeries::zero(const Rational& order, long long grid) {
    QSeries s;
    s.grid_ = grid;
    s.order_ = order;
    return s;
}

QSeries QSeries::one(const Rational& order) { return monomial(Rational(1), Rational(0), order); }

QSeries QSeries::monomial(const Rational& c, const Rational& e, const Rational& order) {
    QSeries s;
    s.order_ = order;
    if (c == 0) return s;
    long long d = to_ll(rat_den(e));
    s.grid_ = d;
    if (e < order) s.c_[to_ll(rat_num(e))] = c;
    return s;
}

QSeries QSeries::monomial(const Monomial& m, const Rational& order) {
    return monomial(m.coeff, m.exp, order);
}

Rational QSeries::val() const {
    if (c_.empty()) return order_;
    return Rational(c_.begin()->first, grid_);
}

Rational QSeries::coefficient(const Rational& e) const {
    if (e >= order_) throw BeyondOrder("coefficient at q^" + rat_str(e) + " requested, order is q^" + rat_str(order_));
    Rational key = e * grid_;
    if (!is_integer(key)) return Rational(0); // off the grid
    auto it = c_.find(to_ll(key));
    return it == c_.end() ? Rational(0) : it->second;
}

bool QSeries::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return is_integer(kv.second); });
}

QSeries QSeries::on_grid(long long d) const {
    long long g = lcm_ll(grid_, d);
    if (g == grid_) return *this;
    long long f = g / grid_;
    QSeries r;
    r.grid_ = g;
    r.order_ = order_;
    for (const auto& [k, c] : c_) r.c_[k * f] = c;
    return r;
}

QSeries QSeries::reduce_grid() const {
    long long g = grid_;
    for (const auto& [k, c] : c_) {
        g = std::gcd(g, k < 0 ? -k : k);
        if (g == 1) break;
    }
    if (c_.empty()) g = grid_;
    if (g <= 1 || g == 0) {
        if (c_.empty() && grid_ != 1) {
            QSeries r = *this;
            r.grid_ = 1;
            return r;
        }
        return *this;
    }
    QSeries r;
    r.grid_ = grid_ / g;
    r.order_ = order_;
    for (const auto& [k, c] : c_) r.c_[k / g] = c;
    return r;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    if (o.grid_ != grid_) {
        *this = on_grid(o.grid_);
        QSeries t = o.on_grid(grid_);
        return *this += t;
    }
    order_ = std::min(order_, o.order_);
    Integer end = key_end();
    // drop own terms past the new order
    for (auto it = c_.begin(); it != c_.end();) {
        if (Integer(it->first) >= end)
            it = c_.erase(it);
        else
            ++it;
    }
    for (const auto& [k, c] : o.c_) {
        if (Integer(k) >= end) continue;
        auto [it, inserted] = c_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += (-o); }

QSeries QSeries::operator+(const QSeries& o) const {
    QSeries r = *this;
    r += o;
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const {
    QSeries r = *this;
    r -= o;
    return r;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& [k, c] : r.c_) c = -c;
    return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
    if (o.grid_ != grid_) {
        long long g = lcm_ll(grid_, o.grid_);
        return on_grid(g) * o.on_grid(g);
    }
    // order = min(O_s + val(t), O_t + val(s)); val of a zero series is its order
    Rational oa = order_ + o.val();
    Rational ob = o.order_ + val();
    Rational new_order = std::min(oa, ob);
    QSeries r;
    r.grid_ = grid_;
    r.order_ = new_order;
    if (c_.empty() || o.c_.empty()) return r;
    Integer end = r.key_end();
    const QSeries* a = this;
    const QSeries* b = &o;
    if (a->c_.size() > b->c_.size()) std::swap(a, b);
    std::map<long long, Rational> acc;
    for (const auto& [ka, ca] : a->c_) {
        for (const auto& [kb, cb] : b->c_) {
            long long k = ka + kb;
            if (Integer(k) >= end) break; // keys ascend within b
            acc[k] += ca * cb;
        }
    }
    for (auto& [k, c] : acc)
        if (c != 0) r.c_.emplace(k, std::move(c));
    return r;
}

QSeries operator*(const Rational& c, const QSeries& s) {
    QSeries r = s;
    r.scale(c);
    return r;
}

QSeries& QSeries::scale(const Rational& c) {
    if (c == 0) {
        c_.clear();
        return *this;
    }
    if (c != 1)
        for (auto& [k, v] : c_) v *= c;
    return *this;
}

QSeries QSeries::shifted(const Monomial& m) const {
    if (m.coeff == 0) return QSeries::zero(order_ + m.exp, grid_);
    QSeries r;
    r.grid_ = grid_;
    Rational e = m.exp;
    long long d = to_ll(rat_den(e));
    if (grid_ % d != 0) {
        long long g = lcm_ll(grid_, d);
        return on_grid(g).shifted(m);
    }
    long long je = to_ll(e * grid_);
    r.order_ = order_ + e;
    for (const auto& [k, c] : c_) r.c_[k + je] = c * m.coeff;
    return r;
}

QSeries QSeries::truncated(const Rational& new_order) const {
    QSeries r;
    r.grid_ = grid_;
    r.order_ = std::min(order_, new_order);
    Integer end = r.key_end();
    for (const auto& [k, c] : c_) {
        if (Integer(k) >= end) break;
        r.c_[k] = c;
    }
    return r;
}

QSeries QSeries::inverse() const {
    if (c_.empty()) throw ZeroLeadingTerm("inverse of a series that is zero to its order q^" + rat_str(order_));
    long long k0 = c_.begin()->first;
    const Rational& c0 = c_.begin()->second;
    Rational v0(k0, grid_);
    Rational new_order = order_ - 2 * v0;
    QSeries r;
    r.grid_ = grid_;
    r.order_ = new_order;
    long long m_count = to_ll(key_end()) - k0; // valid relative coefficients
    if (m_count <= 0) return r;
    // dense relative input a[j] = coeff at key k0+j
    std::vector<Rational> a(static_cast<size_t>(m_count), Rational(0));
    for (const auto& [k, c] : c_) {
        long long j = k - k0;
        if (j < m_count) a[static_cast<size_t>(j)] = c;
    }
    std::vector<long long> support;
    for (long long j = 1; j < m_count; ++j)
        if (a[static_cast<size_t>(j)] != 0) support.push_back(j);
    std::vector<Rational> b(static_cast<size_t>(m_count), Rational(0));
    b[0] = Rational(1) / c0;
    for (long long m = 1; m < m_count; ++m) {
        Rational s(0);
        for (long long j : support) {
            if (j > m) break;
            if (b[static_cast<size_t>(m - j)] != 0) s += a[static_cast<size_t>(j)] * b[static_cast<size_t>(m - j)];
        }
        if (s != 0) b[static_cast<size_t>(m)] = -s / c0;
    }
    for (long long m = 0; m < m_count; ++m)
        if (b[static_cast<size_t>(m)] != 0) r.c_[m - k0] = std::move(b[static_cast<size_t>(m)]);
    return r;
}

QSeries QSeries::pow_int(long long k) const {
    if (k < 0) return inverse().pow_int(-k);
    if (k == 0) return QSeries::one(order_);
    QSeries base = *this;
    QSeries result;
    bool first = true;
    long long e = k;
    while (e > 0) {
        if (e & 1) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

QSeries QSeries::substitute_power(const Rational& m) const {
    if (m <= 0) throw DomainViolation("substitute_power requires a positive exponent factor");
    QSeries r;
    r.order_ = order_ * m;
    if (c_.empty()) {
        r.grid_ = 1;
        return r;
    }
    // new grid: lcm of denominators of k*m/grid over stored keys
    Integer g(1);
    for (const auto& [k, c] : c_) {
        Rational e = Rational(k) * m / grid_;
        Integer d = rat_den(e);
        g = boost::multiprecision::lcm(g, d);
    }
    r.grid_ = to_ll(g);
    for (const auto& [k, c] : c_) {
        Rational e = Rational(k) * m / grid_;
        r.c_[to_ll(e * r.grid_)] = c;
    }
    return r;
}

QSeries QSeries::negate_q() const {
    QSeries s = reduce_grid();
    if (s.grid_ != 1)
        throw FractionalGrid("negate_q requires integer exponents (grid_den = " + std::to_string(grid_) + ")");
    for (auto& [k, c] : s.c_)
        if (k % 2 != 0) c = -c;
    return s;
}

bool QSeries::operator==(const QSeries& o) const {
    if (order_ != o.order_) return false;
    if (grid_ == o.grid_) return c_ == o.c_;
    long long g = lcm_ll(grid_, o.grid_);
    return on_grid(g).c_ == o.on_grid(g).c_;
}

std::optional<QSeries::Difference> QSeries::first_difference(const QSeries& a, const QSeries& b,
                                                             const Rational& bound) {
    long long g = lcm_ll(a.grid_, b.grid_);
    QSeries x = a.on_grid(g), y = b.on_grid(g);
    Integer end = rat_ceil(bound * g);
    auto it = x.c_.begin();
    auto jt = y.c_.begin();
    while (it != x.c_.end() || jt != y.c_.end()) {
        long long kx = it != x.c_.end() ? it->first : std::numeric_limits<long long>::max();
        long long ky = jt != y.c_.end() ? jt->first : std::numeric_limits<long long>::max();
        long long k = std::min(kx, ky);
        if (Integer(k) >= end) break;
        Rational cx = kx == k ? it->second : Rational(0);
        Rational cy = ky == k ? jt->second : Rational(0);
        if (cx != cy) return Difference{Rational(k, g), cx, cy};
        if (kx == k) ++it;
        if (ky == k) ++jt;
    }
    return std::nullopt;
}

std::string QSeries::to_text() const {
    std::ostringstream out;
    if (c_.empty()) {
        out << "0";
    } else {
        bool first = true;
        for (const auto& [k, c] : c_) {
            Rational e(k, grid_);
            Rational mag = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (e == 0) {
                out << rat_str(mag);
            } else {
                if (mag != 1) out << rat_str(mag) << "*";
                out << exp_text(e);
            }
        }
    }
    out << " (+O(" << exp_text(order_) << "))";
    return out.str();
}

nlohmann::json QSeries::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : c_)
        terms.push_back({k, int_to_json(rat_num(c)), int_to_json(rat_den(c))});
    return nlohmann::json{{"grid_den", grid_},
                          {"order", {int_to_json(rat_num(order_)), int_to_json(rat_den(order_))}},
                          {"terms", std::move(terms)}};
}

QSeries QSeries::from_json(const nlohmann::json& j) {
    QSeries s;
    s.grid_ = j.at("grid_den").get<long long>();
    if (s.grid_ < 1) throw CatalogError("grid_den must be positive");
    const auto& po = j.at("order");
    s.order_ = Rational(int_from_json(po.at(0)), int_from_json(po.at(1)));
    Integer end = s.key_end();
    for (const auto& t : j.at("terms")) {
        long long k = t.at(0).get<long long>();
        Rational c(int_from_json(t.at(1)), int_from_json(t.at(2)));
        if (c == 0) throw CatalogError("zero coefficient breaks canonical form");
        if (Integer(k) >= end) throw CatalogError("term exponent at or past the order");
        s.c_[k] = c;
    }
    return s;
}

// ------------------------------------------------------------ DenseSeries

QSeries DenseSeries::to_qseries() const {
    QSeries s;
    s.grid_ = grid;
    s.order_ = order;
    long long end = kend();
    for (size_t i = 0; i < v.size(); ++i) {
        long long k = lo + static_cast<long long>(i);
        if (k >= end) break;
        if (v[i] != 0) s.c_.emplace(k, v[i]);
    }
    return s;
}

void DenseSeries::add_scaled(const DenseSeries& o, const Rational& c) {
    if (o.grid != grid) throw Error("DenseSeries::add_scaled: grid mismatch");
    order = std::min(order, o.order);
    pad();
    ensure_lo(o.lo);
    long long end = kend();
    for (size_t i = 0; i < o.v.size(); ++i) {
        long long k = o.lo + static_cast<long long>(i);
        if (k >= end) break;
        if (o.v[i] != 0) v[static_cast<size_t>(k - lo)] += c * o.v[i];
    }
}

} // namespace qident
