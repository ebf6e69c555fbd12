#ifndef QIDENT_CATALOG_HPP
#define QIDENT_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qident/bailey.hpp"
#include "qident/expr.hpp"

namespace qident {

/// Affine post-step tying a raw proof-route output L to the displayed
/// identity side C: C = (c0 + sign*L) / den. Most routes are the identity
/// transform; the exceptions come from (1-q)-style normalizations and the
/// n -> n+1 reindexings in the false-theta rows.
struct RouteTransform {
    enum class Den { One, Three, OneMinusQ, OneMinusQSquared, QSquared };
    Rational c0{0};
    bool c0_inv_one_minus_q2 = false; ///< c0 is the series 1/(1-q^2)
    int sign = 1;
    Den den = Den::One;

    bool is_identity() const {
        return c0 == 0 && !c0_inv_one_minus_q2 && sign == 1 && den == Den::One;
    }
    QSeries apply(const QSeries& raw) const;
    /// extra order headroom the raw sides need so that apply() reaches `order`
    Rational order_margin() const { return den == Den::QSquared ? Rational(2) : Rational(0); }
};

struct Recipe {
    enum class Kind { External, Linear, PairLemma, QGauss, QBailey };
    Kind kind = Kind::External;
    std::string note; ///< External: provenance remark

    struct LinTerm {
        Monomial coeff;
        std::string ref;
    };
    std::vector<LinTerm> terms; ///< Linear: target = sum coeff * ref

    std::string pair;                       ///< PairLemma
    BaileyLemma lemma = BaileyLemma::aPBL;  ///< PairLemma
    int root = 1;                           ///< QGauss/QBailey: 1 = e^(i pi/3), 2 = e^(2 i pi/3)
    bool times_q2 = false;                  ///< QGauss: arguments carry q^2
    Monomial c{1, 0};                       ///< QBailey: the c parameter
    RouteTransform transform;               ///< PairLemma/QGauss/QBailey
};

struct IdentityRecord {
    std::string id;
    std::string eq_tag; ///< display tag, e.g. "1.3" or "2.2"
    std::string family;
    ExprPtr lhs;
    ExprPtr rhs;
    Recipe recipe;
};

/// Both sides of the q-Gauss sum specialized at conjugate roots
/// (a, b) = (r q^s, conj(r) q^s), r = e^(i pi/3) or e^(2 i pi/3), s in {0, 2}.
/// Realized over the rationals through paired-conjugate quad factors.
std::pair<QSeries, QSeries> specialize_qgauss(int root, bool times_q2, const Rational& order);

/// Both sides of the q-Bailey sum at b = e^(i pi/3) or e^(2 i pi/3) with a
/// real monomial c. Throws UnsupportedSpecialization outside this set.
std::pair<QSeries, QSeries> specialize_qbailey(int root, const Monomial& c, const Rational& order);

class Catalog {
public:
    /// QIDENT_CATALOG env override, else the embedded copy of data/catalog.json.
    static Catalog load_default();
    static Catalog load_file(const std::string& path);
    static Catalog load_text(const std::string& json_text);

    std::string save_text() const; ///< canonical JSON round-trippable by load_text

    const std::vector<IdentityRecord>& records() const { return records_; }
    bool has(const std::string& id) const;
    const IdentityRecord& record(const std::string& id) const; ///< UnknownLabel

    struct Listing {
        std::string id;
        std::string eq_tag;
        std::string family;
    };
    std::vector<Listing> list() const; ///< stable order by display tag

    /// Expanded truncated series of one side; asserts integer coefficients
    /// (NonIntegralResult otherwise).
    QSeries build_side(const std::string& id, bool lhs_side, const Rational& order) const;

    struct RouteCheck {
        std::string id;
        std::string route; ///< "linear" | "lemma" | "qgauss" | "qbailey" | "external"
        bool applicable = false;
        bool pass = false;
        std::string detail;
        std::optional<QSeries::Difference> diff;
    };

    /// Verifies the record's proof recipe as a series identity: linear rows
    /// combine sibling records on both sides; pair+lemma rows reproduce both
    /// sides through apply_lemma; specialization rows through the conjugate
    /// root sums. External rows report applicable = false.
    RouteCheck recipe_check(const std::string& id, const Rational& order) const;

private:
    std::vector<IdentityRecord> records_;
    std::map<std::string, size_t> index_;
    QSeries combine_linear(const Recipe& recipe, bool lhs_side, const Rational& order) const;
};

} // namespace qident

#endif
