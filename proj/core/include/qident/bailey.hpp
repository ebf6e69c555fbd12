#ifndef QIDENT_BAILEY_HPP
#define QIDENT_BAILEY_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qident/qseries.hpp"

namespace qident {

/// The four Bailey-lemma specializations used by the proof recipes.
enum class BaileyLemma {
    aPBL, ///< sum a^n q^(n^2) beta_n(a,q)           = 1/(aq;q)_inf * sum a^r q^(r^2) alpha_r
    aTBL, ///< sum a^n q^(n^2) (-q;q^2)_n beta_n(a,q^2) = (-aq;q^2)_inf/(aq^2;q^2)_inf * ...
    S2BL, ///< 1/(1-q^2) sum q^(n(n+1)) (-q^2;q^2)_n beta_n(q^2,q^2) = 1/phi(-q^2) * ...
    FBL,  ///< 1/(1-q^2) sum (-1)^n q^(n(n+1)) (q^2;q^2)_n beta_n(q^2,q^2) = sum (-1)^r ...
};

BaileyLemma lemma_from_string(const std::string& name); ///< "aPBL".."FBL"; UnknownLabel
std::string to_string(BaileyLemma lemma);

using SeqGen = std::function<QSeries(long long n, const Rational& order)>;

/// A Bailey pair (alpha_n, beta_n) relative to a = q^rel_a_exp at base
/// q^base_pow. Generators are stateless and safe to share.
struct BaileyPair {
    std::string label;
    Rational rel_a_exp{0}; ///< 0 for "relative to 1", base_pow for "relative to q"
    Rational base_pow{1};  ///< 1 for the table pairs, 2 after q -> q^2
    SeqGen alpha;
    SeqGen beta;
    /// For pairs whose defining relation holds for a one-parameter family of
    /// a values (the unit pair), the alpha sequence at a = q; empty otherwise.
    SeqGen alpha_at_q;

    /// The pair under q -> q^m (exponents scaled, rel/base powers scaled).
    BaileyPair substituted(long long m) const;
};

/// Known labels in catalog order: P1..P7, UNIT, BRESSOUD, J4, J5.
const std::vector<std::string>& pair_labels();

/// Builds a pair from the static tables. Throws UnknownLabel.
BaileyPair make_pair(const std::string& label);

struct PairCheck {
    std::string label;
    Rational order;
    bool pass = true;
    long long first_fail_n = -1;
    std::optional<QSeries::Difference> diff;
};

/// Expands the defining relation for each n <= n_max and compares it with
/// beta_n below the order. Reports the first failing n, if any.
PairCheck check_pair(const BaileyPair& p, long long n_max, const Rational& order);

/// alpha_n forced by beta via the triangular defining relation. Independent
/// of any stored alpha; used to pin closed forms entered from the literature.
QSeries alpha_from_beta(const BaileyPair& p, long long n, const Rational& order);

/// Both sides of the 6psi6 special case at (a, e) with the given n.
/// a must be a positive integer power of q (NonTerminating otherwise).
std::pair<QSeries, QSeries> six_psi_six(const Monomial& a, const Monomial& e, long long n,
                                        const Rational& order);

/// (beta-sum side, alpha-sum side) of the chosen lemma display, truncated.
/// S2BL/FBL require a pair relative to q (IncompatibleRelA otherwise); the
/// engine lands it on (q^2, q^2) via q -> q^2.
std::pair<QSeries, QSeries> apply_lemma(const BaileyPair& p, BaileyLemma lemma,
                                        const Rational& order);

/// Nested-sum evaluator for the displayed multisum families.
/// family is one of "5.2", "5.3", "5.5", "5.6", "5.7", "5.8", "5.9", "5.10";
/// i is meaningful for 5.2/5.3 only (1 <= i <= k+1).
struct MultisumSpec {
    std::string family;
    long long k = 1;
    long long i = 1;
};

QSeries multisum(const MultisumSpec& spec, const Rational& order);

/// (q^i, q^(2k+3-i), q^(2k+3); q^(2k+3))_inf / (q;q)_inf
QSeries ag_product(long long k, long long i, const Rational& order);

/// (q^i, q^(2k+2-i), q^(2k+2); q^(2k+2))_inf / (q;q)_inf
QSeries bressoud_product(long long k, long long i, const Rational& order);

/// Quintuple-product block attached to the level-l modules:
/// (q^i, q^(l+3-i), q^(l+3); q^(l+3))_inf (q^(l+3-2i), q^(l+2i+3); q^(2l+6))_inf / (q;q)_inf
/// with 1 <= i <= 1 + floor(l/2).
QSeries a22_product(long long level, long long i, const Rational& order);

/// The displayed product side paired with multisum(family, k, i).
QSeries multisum_product(const std::string& family, long long k, long long i,
                         const Rational& order);

} // namespace qident

#endif
