// Acceptance suite: runs every acceptance criterion at its stated order and
// prints one pass/fail line per criterion. Exit status 0 iff all pass.
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "qident/bailey.hpp"
#include "qident/catalog.hpp"
#include "qident/parser.hpp"
#include "qident/qproducts.hpp"
#include "qident/verifier.hpp"
#include "oracles.hpp"

using namespace qident;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << number << ". " << name;
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
    if (!pass) ++failures;
}

bool equal_below(const QSeries& a, const QSeries& b, const Rational& bound, std::string& why) {
    auto diff = QSeries::first_difference(a, b, bound);
    if (!diff) return true;
    why = "first difference at q^" + rat_str(diff->exp) + ": " + rat_str(diff->lhs) + " vs " +
          rat_str(diff->rhs);
    return false;
}

const Catalog& catalog() {
    static Catalog cat = Catalog::load_default();
    return cat;
}

// 1. every displayed identity of the first section, order 200
void criterion_identity_suite() {
    std::string why;
    size_t checked = 0;
    for (const auto& rec : catalog().records()) {
        if (rec.eq_tag.rfind("1.", 0) != 0) continue;
        QSeries lhs = catalog().build_side(rec.id, true, 200);
        QSeries rhs = catalog().build_side(rec.id, false, 200);
        if (!equal_below(lhs, rhs, 200, why)) {
            report(1, "identity suite (1.1)-(1.40) at order 200", false, rec.id + ": " + why);
            return;
        }
        ++checked;
    }
    report(1, "identity suite (1.1)-(1.40) at order 200", checked == 40,
           std::to_string(checked) + " identities equal");
}

void criterion_remarkable() {
    std::string why;
    QSeries lhs = catalog().build_side("remarkable", true, 200);
    QSeries rhs = catalog().build_side("remarkable", false, 200);
    bool ok = equal_below(lhs, rhs, 200, why);
    report(2, "remarkable identity (2.2) at order 200", ok, why);
}

void criterion_jtp() {
    std::mt19937 rng(948101);
    std::uniform_int_distribution<int> halves(1, 20);
    std::uniform_int_distribution<int> signs(0, 1);
    std::string why;
    for (int it = 0; it < 50; ++it) {
        Monomial a(signs(rng) ? 1 : -1, Rational(halves(rng), 2));
        Monomial b(signs(rng) ? 1 : -1, Rational(halves(rng), 2));
        if (!equal_below(theta_f(a, b, 100), jacobi_triple_product(a, b, 100), 100, why)) {
            report(3, "Jacobi triple product, 50 random pairs below order 100", false,
                   "a=" + a.to_text() + " b=" + b.to_text() + ": " + why);
            return;
        }
    }
    report(3, "Jacobi triple product, 50 random pairs below order 100", true, "0 failures");
}

void criterion_qpi() {
    std::vector<std::pair<Monomial, Monomial>> cases = {
        {Monomial(1, Rational(27, 2)), Monomial(1, Rational(3, 2))}, // half-integer grid
        {Monomial(1, 9), Monomial(-1, 1)},                           // first mod-18 proof
    };
    std::mt19937 rng(361501);
    std::uniform_int_distribution<int> xh(1, 10);
    std::uniform_int_distribution<int> wh(1, 20);
    std::uniform_int_distribution<int> signs(0, 1);
    while (cases.size() < 27) {
        Rational ex(xh(rng), 2);
        Rational ew = 2 * ex + Rational(wh(rng), 2);
        cases.emplace_back(Monomial(1, ew), Monomial(signs(rng) ? 1 : -1, ex));
    }
    std::string why;
    for (const auto& [w, x] : cases) {
        QuintupleForms f = quintuple_product(w, x, 100);
        if (!equal_below(f.theta_sum, f.quotient, 100, why) ||
            !equal_below(f.theta_sum, f.product, 100, why)) {
            report(4, "quintuple product, 25 random pairs plus both proof instances", false,
                   "w=" + w.to_text() + " x=" + x.to_text() + ": " + why);
            return;
        }
    }
    report(4, "quintuple product, 25 random pairs plus both proof instances", true, "0 failures");
}

void criterion_pairs() {
    for (const auto& label : pair_labels()) {
        PairCheck pc = check_pair(make_pair(label), 25, 100);
        if (!pc.pass) {
            report(5, "Bailey pairs n <= 25 at order 100; 6psi6 rows n <= 15", false,
                   "pair " + label + " fails at n=" + std::to_string(pc.first_fail_n));
            return;
        }
    }
    const std::pair<Monomial, Monomial> rows[] = {
        {Monomial(1, 1), Monomial(-1, 2)},
        {Monomial(1, 2), Monomial(-1, 1)},
        {Monomial(1, 2), Monomial(-1, Rational(5, 2))},
        {Monomial(1, 1), Monomial(1, 2)},
    };
    std::string why;
    for (const auto& [a, e] : rows)
        for (long long n = 0; n <= 15; ++n) {
            auto [lhs, rhs] = six_psi_six(a, e, n, 100);
            if (!equal_below(lhs, rhs, 100, why)) {
                report(5, "Bailey pairs n <= 25 at order 100; 6psi6 rows n <= 15", false,
                       "6psi6(" + a.to_text() + "," + e.to_text() + ") n=" + std::to_string(n) +
                           ": " + why);
                return;
            }
        }
    report(5, "Bailey pairs n <= 25 at order 100; 6psi6 rows n <= 15", true,
           "11 pairs, 4 bilateral rows");
}

void criterion_lemma_routes() {
    size_t lemma_rows = 0, linear_rows = 0;
    for (const auto& rec : catalog().records()) {
        if (rec.recipe.kind == Recipe::Kind::PairLemma) {
            auto rc = catalog().recipe_check(rec.id, 200);
            if (!rc.pass) {
                report(6, "proof recipes reproduce both sides at order 200", false,
                       rec.id + ": " + rc.detail);
                return;
            }
            ++lemma_rows;
        } else if (rec.recipe.kind == Recipe::Kind::Linear) {
            auto rc = catalog().recipe_check(rec.id, 200);
            if (!rc.pass) {
                report(6, "proof recipes reproduce both sides at order 200", false,
                       rec.id + ": " + rc.detail);
                return;
            }
            ++linear_rows;
        }
    }
    report(6, "proof recipes reproduce both sides at order 200",
           lemma_rows == 16 && linear_rows == 7,
           std::to_string(lemma_rows) + " pair+lemma rows, " + std::to_string(linear_rows) +
               " linear rows");
}

void criterion_specializations() {
    size_t rows = 0;
    for (const auto& rec : catalog().records()) {
        if (rec.recipe.kind != Recipe::Kind::QGauss && rec.recipe.kind != Recipe::Kind::QBailey)
            continue;
        std::pair<QSeries, QSeries> raw =
            rec.recipe.kind == Recipe::Kind::QGauss
                ? specialize_qgauss(rec.recipe.root, rec.recipe.times_q2, 200)
                : specialize_qbailey(rec.recipe.root, rec.recipe.c, 200);
        std::string why;
        if (!raw.first.is_integral() || !raw.second.is_integral()) {
            report(7, "conjugate-root specializations at order 200", false,
                   rec.id + ": non-integer series");
            return;
        }
        if (!equal_below(raw.first, raw.second, 200, why)) {
            report(7, "conjugate-root specializations at order 200", false, rec.id + ": " + why);
            return;
        }
        auto rc = catalog().recipe_check(rec.id, 200);
        if (!rc.pass) {
            report(7, "conjugate-root specializations at order 200", false,
                   rec.id + " does not match its record: " + rc.detail);
            return;
        }
        ++rows;
    }
    report(7, "conjugate-root specializations at order 200", rows == 8,
           std::to_string(rows) + " rows, integer series, both sides matched");
}

void criterion_multisums() {
    std::string why;
    auto check_family = [&](const std::string& fam, long long k, long long i) {
        QSeries sum = multisum({fam, k, i}, 100);
        QSeries prod = multisum_product(fam, k, i, 100);
        if (!equal_below(sum, prod, 100, why)) {
            report(8, "multisum families below order 100", false,
                   fam + " k=" + std::to_string(k) + " i=" + std::to_string(i) + ": " + why);
            return false;
        }
        return true;
    };
    for (long long k = 1; k <= 3; ++k)
        for (long long i = 1; i <= k + 1; ++i)
            if (!check_family("5.2", k, i) || !check_family("5.3", k, i)) return;
    for (const std::string fam : {"5.5", "5.6", "5.7", "5.8", "5.9", "5.10"})
        for (long long k = 1; k <= 3; ++k)
            if (!check_family(fam, k, 1)) return;

    QSeries s59 = multisum({"5.9", 1, 1}, 100);
    QSeries m18_2_sum = catalog().build_side("m18-2", true, 100);
    if (!equal_below(s59, m18_2_sum, 100, why)) {
        report(8, "multisum families below order 100", false, "5.9(1) vs mod-18 sum side: " + why);
        return;
    }
    for (long long i = 1; i <= 4; ++i) {
        QSeries prod = a22_product(6, i, 100);
        QSeries rhs = catalog().build_side("m18-" + std::to_string(i), false, 100);
        if (!equal_below(prod, rhs, 100, why)) {
            report(8, "multisum families below order 100", false,
                   "a22(6," + std::to_string(i) + "): " + why);
            return;
        }
    }
    report(8, "multisum families below order 100", true,
           "5.2/5.3 all i, 5.5-5.10, k <= 3; level-6 cross references");
}

void criterion_oracles() {
    QSeries inv_euler = euler_inf(41).inverse();
    for (int n = 0; n < 40; ++n)
        if (inv_euler.coefficient(n) != oracles::partition_count(n)) {
            report(9, "brute-force partition oracles", false, "p(" + std::to_string(n) + ")");
            return;
        }
    QSeries rr1 = catalog().build_side("rr1", true, 30);
    for (int n = 0; n < 30; ++n)
        if (rr1.coefficient(n) != oracles::partition_count_gap2(n)) {
            report(9, "brute-force partition oracles", false,
                   "gap-2 count at n=" + std::to_string(n));
            return;
        }
    report(9, "brute-force partition oracles", true, "p(n) n<40; gap-2 partitions n<30");
}

bool engine_ring_laws() {
    std::mt19937 rng(5711);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<long long> expo(0, 12);
    auto rand_series = [&](bool unit) {
        QSeries s = QSeries::zero(24);
        if (unit) s += QSeries::one(24);
        for (int i = 0; i < 8; ++i) {
            int c = coeff(rng);
            if (c) s += QSeries::monomial(c, expo(rng), 24);
        }
        return s;
    };
    for (int it = 0; it < 50; ++it) {
        QSeries s = rand_series(false), t = rand_series(false), u = rand_series(false);
        QSeries l = (s * t) * u, r = s * (t * u);
        if (QSeries::first_difference(l, r, std::min(l.order(), r.order()))) return false;
        QSeries d1 = s * (t + u), d2 = s * t + s * u;
        if (QSeries::first_difference(d1, d2, std::min(d1.order(), d2.order()))) return false;
        QSeries v = rand_series(true);
        QSeries p = v * v.inverse();
        if (QSeries::first_difference(p, QSeries::one(p.order()), p.order())) return false;
        QSeries h1 = (s * t).substitute_power(2);
        QSeries h2 = s.substitute_power(2) * t.substitute_power(2);
        if (QSeries::first_difference(h1, h2, std::min(h1.order(), h2.order()))) return false;
    }
    return true;
}

bool verification_determinism() {
    Verifier v(catalog());
    auto strip = [](const std::vector<VerificationReport>& rs) {
        std::ostringstream out;
        for (const auto& r : rs) {
            nlohmann::json j = r.to_json();
            j.erase("ms");
            out << j.dump() << "\n";
        }
        return out.str();
    };
    auto a = v.verify_all(20, 1);
    auto b = v.verify_all(20, 2);
    if (strip(a) != strip(b)) return false;
    if (!Verifier::summarize(a).all_ok()) return false;
    // monotonicity
    for (const char* id : {"m18-1", "ft7"}) {
        if (!v.verify(id, 120).ok()) return false;
        if (!v.verify(id, 60).ok()) return false;
    }
    return true;
}

bool grammar_round_trip() {
    for (const auto& rec : catalog().records()) {
        for (const ExprPtr& side : {rec.lhs, rec.rhs}) {
            if (contains_template(*side)) continue;
            if (!expr_equal(*parse_expr_text(render_expr(side)), *side)) return false;
        }
    }
    return true;
}

bool cli_exit_codes(std::string& detail) {
    const char* cli = std::getenv("QIDENT_CLI");
    if (!cli || !*cli) {
        detail = "CLI path not provided; exit-code contract covered by the cli_* ctest cases";
        return true;
    }
    auto run = [&](const std::string& args) {
        int rc = std::system((std::string(cli) + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(rc);
    };
    if (run("verify --id rr1 --order 40") != 0) {
        detail = "expected exit 0 for a passing verification";
        return false;
    }
    if (run("expand \"(q;q_3\" --order 5") != 2) {
        detail = "expected exit 2 for a syntax error";
        return false;
    }
    if (run("verify --id no-such-id --order 5") != 2) {
        detail = "expected exit 2 for an unknown id";
        return false;
    }
    detail = "exit codes 0/2 verified against the binary";
    return true;
}

void criterion_engine_properties() {
    if (!engine_ring_laws()) {
        report(10, "engine properties", false, "ring law / inverse / substitution failure");
        return;
    }
    if (!verification_determinism()) {
        report(10, "engine properties", false, "determinism or monotonicity failure");
        return;
    }
    if (!grammar_round_trip()) {
        report(10, "engine properties", false, "grammar round trip failure");
        return;
    }
    std::string detail;
    if (!cli_exit_codes(detail)) {
        report(10, "engine properties", false, detail);
        return;
    }
    report(10, "engine properties", true,
           "ring laws, inverse, substitution, determinism, monotonicity, round trip; " + detail);
}

} // namespace

int main() {
    criterion_identity_suite();
    criterion_remarkable();
    criterion_jtp();
    criterion_qpi();
    criterion_pairs();
    criterion_lemma_routes();
    criterion_specializations();
    criterion_multisums();
    criterion_oracles();
    criterion_engine_properties();
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
