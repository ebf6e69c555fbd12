#include "qident/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qident/errors.hpp"
#include "qident/qproducts.hpp"

namespace qident {

namespace {

nlohmann::json rat_pair_json(const Rational& r) {
    auto one = [](const Integer& n) -> nlohmann::json {
        static const Integer lo = Integer(std::numeric_limits<long long>::min());
        static const Integer hi = Integer(std::numeric_limits<long long>::max());
        if (n >= lo && n <= hi) return static_cast<long long>(n);
        return n.str();
    };
    return nlohmann::json::array({one(rat_num(r)), one(rat_den(r))});
}

const char* outcome_name(VerificationReport::Outcome o) {
    switch (o) {
    case VerificationReport::Outcome::Equal: return "equal";
    case VerificationReport::Outcome::Discrepant: return "discrepant";
    case VerificationReport::Outcome::Error: return "error";
    }
    return "?";
}

} // namespace

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j{{"id", id},
                     {"order", rat_pair_json(order)},
                     {"grid_den", grid_den},
                     {"outcome", outcome_name(outcome)},
                     {"route", route},
                     {"ms", ms}};
    if (first_discrepancy) {
        j["first_discrepancy"] = nlohmann::json{{"exp", rat_pair_json(first_discrepancy->exp)},
                                                {"lhs", rat_pair_json(first_discrepancy->lhs)},
                                                {"rhs", rat_pair_json(first_discrepancy->rhs)}};
    } else {
        j["first_discrepancy"] = nullptr;
    }
    if (outcome == Outcome::Error) j["error"] = error;
    return j;
}

std::string VerificationReport::to_json_line() const { return to_json().dump(); }

std::string VerificationReport::to_text_line() const {
    std::ostringstream out;
    out << id << "  order=" << rat_str(order) << " grid=" << grid_den << " route=" << route
        << "  " << outcome_name(outcome);
    if (first_discrepancy)
        out << "  first diff at q^" << rat_str(first_discrepancy->exp) << ": lhs "
            << rat_str(first_discrepancy->lhs) << " vs rhs " << rat_str(first_discrepancy->rhs);
    if (!error.empty()) out << "  (" << error << ")";
    out << "  [" << ms << " ms]";
    return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

VerificationReport compare_series(std::string id, std::string route, const QSeries& lhs,
                                  const QSeries& rhs, const Rational& order) {
    VerificationReport r;
    r.id = std::move(id);
    r.route = std::move(route);
    r.order = order;
    r.grid_den = std::lcm(lhs.grid_den(), rhs.grid_den());
    Rational bound = std::min({order, lhs.order(), rhs.order()});
    auto diff = QSeries::first_difference(lhs, rhs, bound);
    if (diff) {
        r.outcome = VerificationReport::Outcome::Discrepant;
        r.first_discrepancy = diff;
    }
    return r;
}

/// wraps a computation, recording time and converting throws into reports
template <typename F>
VerificationReport timed_report(const std::string& id, const std::string& route,
                                const Rational& order, F&& f) {
    Clock::time_point t0 = Clock::now();
    VerificationReport r;
    try {
        r = f();
    } catch (const std::exception& e) {
        r = VerificationReport{};
        r.id = id;
        r.route = route;
        r.order = order;
        r.outcome = VerificationReport::Outcome::Error;
        r.error = e.what();
    }
    r.ms = elapsed_ms(t0);
    return r;
}

struct DynamicMultisum {
    std::string family;
    long long k = 0;
    long long i = 1;
};

/// "5.2(2,1)", "5.9(3)", "ag(1,2)", "bressoud(2,1)"
std::optional<DynamicMultisum> parse_dynamic_id(const std::string& id) {
    size_t open = id.find('(');
    if (open == std::string::npos || id.back() != ')') return std::nullopt;
    std::string name = id.substr(0, open);
    if (name == "ag") name = "5.2";
    if (name == "bressoud") name = "5.3";
    static const std::vector<std::string> fams = {"5.2", "5.3", "5.5", "5.6",
                                                  "5.7", "5.8", "5.9", "5.10"};
    if (std::find(fams.begin(), fams.end(), name) == fams.end()) return std::nullopt;
    std::string inner = id.substr(open + 1, id.size() - open - 2);
    DynamicMultisum d;
    d.family = name;
    size_t comma = inner.find(',');
    try {
        if (comma == std::string::npos) {
            d.k = std::stoll(inner);
        } else {
            d.k = std::stoll(inner.substr(0, comma));
            d.i = std::stoll(inner.substr(comma + 1));
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return d;
}

} // namespace

VerificationReport Verifier::verify(const std::string& id, const Rational& order,
                                    std::optional<long long> grid) const {
    return timed_report(id, "direct", order, [&]() {
        if (order <= 0) {
            // nothing is guaranteed below a nonpositive order: vacuously equal
            cat_->record(id); // still reject unknown ids
            VerificationReport r;
            r.id = id;
            r.order = order;
            if (grid) r.grid_den = *grid;
            return r;
        }
        if (!cat_->has(id)) {
            if (auto dyn = parse_dynamic_id(id)) {
                QSeries sum = multisum({dyn->family, dyn->k, dyn->i}, order);
                QSeries prod = multisum_product(dyn->family, dyn->k, dyn->i, order);
                return compare_series(id, "direct", sum, prod, order);
            }
        }
        QSeries lhs = cat_->build_side(id, true, order);
        QSeries rhs = cat_->build_side(id, false, order);
        if (grid) {
            lhs = lhs.on_grid(*grid);
            rhs = rhs.on_grid(*grid);
        }
        return compare_series(id, "direct", lhs, rhs, order);
    });
}

std::vector<VerificationReport> Verifier::verify_all(const Rational& order, unsigned jobs) const {
    struct Task {
        std::string id;
        std::string route;
        std::function<VerificationReport()> run;
    };
    std::vector<Task> tasks;
    const Catalog& cat = *cat_;
    Rational suite_order = std::min(order, Rational(100));

    // 1. every record, direct expansion of both sides
    for (const auto& rec : cat.records()) {
        tasks.push_back({rec.id, "direct", [this, id = rec.id, order]() {
                             return verify(id, order, std::nullopt);
                         }});
    }
    // 2. every applicable proof recipe
    for (const auto& rec : cat.records()) {
        if (rec.recipe.kind == Recipe::Kind::External) continue;
        tasks.push_back({rec.id, "recipe", [&cat, id = rec.id, order]() {
                             return timed_report(id, "recipe", order, [&]() {
                                 Catalog::RouteCheck rc = cat.recipe_check(id, order);
                                 VerificationReport r;
                                 r.id = id;
                                 r.route = rc.route;
                                 r.order = order;
                                 r.outcome = rc.pass ? VerificationReport::Outcome::Equal
                                                     : VerificationReport::Outcome::Discrepant;
                                 r.first_discrepancy = rc.diff;
                                 if (!rc.pass) r.error = rc.detail;
                                 return r;
                             });
                         }});
    }

    // 3. Jacobi triple product randomized property
    tasks.push_back({"prop:jtp", "suite", [suite_order]() {
        return timed_report("prop:jtp", "suite", suite_order, [&]() {
            std::mt19937 rng(948101);
            std::uniform_int_distribution<int> halves(1, 20);
            std::uniform_int_distribution<int> signs(0, 1);
            for (int it = 0; it < 50; ++it) {
                Monomial a(signs(rng) ? 1 : -1, Rational(halves(rng), 2));
                Monomial b(signs(rng) ? 1 : -1, Rational(halves(rng), 2));
                QSeries lhs = theta_f(a, b, suite_order);
                QSeries rhs = jacobi_triple_product(a, b, suite_order);
                VerificationReport r = compare_series("prop:jtp", "suite", lhs, rhs, suite_order);
                if (!r.ok()) {
                    r.error = "failed for a=" + a.to_text() + ", b=" + b.to_text();
                    return r;
                }
            }
            VerificationReport ok;
            ok.id = "prop:jtp";
            ok.route = "suite";
            ok.order = suite_order;
            return ok;
        });
    }});

    // 4. quintuple product property: 25 random pairs plus the proof instances
    tasks.push_back({"prop:qpi", "suite", [suite_order]() {
        return timed_report("prop:qpi", "suite", suite_order, [&]() {
            std::vector<std::pair<Monomial, Monomial>> cases = {
                {Monomial(1, Rational(27, 2)), Monomial(1, Rational(3, 2))},
                {Monomial(1, 9), Monomial(-1, 1)},
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
            for (const auto& [w, x] : cases) {
                QuintupleForms forms = quintuple_product(w, x, suite_order);
                VerificationReport r = compare_series("prop:qpi", "suite", forms.theta_sum,
                                                      forms.quotient, suite_order);
                if (r.ok())
                    r = compare_series("prop:qpi", "suite", forms.theta_sum, forms.product,
                                       suite_order);
                if (!r.ok()) {
                    r.error = "failed for w=" + w.to_text() + ", x=" + x.to_text();
                    return r;
                }
            }
            VerificationReport ok;
            ok.id = "prop:qpi";
            ok.route = "suite";
            ok.order = suite_order;
            return ok;
        });
    }});

    // 5. defining relation for every Bailey pair
    for (const std::string& label : pair_labels()) {
        std::string id = "pair:" + label;
        tasks.push_back({id, "suite", [id, label, suite_order]() {
            return timed_report(id, "suite", suite_order, [&]() {
                PairCheck pc = check_pair(make_pair(label), 25, suite_order);
                VerificationReport r;
                r.id = id;
                r.route = "suite";
                r.order = suite_order;
                if (!pc.pass) {
                    r.outcome = VerificationReport::Outcome::Discrepant;
                    r.first_discrepancy = pc.diff;
                    r.error = "defining relation fails at n=" + std::to_string(pc.first_fail_n);
                }
                return r;
            });
        }});
    }

    // 6. 6psi6 rows of the pair table
    {
        const std::vector<std::pair<Monomial, Monomial>> rows = {
            {Monomial(1, 1), Monomial(-1, 2)},
            {Monomial(1, 2), Monomial(-1, 1)},
            {Monomial(1, 2), Monomial(-1, Rational(5, 2))},
            {Monomial(1, 1), Monomial(1, 2)},
        };
        for (const auto& [a, e] : rows) {
            std::string id = "6psi6(" + a.to_text() + "," + e.to_text() + ")";
            tasks.push_back({id, "suite", [id, a = a, e = e, suite_order]() {
                return timed_report(id, "suite", suite_order, [&]() {
                    for (long long n = 0; n <= 15; ++n) {
                        auto [lhs, rhs] = six_psi_six(a, e, n, suite_order);
                        VerificationReport r = compare_series(id, "suite", lhs, rhs, suite_order);
                        if (!r.ok()) {
                            r.error = "sides differ at n=" + std::to_string(n);
                            return r;
                        }
                    }
                    VerificationReport ok;
                    ok.id = id;
                    ok.route = "suite";
                    ok.order = suite_order;
                    return ok;
                });
            }});
        }
    }

    // 7. multisum families for k <= 3
    {
        auto add_ms = [&](const std::string& fam, long long k, long long i, bool has_i) {
            std::string id = has_i ? "ms:" + fam + "(" + std::to_string(k) + "," +
                                         std::to_string(i) + ")"
                                   : "ms:" + fam + "(" + std::to_string(k) + ")";
            tasks.push_back({id, "suite", [id, fam, k, i, suite_order]() {
                return timed_report(id, "suite", suite_order, [&]() {
                    QSeries sum = multisum({fam, k, i}, suite_order);
                    QSeries prod = multisum_product(fam, k, i, suite_order);
                    return compare_series(id, "suite", sum, prod, suite_order);
                });
            }});
        };
        for (long long k = 1; k <= 3; ++k)
            for (long long i = 1; i <= k + 1; ++i) add_ms("5.2", k, i, true);
        for (long long k = 1; k <= 3; ++k)
            for (long long i = 1; i <= k + 1; ++i) add_ms("5.3", k, i, true);
        for (const std::string fam : {"5.5", "5.6", "5.7", "5.8", "5.9", "5.10"})
            for (long long k = 1; k <= 3; ++k) add_ms(fam, k, 1, false);
    }

    // 8. cross references into the catalog
    if (cat.has("m18-2")) {
        tasks.push_back({"xref:5.9(1)~m18-2", "suite", [&cat, suite_order]() {
            return timed_report("xref:5.9(1)~m18-2", "suite", suite_order, [&]() {
                QSeries sum = multisum({"5.9", 1, 1}, suite_order);
                QSeries side = cat.build_side("m18-2", true, suite_order);
                return compare_series("xref:5.9(1)~m18-2", "suite", sum, side, suite_order);
            });
        }});
    }
    for (long long i = 1; i <= 4; ++i) {
        std::string rec_id = "m18-" + std::to_string(i);
        if (!cat.has(rec_id)) continue;
        std::string id = "xref:a22(6," + std::to_string(i) + ")~" + rec_id;
        tasks.push_back({id, "suite", [&cat, id, i, rec_id, suite_order]() {
            return timed_report(id, "suite", suite_order, [&]() {
                QSeries prod = a22_product(6, i, suite_order);
                QSeries side = cat.build_side(rec_id, false, suite_order);
                return compare_series(id, "suite", prod, side, suite_order);
            });
        }});
    }

    // run, preserving task order in the output
    std::vector<VerificationReport> reports(tasks.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) reports[i] = tasks[i].run();
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                reports[i] = tasks[i].run();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return reports;
}

VerifySummary Verifier::summarize(const std::vector<VerificationReport>& reports) {
    VerifySummary s;
    s.total = reports.size();
    for (const auto& r : reports) {
        switch (r.outcome) {
        case VerificationReport::Outcome::Equal: ++s.equal; break;
        case VerificationReport::Outcome::Discrepant: ++s.discrepant; break;
        case VerificationReport::Outcome::Error: ++s.errors; break;
        }
        if (r.ms > s.worst_ms) {
            s.worst_ms = r.ms;
            s.worst_id = r.id;
        }
    }
    return s;
}

void Verifier::write_jsonl(const std::vector<VerificationReport>& reports, std::ostream& out) {
    for (const auto& r : reports) out << r.to_json_line() << "\n";
}

} // namespace qident
