#ifndef QIDENT_VERIFIER_HPP
#define QIDENT_VERIFIER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qident/catalog.hpp"

namespace qident {

struct VerificationReport {
    enum class Outcome { Equal, Discrepant, Error };

    std::string id;
    Rational order{0};
    long long grid_den = 1;
    Outcome outcome = Outcome::Equal;
    std::optional<QSeries::Difference> first_discrepancy;
    std::string route = "direct";
    long long ms = 0;
    std::string error; ///< set when outcome == Error

    bool ok() const { return outcome == Outcome::Equal; }

    /// {id, order, grid_den, outcome, first_discrepancy, route, ms[, error]}
    nlohmann::json to_json() const;
    std::string to_json_line() const;
    std::string to_text_line() const;
};

struct VerifySummary {
    size_t total = 0;
    size_t equal = 0;
    size_t discrepant = 0;
    size_t errors = 0;
    long long worst_ms = 0;
    std::string worst_id;

    bool all_ok() const { return discrepant == 0 && errors == 0; }
};

/// Expands catalog sides and runs the property suites. Pure computations;
/// safe to drive from any task-level scheduler.
class Verifier {
public:
    explicit Verifier(const Catalog& catalog) : cat_(&catalog) {}

    /// Direct side-by-side comparison for a catalog record, or for a dynamic
    /// multisum id of the form "5.2(k,i)", "5.9(k)", "ag(k,i)", "bressoud(k,i)".
    VerificationReport verify(const std::string& id, const Rational& order,
                              std::optional<long long> grid = std::nullopt) const;

    /// One report per record (direct), per applicable proof recipe, and per
    /// property-suite item; ordering is by catalog order then suite order,
    /// independent of completion order. Property suites run at
    /// min(order, 100) with fixed random seeds.
    std::vector<VerificationReport> verify_all(const Rational& order, unsigned jobs) const;

    static VerifySummary summarize(const std::vector<VerificationReport>& reports);
    static void write_jsonl(const std::vector<VerificationReport>& reports, std::ostream& out);

private:
    const Catalog* cat_;
};

} // namespace qident

#endif
