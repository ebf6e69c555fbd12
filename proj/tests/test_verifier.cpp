#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "qident/verifier.hpp"
#include "qident/errors.hpp"

using namespace qident;

namespace {

const Catalog& catalog() {
    static Catalog cat = Catalog::load_file(QIDENT_SOURCE_CATALOG);
    return cat;
}

std::string strip_ms(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        nlohmann::json j = r.to_json();
        j.erase("ms");
        out << j.dump() << "\n";
    }
    return out.str();
}

} // namespace

TEST_CASE("verify: equal records, dynamic multisum ids") {
    Verifier v(catalog());
    CHECK(v.verify("m18-1", 60).ok());
    CHECK(v.verify("rr1", 50).ok());
    CHECK(v.verify("remarkable", 60).ok());
    CHECK(v.verify("5.2(1,1)", 40).ok());
    CHECK(v.verify("ag(1,2)", 40).ok());
    CHECK(v.verify("5.9(1)", 40).ok());
    VerificationReport bad = v.verify("definitely-not-here", 10);
    CHECK(bad.outcome == VerificationReport::Outcome::Error);
}

TEST_CASE("verify: a false record is discrepant at the least exponent") {
    std::string path = std::string(QIDENT_TEST_DATA_DIR) + "/broken_catalog.json";
    Catalog broken = Catalog::load_file(path);
    Verifier v(broken);
    VerificationReport r = v.verify("broken-pentagon", 30);
    CHECK(r.outcome == VerificationReport::Outcome::Discrepant);
    REQUIRE(r.first_discrepancy);
    CHECK(r.first_discrepancy->exp == 1); // rhs carries an extra (1+q)
}

TEST_CASE("verify at order zero is vacuous") {
    Verifier v(catalog());
    CHECK(v.verify("m18-1", 0).ok());
    CHECK(v.verify("ft7", 0).ok());
}

TEST_CASE("monotonicity: equality at an order implies it below") {
    Verifier v(catalog());
    for (const char* id : {"m18-2", "m24s-4", "ft9"}) {
        REQUIRE(v.verify(id, 80).ok());
        CHECK(v.verify(id, 40).ok());
        CHECK(v.verify(id, 13).ok());
    }
}

TEST_CASE("forced grid is reflected in the report") {
    Verifier v(catalog());
    VerificationReport r = v.verify("rr1", 30, 2);
    CHECK(r.ok());
    CHECK(r.grid_den == 2);
}

TEST_CASE("determinism and parallel independence of verify_all") {
    Verifier v(catalog());
    auto a = v.verify_all(25, 1);
    auto b = v.verify_all(25, 1);
    auto c = v.verify_all(25, 3);
    CHECK(strip_ms(a) == strip_ms(b));
    CHECK(strip_ms(a) == strip_ms(c));
    VerifySummary s = Verifier::summarize(a);
    CHECK(s.all_ok());
    CHECK(s.total == a.size());
}

TEST_CASE("report JSON matches the published schema") {
    Verifier v(catalog());
    nlohmann::json j = v.verify("m18-1", 40).to_json();
    for (const char* key : {"id", "order", "grid_den", "outcome", "first_discrepancy", "route", "ms"})
        CHECK(j.contains(key));
    CHECK(j["outcome"] == "equal");
    CHECK(j["first_discrepancy"].is_null());
    CHECK(j["order"].is_array());

    std::string path = std::string(QIDENT_TEST_DATA_DIR) + "/broken_catalog.json";
    Catalog broken = Catalog::load_file(path);
    nlohmann::json d = Verifier(broken).verify("broken-pentagon", 30).to_json();
    CHECK(d["outcome"] == "discrepant");
    CHECK(d["first_discrepancy"]["exp"][0] == 1);
    CHECK(d["first_discrepancy"]["exp"][1] == 1);
    CHECK(d["first_discrepancy"]["lhs"].is_array());

    std::ostringstream lines;
    Verifier::write_jsonl({v.verify("rr1", 30)}, lines);
    CHECK(lines.str().find("\"route\":\"direct\"") != std::string::npos);
}
