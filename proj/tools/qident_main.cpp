// qident: expand q-series, list and verify the identity catalog, check
// Bailey pairs, and evaluate the multisum families.
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qident/catalog.hpp"
#include "qident/errors.hpp"
#include "qident/parser.hpp"
#include "qident/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct VerifyOptions {
    std::string id;
    bool all = false;
    long long order = 200;
    long long grid = 0; // 0 = auto
    std::string format = "text";
    unsigned jobs = 1;
    std::string out_path;
};

int run_verify(const VerifyOptions& opt) {
    qident::Catalog cat = qident::Catalog::load_default();
    qident::Verifier verifier(cat);
    std::vector<qident::VerificationReport> reports;
    if (opt.all) {
        reports = verifier.verify_all(qident::Rational(opt.order), std::max(1u, opt.jobs));
    } else {
        std::optional<long long> grid;
        if (opt.grid != 0) grid = opt.grid;
        reports.push_back(verifier.verify(opt.id, qident::Rational(opt.order), grid));
        if (reports.back().outcome == qident::VerificationReport::Outcome::Error &&
            reports.back().error.rfind("no catalog record", 0) == 0) {
            std::cerr << "error: " << reports.back().error << "\n";
            return kExitUsage;
        }
    }

    std::ostream* sink = &std::cout;
    std::ofstream file;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path);
        if (!file) {
            std::cerr << "error: cannot open output file '" << opt.out_path << "'\n";
            return kExitUsage;
        }
        sink = &file;
    }
    if (opt.format == "json") {
        qident::Verifier::write_jsonl(reports, *sink);
    } else {
        for (const auto& r : reports) *sink << r.to_text_line() << "\n";
    }
    qident::VerifySummary s = qident::Verifier::summarize(reports);
    if (opt.all) {
        std::ostream& log = opt.out_path.empty() ? std::cout : std::cerr;
        log << "verified " << s.total << " items: " << s.equal << " equal, " << s.discrepant
            << " discrepant, " << s.errors << " errors (worst " << s.worst_ms << " ms: "
            << s.worst_id << ")\n";
    }
    return s.all_ok() ? kExitOk : kExitVerifyFailed;
}

int run_list() {
    qident::Catalog cat = qident::Catalog::load_default();
    for (const auto& item : cat.list())
        std::cout << item.id << "\t(" << item.eq_tag << ")\t" << item.family << "\n";
    return kExitOk;
}

int run_expand(const std::string& text, long long order, const std::string& format) {
    qident::ExprPtr ast = qident::parse_expr_text(text);
    qident::QSeries s = qident::eval_expr(ast, qident::Rational(order));
    if (format == "json")
        std::cout << s.to_json().dump() << "\n";
    else
        std::cout << s.to_text() << "\n";
    return kExitOk;
}

int run_pairs(bool check, long long nmax, long long order) {
    if (!check) {
        for (const auto& label : qident::pair_labels()) std::cout << label << "\n";
        return kExitOk;
    }
    bool all_ok = true;
    for (const auto& label : qident::pair_labels()) {
        qident::PairCheck pc =
            qident::check_pair(qident::make_pair(label), nmax, qident::Rational(order));
        std::cout << label << ": " << (pc.pass ? "pass" : "FAIL");
        if (!pc.pass) {
            std::cout << " at n=" << pc.first_fail_n;
            if (pc.diff)
                std::cout << " (q^" << qident::rat_str(pc.diff->exp) << ": relation gives "
                          << qident::rat_str(pc.diff->lhs) << ", beta gives "
                          << qident::rat_str(pc.diff->rhs) << ")";
            all_ok = false;
        }
        std::cout << "\n";
    }
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int run_multisum(const std::string& family, long long k, long long i, long long order,
                 const std::string& format) {
    qident::QSeries sum = qident::multisum({family, k, i}, qident::Rational(order));
    qident::QSeries prod = qident::multisum_product(family, k, i, qident::Rational(order));
    auto diff = qident::QSeries::first_difference(sum, prod, qident::Rational(order));
    if (format == "json") {
        nlohmann::json j{{"family", family}, {"k", k},      {"i", i},
                         {"sum", sum.to_json()},            {"product", prod.to_json()},
                         {"equal", !diff.has_value()}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "sum     = " << sum.to_text() << "\n";
        std::cout << "product = " << prod.to_text() << "\n";
        std::cout << (diff ? "NOT EQUAL" : "equal below the order") << "\n";
    }
    return diff ? kExitVerifyFailed : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series engine for Rogers-Ramanujan type identities"};
    app.require_subcommand(1);

    // verify
    VerifyOptions vopt;
    CLI::App* verify = app.add_subcommand("verify", "verify catalog identities");
    verify->add_option("--id", vopt.id, "catalog id (or 5.2(k,i)-style multisum id)");
    verify->add_flag("--all", vopt.all, "verify every record plus the property suites");
    verify->add_option("--order", vopt.order, "truncation order")->default_val(200);
    verify->add_option("--grid", vopt.grid, "force exponent grid denominator (1 or 2)")
        ->check(CLI::IsMember({0, 1, 2}));
    verify->add_option("--format", vopt.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");
    verify->add_option("--jobs", vopt.jobs, "parallel verification tasks")->default_val(1);
    verify->add_option("--out", vopt.out_path, "write reports to a file (JSON-lines or text)");

    // list
    CLI::App* list = app.add_subcommand("list", "list catalog identities");

    // expand
    std::string expr_text;
    long long expand_order = 20;
    std::string expand_format = "text";
    CLI::App* expand = app.add_subcommand("expand", "expand an expression to a truncated series");
    expand->add_option("expr", expr_text, "expression, e.g. \"f(q,q^3)\"")->required();
    expand->add_option("--order", expand_order, "truncation order")->default_val(20);
    expand->add_option("--format", expand_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");

    // pairs
    bool pairs_check = false;
    long long pairs_nmax = 25;
    long long pairs_order = 100;
    CLI::App* pairs = app.add_subcommand("pairs", "Bailey pair table");
    pairs->add_flag("--check", pairs_check, "verify the defining relation for each pair");
    pairs->add_option("--nmax", pairs_nmax, "largest index checked")->default_val(25);
    pairs->add_option("--order", pairs_order, "truncation order")->default_val(100);

    // multisum
    std::string ms_family;
    long long ms_k = 1, ms_i = 1, ms_order = 60;
    std::string ms_format = "text";
    CLI::App* ms = app.add_subcommand("multisum", "evaluate a multisum family against its product");
    ms->add_option("--family", ms_family, "5.2 | 5.3 | 5.5 | 5.6 | 5.7 | 5.8 | 5.9 | 5.10")
        ->required()
        ->check(CLI::IsMember({"5.2", "5.3", "5.5", "5.6", "5.7", "5.8", "5.9", "5.10"}));
    ms->add_option("--k", ms_k, "depth")->required();
    ms->add_option("--i", ms_i, "shift parameter (5.2/5.3)");
    ms->add_option("--order", ms_order, "truncation order")->default_val(60);
    ms->add_option("--format", ms_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            if (vopt.all ? !vopt.id.empty() : vopt.id.empty()) {
                std::cerr << "error: verify needs exactly one of --id or --all\n";
                return kExitUsage;
            }
            return run_verify(vopt);
        }
        if (list->parsed()) return run_list();
        if (expand->parsed()) return run_expand(expr_text, expand_order, expand_format);
        if (pairs->parsed()) return run_pairs(pairs_check, pairs_nmax, pairs_order);
        if (ms->parsed()) return run_multisum(ms_family, ms_k, ms_i, ms_order, ms_format);
    } catch (const qident::SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qident::UnknownLabel& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qident::IndexOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qident::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    return kExitUsage;
}
