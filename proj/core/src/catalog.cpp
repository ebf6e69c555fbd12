#include "qident/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qident/errors.hpp"
#include "qident/qproducts.hpp"
#include "dense_series.hpp"
#include "series_factors.hpp"

namespace qident {

namespace detail {
extern const char* const embedded_catalog_json;
}

// --------------------------------------------------------- transformations

QSeries RouteTransform::apply(const QSeries& raw) const {
    QSeries out = Rational(sign) * raw;
    if (c0_inv_one_minus_q2) {
        DenseSeries d = DenseSeries::one(out.order(), out.grid_den());
        div_poch_factor(d, Rational(1), Rational(2));
        out += d.to_qseries();
    } else if (c0 != 0) {
        out += QSeries::monomial(c0, Rational(0), out.order());
    }
    switch (den) {
    case Den::One: break;
    case Den::Three: out.scale(Rational(1, 3)); break;
    case Den::OneMinusQ: {
        DenseSeries d = DenseSeries::from(out);
        div_poch_factor(d, Rational(1), Rational(1));
        out = d.to_qseries();
        break;
    }
    case Den::OneMinusQSquared: {
        DenseSeries d = DenseSeries::from(out);
        div_poch_factor(d, Rational(1), Rational(2));
        out = d.to_qseries();
        break;
    }
    case Den::QSquared: out = out.shifted(Rational(-2)); break;
    }
    return out;
}

// ----------------------------------------------------------- specializations

namespace {

int quad_t_for_root(int root) {
    if (root == 1) return 1;  // b + conj(b) = 2cos(pi/3) = 1
    if (root == 2) return -1; // 2cos(2pi/3) = -1
    throw UnsupportedSpecialization("supported conjugate roots: e^(i pi/3) (1), e^(2 i pi/3) (2)");
}

} // namespace

std::pair<QSeries, QSeries> specialize_qgauss(int root, bool times_q2, const Rational& order) {
    int t = quad_t_for_root(root);
    long long s = times_q2 ? 2 : 0;
    // sum side: sum_n q^(n(n+1)) (a;q^2)_n (b;q^2)_n / ((q^2;q^2)_n (abq^2;q^4)_n)
    DenseSeries acc = DenseSeries::zero(order, 1);
    for (long long n = 0; Rational(n) * (n + 1) < order; ++n) {
        Rational e = Rational(n) * (n + 1);
        DenseSeries term = DenseSeries::one(order - e, 1);
        for (long long j = 0; j < n; ++j) {
            long long ej = s + 2 * j;
            if (ej == 0)
                term.scale(Rational(2 - t));
            else
                term.mul_quad(Rational(t), ej);
        }
        div_poch_finite(term, Monomial(Rational(1), Rational(2)), 2, n);
        div_poch_finite(term, Monomial(Rational(1), Rational(2 * s + 2)), 4, n);
        term.mul_monomial(Rational(1), to_ll(e));
        acc.add_scaled(term, Rational(1));
    }
    // product side: (aq^2;q^4)(bq^2;q^4) / ((q^2;q^4)(abq^2;q^4))
    DenseSeries rhs = DenseSeries::one(order, 1);
    for (Rational e = Rational(2 + s); e < order; e += 4) rhs.mul_quad(Rational(t), to_ll(e));
    div_poch_infinite(rhs, Monomial(Rational(1), Rational(2)), Rational(4));
    div_poch_infinite(rhs, Monomial(Rational(1), Rational(2 * s + 2)), Rational(4));
    return {acc.to_qseries(), rhs.to_qseries()};
}

std::pair<QSeries, QSeries> specialize_qbailey(int root, const Monomial& c, const Rational& order) {
    int t = quad_t_for_root(root);
    if (c.coeff != 1 || c.exp < 0)
        throw UnsupportedSpecialization(
            "q-Bailey specialization supports c = q^s with s >= 0 rational");
    // sum side: sum_n (bq;q^2)_n (b^-1 q;q^2)_n c^n q^(n^2) / ((cq;q^2)_n (q^4;q^4)_n)
    long long grid = grid_for({c.exp});
    DenseSeries acc = DenseSeries::zero(order, grid);
    for (long long n = 0; Rational(n) * n + c.exp * n < order; ++n) {
        Rational e = Rational(n) * n + c.exp * n;
        DenseSeries term = DenseSeries::one(order - e, grid);
        for (long long j = 0; j < n; ++j) term.mul_quad(Rational(t), (2 * j + 1) * grid);
        div_poch_finite(term, Monomial(c.coeff, c.exp + 1), 2, n);
        div_poch_finite(term, Monomial(Rational(1), Rational(4)), 4, n);
        term.scale(rat_pow(c.coeff, n));
        term.mul_monomial(Rational(1), to_ll(e * grid));
        acc.add_scaled(term, Rational(1));
    }
    // product side: (b^-1 c q^2; q^4)(b c q^2; q^4) / (cq;q^2)_inf
    DenseSeries rhs = DenseSeries::one(order, grid);
    for (Rational e = c.exp + 2; e < order; e += 4) rhs.mul_quad(Rational(t), to_ll(e * grid));
    div_poch_infinite(rhs, Monomial(c.coeff, c.exp + 1), Rational(2));
    return {acc.to_qseries(), rhs.to_qseries()};
}

// ------------------------------------------------------------------ catalog

namespace {

Monomial mono_from_json_pair(const nlohmann::json& j) {
    return Monomial(parse_rational(j.at(0).get<std::string>()),
                    parse_rational(j.at(1).get<std::string>()));
}

nlohmann::json mono_to_json_pair(const Monomial& m) {
    return nlohmann::json::array({rat_str(m.coeff), rat_str(m.exp)});
}

RouteTransform transform_from_json(const nlohmann::json& j) {
    RouteTransform t;
    if (j.is_null()) return t;
    std::string c0 = j.value("c0", "0");
    if (c0 == "inv1mq2")
        t.c0_inv_one_minus_q2 = true;
    else
        t.c0 = parse_rational(c0);
    t.sign = j.value("sign", 1);
    std::string den = j.value("den", "1");
    if (den == "1")
        t.den = RouteTransform::Den::One;
    else if (den == "3")
        t.den = RouteTransform::Den::Three;
    else if (den == "1mq")
        t.den = RouteTransform::Den::OneMinusQ;
    else if (den == "1mq2")
        t.den = RouteTransform::Den::OneMinusQSquared;
    else if (den == "q2")
        t.den = RouteTransform::Den::QSquared;
    else
        throw CatalogError("unknown transform denominator '" + den + "'");
    return t;
}

nlohmann::json transform_to_json(const RouteTransform& t) {
    nlohmann::json j = nlohmann::json::object();
    if (t.c0_inv_one_minus_q2)
        j["c0"] = "inv1mq2";
    else if (t.c0 != 0)
        j["c0"] = rat_str(t.c0);
    if (t.sign != 1) j["sign"] = t.sign;
    switch (t.den) {
    case RouteTransform::Den::One: break;
    case RouteTransform::Den::Three: j["den"] = "3"; break;
    case RouteTransform::Den::OneMinusQ: j["den"] = "1mq"; break;
    case RouteTransform::Den::OneMinusQSquared: j["den"] = "1mq2"; break;
    case RouteTransform::Den::QSquared: j["den"] = "q2"; break;
    }
    return j;
}

Recipe recipe_from_json(const nlohmann::json& j) {
    Recipe r;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "external") {
        r.kind = Recipe::Kind::External;
        r.note = j.value("note", "");
        return r;
    }
    if (kind == "linear") {
        r.kind = Recipe::Kind::Linear;
        for (const auto& t : j.at("terms"))
            r.terms.push_back({mono_from_json_pair(t.at("coeff")), t.at("ref").get<std::string>()});
        return r;
    }
    if (kind == "pair_lemma") {
        r.kind = Recipe::Kind::PairLemma;
        r.pair = j.at("pair").get<std::string>();
        r.lemma = lemma_from_string(j.at("lemma").get<std::string>());
        r.transform = transform_from_json(j.value("transform", nlohmann::json()));
        return r;
    }
    if (kind == "qgauss") {
        r.kind = Recipe::Kind::QGauss;
        r.root = j.at("root").get<int>();
        r.times_q2 = j.value("times_q2", false);
        r.transform = transform_from_json(j.value("transform", nlohmann::json()));
        return r;
    }
    if (kind == "qbailey") {
        r.kind = Recipe::Kind::QBailey;
        r.root = j.at("root").get<int>();
        r.c = mono_from_json_pair(j.at("c"));
        r.transform = transform_from_json(j.value("transform", nlohmann::json()));
        return r;
    }
    throw CatalogError("unknown recipe kind '" + kind + "'");
}

nlohmann::json recipe_to_json(const Recipe& r) {
    nlohmann::json j;
    switch (r.kind) {
    case Recipe::Kind::External:
        j["kind"] = "external";
        if (!r.note.empty()) j["note"] = r.note;
        break;
    case Recipe::Kind::Linear: {
        j["kind"] = "linear";
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : r.terms)
            terms.push_back({{"coeff", mono_to_json_pair(t.coeff)}, {"ref", t.ref}});
        j["terms"] = std::move(terms);
        break;
    }
    case Recipe::Kind::PairLemma:
        j["kind"] = "pair_lemma";
        j["pair"] = r.pair;
        j["lemma"] = to_string(r.lemma);
        if (!r.transform.is_identity()) j["transform"] = transform_to_json(r.transform);
        break;
    case Recipe::Kind::QGauss:
        j["kind"] = "qgauss";
        j["root"] = r.root;
        if (r.times_q2) j["times_q2"] = true;
        if (!r.transform.is_identity()) j["transform"] = transform_to_json(r.transform);
        break;
    case Recipe::Kind::QBailey:
        j["kind"] = "qbailey";
        j["root"] = r.root;
        j["c"] = mono_to_json_pair(r.c);
        if (!r.transform.is_identity()) j["transform"] = transform_to_json(r.transform);
        break;
    }
    return j;
}

} // namespace

Catalog Catalog::load_text(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw CatalogError(std::string("catalog JSON parse failure: ") + e.what());
    }
    Catalog cat;
    for (const auto& rj : j.at("records")) {
        IdentityRecord rec;
        rec.id = rj.at("id").get<std::string>();
        rec.eq_tag = rj.at("eq_tag").get<std::string>();
        rec.family = rj.at("family").get<std::string>();
        rec.lhs = expr_from_json(rj.at("lhs"));
        rec.rhs = expr_from_json(rj.at("rhs"));
        rec.recipe = recipe_from_json(rj.at("recipe"));
        if (cat.index_.count(rec.id)) throw CatalogError("duplicate record id '" + rec.id + "'");
        cat.index_[rec.id] = cat.records_.size();
        cat.records_.push_back(std::move(rec));
    }
    // recipe references must resolve
    for (const auto& rec : cat.records_)
        for (const auto& t : rec.recipe.terms)
            if (!cat.index_.count(t.ref))
                throw CatalogError("record '" + rec.id + "' references unknown '" + t.ref + "'");
    return cat;
}

Catalog Catalog::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_text(buf.str());
}

Catalog Catalog::load_default() {
    if (const char* env = std::getenv("QIDENT_CATALOG"); env && *env) return load_file(env);
    return load_text(detail::embedded_catalog_json);
}

std::string Catalog::save_text() const {
    nlohmann::json out;
    out["records"] = nlohmann::json::array();
    for (const auto& rec : records_) {
        nlohmann::json rj{{"id", rec.id},
                          {"eq_tag", rec.eq_tag},
                          {"family", rec.family},
                          {"lhs", expr_to_json(*rec.lhs)},
                          {"rhs", expr_to_json(*rec.rhs)},
                          {"recipe", recipe_to_json(rec.recipe)}};
        out["records"].push_back(std::move(rj));
    }
    return out.dump(1);
}

bool Catalog::has(const std::string& id) const { return index_.count(id) != 0; }

const IdentityRecord& Catalog::record(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownLabel("no catalog record '" + id + "'");
    return records_[it->second];
}

std::vector<Catalog::Listing> Catalog::list() const {
    std::vector<Listing> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back({r.id, r.eq_tag, r.family});
    return out;
}

QSeries Catalog::build_side(const std::string& id, bool lhs_side, const Rational& order) const {
    const IdentityRecord& rec = record(id);
    QSeries s = eval_expr(lhs_side ? rec.lhs : rec.rhs, order);
    if (!s.is_integral())
        throw NonIntegralResult("record '" + id + "' " + (lhs_side ? "lhs" : "rhs") +
                                " expanded to non-integer coefficients");
    return s;
}

QSeries Catalog::combine_linear(const Recipe& recipe, bool lhs_side, const Rational& order) const {
    QSeries acc;
    bool first = true;
    for (const auto& term : recipe.terms) {
        const IdentityRecord& ref = record(term.ref);
        QSeries s = eval_expr(lhs_side ? ref.lhs : ref.rhs, order - term.coeff.exp);
        s = s.shifted(term.coeff);
        if (first) {
            acc = std::move(s);
            first = false;
        } else {
            acc += s;
        }
    }
    return acc;
}

Catalog::RouteCheck Catalog::recipe_check(const std::string& id, const Rational& order) const {
    const IdentityRecord& rec = record(id);
    RouteCheck out;
    out.id = id;
    if (order <= 0 && rec.recipe.kind != Recipe::Kind::External) {
        out.route = "vacuous";
        out.applicable = true;
        out.pass = true;
        return out;
    }
    switch (rec.recipe.kind) {
    case Recipe::Kind::External:
        out.route = "external";
        out.applicable = false;
        out.detail = rec.recipe.note;
        return out;
    case Recipe::Kind::Linear: {
        out.route = "linear";
        out.applicable = true;
        for (bool lhs_side : {true, false}) {
            QSeries target = eval_expr(lhs_side ? rec.lhs : rec.rhs, order);
            QSeries combo = combine_linear(rec.recipe, lhs_side, order);
            Rational bound = std::min(target.order(), combo.order());
            auto diff = QSeries::first_difference(target, combo, bound);
            if (diff) {
                out.pass = false;
                out.detail = lhs_side ? "lhs combination differs" : "rhs combination differs";
                out.diff = diff;
                return out;
            }
        }
        out.pass = true;
        return out;
    }
    case Recipe::Kind::PairLemma:
    case Recipe::Kind::QGauss:
    case Recipe::Kind::QBailey: {
        const RouteTransform& tr = rec.recipe.transform;
        Rational work_order = order + tr.order_margin();
        std::pair<QSeries, QSeries> raw;
        if (rec.recipe.kind == Recipe::Kind::PairLemma) {
            out.route = "lemma";
            raw = apply_lemma(make_pair(rec.recipe.pair), rec.recipe.lemma, work_order);
        } else if (rec.recipe.kind == Recipe::Kind::QGauss) {
            out.route = "qgauss";
            raw = specialize_qgauss(rec.recipe.root, rec.recipe.times_q2, work_order);
        } else {
            out.route = "qbailey";
            raw = specialize_qbailey(rec.recipe.root, rec.recipe.c, work_order);
        }
        out.applicable = true;
        QSeries sides[2] = {tr.apply(raw.first), tr.apply(raw.second)};
        for (int side = 0; side < 2; ++side) {
            QSeries target = eval_expr(side == 0 ? rec.lhs : rec.rhs, order);
            Rational bound = std::min(target.order(), sides[side].order());
            auto diff = QSeries::first_difference(target, sides[side], bound);
            if (diff) {
                out.pass = false;
                out.detail = side == 0 ? "route lhs differs" : "route rhs differs";
                out.diff = diff;
                return out;
            }
        }
        out.pass = true;
        return out;
    }
    }
    throw Error("unreachable");
}

} // namespace qident
