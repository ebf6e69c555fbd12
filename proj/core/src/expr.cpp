#include "qident/expr.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "qident/errors.hpp"
#include "qident/qproducts.hpp"
#include "dense_series.hpp"
#include "series_factors.hpp"

namespace qident {

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

} // namespace

ExprPtr make_number(const Rational& v) {
    Expr e;
    e.kind = Expr::Kind::Number;
    e.number = v;
    return node(std::move(e));
}

ExprPtr make_power(const Monomial& m) {
    if (m.coeff == 0) return make_number(0);
    if (m.exp == 0) return make_number(m.coeff);
    Expr e;
    e.kind = Expr::Kind::Power;
    e.mono = m;
    return node(std::move(e));
}

ExprPtr make_poch(std::vector<Monomial> bases, const Rational& step,
                  std::optional<long long> len) {
    if (bases.empty()) throw Error("poch needs at least one base");
    if (step <= 0) throw Error("poch step must be positive");
    if (len && *len < 0) throw Error("poch length must be nonnegative");
    Expr e;
    e.kind = Expr::Kind::PochList;
    e.bases = std::move(bases);
    e.step = step;
    e.len = len;
    return node(std::move(e));
}

namespace {

ExprPtr make_two_mono(Expr::Kind kind, const Monomial& a, const Monomial& b) {
    Expr e;
    e.kind = kind;
    e.bases = {a, b};
    return node(std::move(e));
}

ExprPtr make_one_mono(Expr::Kind kind, const Monomial& m) {
    Expr e;
    e.kind = kind;
    e.bases = {m};
    return node(std::move(e));
}

} // namespace

ExprPtr make_theta(const Monomial& a, const Monomial& b) {
    return make_two_mono(Expr::Kind::Theta, a, b);
}
ExprPtr make_false_theta(const Monomial& a, const Monomial& b) {
    return make_two_mono(Expr::Kind::FalseTheta, a, b);
}
ExprPtr make_phi(const Monomial& m) { return make_one_mono(Expr::Kind::Phi, m); }
ExprPtr make_psi(const Monomial& m) { return make_one_mono(Expr::Kind::Psi, m); }
ExprPtr make_fneg(const Monomial& m) { return make_one_mono(Expr::Kind::FNeg, m); }

ExprPtr make_mul(std::vector<ExprPtr> args) {
    // flatten, fold numeric coefficients into the following power
    std::vector<ExprPtr> flat;
    for (auto& a : args) {
        if (a->kind == Expr::Kind::Mul)
            flat.insert(flat.end(), a->args.begin(), a->args.end());
        else
            flat.push_back(std::move(a));
    }
    std::vector<ExprPtr> out;
    for (size_t i = 0; i < flat.size(); ++i) {
        if (flat[i]->kind == Expr::Kind::Number && i + 1 < flat.size() &&
            flat[i + 1]->kind == Expr::Kind::Power) {
            Monomial m = flat[i + 1]->mono;
            m.coeff *= flat[i]->number;
            out.push_back(make_power(m));
            ++i;
            continue;
        }
        out.push_back(flat[i]);
    }
    if (out.empty()) return make_number(1);
    if (out.size() == 1) return out[0];
    Expr e;
    e.kind = Expr::Kind::Mul;
    e.args = std::move(out);
    return node(std::move(e));
}

ExprPtr make_div(ExprPtr num, ExprPtr den) {
    if (num->kind == Expr::Kind::Number && den->kind == Expr::Kind::Number) {
        if (den->number == 0) throw Error("division by zero constant");
        return make_number(num->number / den->number);
    }
    Expr e;
    e.kind = Expr::Kind::Div;
    e.args = {std::move(num), std::move(den)};
    return node(std::move(e));
}

ExprPtr make_add(ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = Expr::Kind::Add;
    e.args = {std::move(a), std::move(b)};
    return node(std::move(e));
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
    Expr e;
    e.kind = Expr::Kind::Sub;
    e.args = {std::move(a), std::move(b)};
    return node(std::move(e));
}

ExprPtr make_neg(ExprPtr a) {
    if (a->kind == Expr::Kind::Number) return make_number(-a->number);
    if (a->kind == Expr::Kind::Power) return make_power(-a->mono);
    if (a->kind == Expr::Kind::Neg) return a->args[0];
    Expr e;
    e.kind = Expr::Kind::Neg;
    e.args = {std::move(a)};
    return node(std::move(e));
}

ExprPtr make_intpow(ExprPtr a, long long k) {
    if (k == 1) return a;
    Expr e;
    e.kind = Expr::Kind::IntPow;
    e.args = {std::move(a)};
    e.ipow = k;
    return node(std::move(e));
}

ExprPtr make_template_sum(SumTemplate t) {
    Expr e;
    e.kind = Expr::Kind::TemplateSum;
    e.tsum = std::move(t);
    return node(std::move(e));
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Expr::Kind::Number: return a.number == b.number;
    case Expr::Kind::Power: return a.mono == b.mono;
    case Expr::Kind::PochList: return a.bases == b.bases && a.step == b.step && a.len == b.len;
    case Expr::Kind::Theta:
    case Expr::Kind::FalseTheta:
    case Expr::Kind::Phi:
    case Expr::Kind::Psi:
    case Expr::Kind::FNeg: return a.bases == b.bases;
    case Expr::Kind::TemplateSum: return a.tsum == b.tsum;
    default: break;
    }
    if (a.ipow != b.ipow || a.args.size() != b.args.size()) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!expr_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

bool contains_template(const Expr& e) {
    if (e.kind == Expr::Kind::TemplateSum) return true;
    for (const auto& a : e.args)
        if (contains_template(*a)) return true;
    return false;
}

// ------------------------------------------------------------- evaluation

namespace {

long long expr_grid(const Expr& e) {
    long long g = 1;
    auto lift = [&g](const Rational& r) { g = std::lcm(g, to_ll(rat_den(r))); };
    switch (e.kind) {
    case Expr::Kind::Power: lift(e.mono.exp); break;
    case Expr::Kind::PochList:
        for (const auto& m : e.bases) lift(m.exp);
        lift(e.step);
        break;
    case Expr::Kind::Theta:
    case Expr::Kind::FalseTheta:
    case Expr::Kind::Phi:
    case Expr::Kind::Psi:
    case Expr::Kind::FNeg:
        for (const auto& m : e.bases) lift(m.exp);
        break;
    default: break;
    }
    for (const auto& a : e.args) g = std::lcm(g, expr_grid(*a));
    return g;
}

/// Nodes that can be applied to a DenseSeries factor by factor.
bool dense_applicable(const Expr& e, bool for_division) {
    switch (e.kind) {
    case Expr::Kind::Number: return true;
    case Expr::Kind::Power: return true;
    case Expr::Kind::PochList: return true;
    case Expr::Kind::Mul: {
        for (const auto& a : e.args)
            if (!dense_applicable(*a, for_division)) return false;
        return true;
    }
    case Expr::Kind::IntPow: return dense_applicable(*e.args[0], for_division);
    default: return false;
    }
}

void apply_dense(DenseSeries& d, const Expr& e, bool divide);

void apply_poch_list(DenseSeries& d, const Expr& e, bool divide) {
    for (const auto& base : e.bases) {
        if (e.len) {
            if (divide)
                div_poch_finite(d, base, e.step, *e.len);
            else
                mul_poch_finite(d, base, e.step, *e.len);
        } else {
            if (divide)
                div_poch_infinite(d, base, e.step);
            else
                mul_poch_infinite(d, base, e.step);
        }
    }
}

void apply_dense(DenseSeries& d, const Expr& e, bool divide) {
    switch (e.kind) {
    case Expr::Kind::Number: {
        if (divide) {
            if (e.number == 0) throw ZeroLeadingTerm("division by zero");
            d.scale(Rational(1) / e.number);
        } else {
            d.scale(e.number);
        }
        return;
    }
    case Expr::Kind::Power: {
        Monomial m = divide ? e.mono.inverse() : e.mono;
        d.mul_monomial(m.coeff, to_ll(m.exp * d.grid));
        return;
    }
    case Expr::Kind::PochList: apply_poch_list(d, e, divide); return;
    case Expr::Kind::Mul:
        for (const auto& a : e.args) apply_dense(d, *a, divide);
        return;
    case Expr::Kind::IntPow: {
        long long k = e.ipow;
        bool div = divide;
        if (k < 0) {
            k = -k;
            div = !div;
        }
        for (long long i = 0; i < k; ++i) apply_dense(d, *e.args[0], div);
        return;
    }
    default: throw Error("apply_dense: unsupported node");
    }
}

} // namespace

QSeries eval_template(const SumTemplate& t, const Rational& order) {
    long long g = 1;
    auto lift = [&g](const Rational& r) { g = std::lcm(g, to_ll(rat_den(r))); };
    for (const auto& c : t.qexp) lift(c);
    for (const auto& lists : {t.num, t.den})
        for (const auto& p : lists) {
            lift(p.base_exp.a);
            lift(p.base_exp.b);
            lift(p.step);
        }
    if (t.weight) {
        lift(t.weight->e.a);
        lift(t.weight->e.b);
    }

    if (t.qexp[2] <= 0 && !(t.qexp[2] == 0 && t.qexp[1] > 0))
        throw CatalogError("sum template exponent must grow");
    Rational vertex = t.qexp[2] > 0 ? -t.qexp[1] / (2 * t.qexp[2]) : Rational(t.start);

    DenseSeries acc = DenseSeries::zero(order, g);
    if (t.leading_one) acc.add_term(0, Rational(1));
    for (long long n = t.start;; ++n) {
        Rational e = t.exponent_at(n);
        if (e >= order) {
            if (Rational(n) > vertex) break;
            continue;
        }
        DenseSeries term = DenseSeries::one(order - e, g);
        for (const auto& p : t.num) {
            Rational len = p.len.at(n);
            if (!is_integer(len) || len < 0)
                throw CatalogError("template factor length must be a nonnegative integer");
            mul_poch_finite(term, Monomial(p.base_coeff, p.base_exp.at(n)), p.step, to_ll(len));
        }
        for (const auto& p : t.den) {
            Rational len = p.len.at(n);
            if (!is_integer(len) || len < 0)
                throw CatalogError("template factor length must be a nonnegative integer");
            div_poch_finite(term, Monomial(p.base_coeff, p.base_exp.at(n)), p.step, to_ll(len));
        }
        if (t.weight) {
            DenseSeries shifted = term;
            term.scale(t.weight->c0);
            Rational we = t.weight->e.at(n);
            if (t.weight->c1 != 0 && we >= 0) {
                shifted.mul_monomial(t.weight->c1, to_ll(we * g));
                term.add_scaled(shifted, Rational(1));
            }
        }
        Rational sign = (t.sign_alternating && n % 2 != 0) ? -1 : 1;
        term.mul_monomial(sign, to_ll(e * g));
        acc.add_scaled(term, Rational(1));
    }
    return acc.to_qseries();
}

QSeries eval_expr(const Expr& e, const Rational& order) {
    switch (e.kind) {
    case Expr::Kind::Number: return QSeries::monomial(e.number, Rational(0), order);
    case Expr::Kind::Power: return QSeries::monomial(e.mono, order);
    case Expr::Kind::PochList: {
        long long g = expr_grid(e);
        DenseSeries d = DenseSeries::one(order, g);
        apply_poch_list(d, e, false);
        return d.to_qseries();
    }
    case Expr::Kind::Theta: return theta_f(e.bases[0], e.bases[1], order);
    case Expr::Kind::FalseTheta: return false_theta(e.bases[0], e.bases[1], order);
    case Expr::Kind::Phi: return phi(e.bases[0], order);
    case Expr::Kind::Psi: return psi(e.bases[0], order);
    case Expr::Kind::FNeg: return f_neg(e.bases[0], order);
    case Expr::Kind::Mul: {
        std::vector<const Expr*> dense_args;
        std::vector<const Expr*> series_args;
        for (const auto& a : e.args)
            (dense_applicable(*a, false) ? dense_args : series_args).push_back(a.get());
        QSeries acc;
        bool have = false;
        for (const Expr* a : series_args) {
            QSeries s = eval_expr(*a, order);
            acc = have ? acc * s : std::move(s);
            have = true;
        }
        long long g = expr_grid(e);
        DenseSeries d = have ? DenseSeries::from(acc.on_grid(std::lcm(g, acc.grid_den())))
                             : DenseSeries::one(order, g);
        for (const Expr* a : dense_args) apply_dense(d, *a, false);
        return d.to_qseries().truncated(std::min(order, d.order));
    }
    case Expr::Kind::Div: {
        const Expr& den = *e.args[1];
        QSeries num = eval_expr(*e.args[0], order);
        if (dense_applicable(den, true)) {
            long long g = std::lcm(num.grid_den(), expr_grid(den));
            DenseSeries d = DenseSeries::from(num.on_grid(g));
            apply_dense(d, den, true);
            return d.to_qseries();
        }
        QSeries q = eval_expr(den, order);
        return (num * q.inverse()).truncated(order);
    }
    case Expr::Kind::Add: return eval_expr(*e.args[0], order) + eval_expr(*e.args[1], order);
    case Expr::Kind::Sub: return eval_expr(*e.args[0], order) - eval_expr(*e.args[1], order);
    case Expr::Kind::Neg: return -eval_expr(*e.args[0], order);
    case Expr::Kind::IntPow: return eval_expr(*e.args[0], order).pow_int(e.ipow);
    case Expr::Kind::TemplateSum: return eval_template(e.tsum, order);
    }
    throw Error("unreachable");
}

// -------------------------------------------------------------- rendering

namespace {

// precedence: 1 add/sub, 2 mul/div, 3 unary minus, 4 power, 5 atom
int prec_of(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::IntPow: return 4;
    case Expr::Kind::Power: return e.mono.coeff < 0 ? 3 : 5;
    case Expr::Kind::Number: return e.number < 0 ? 3 : 5;
    default: return 5;
    }
}

std::string rexp_text(const Rational& e) {
    if (is_integer(e) && e >= 0) return rat_str(e);
    return "(" + rat_str(e) + ")";
}

std::string number_text(const Rational& v) {
    if (is_integer(v)) return rat_str(v);
    return "(" + rat_str(rat_num(v)) + "/" + rat_str(rat_den(v)) + ")";
}

std::string mono_text(const Monomial& m) {
    if (m.exp == 0) return number_text(m.coeff);
    std::string head;
    if (m.coeff == -1)
        head = "-";
    else if (m.coeff != 1)
        head = number_text(m.coeff) + "*";
    if (m.exp == 1) return head + "q";
    return head + "q^" + rexp_text(m.exp);
}

std::string render(const Expr& e, int parent_prec);

std::string render_wrapped(const Expr& e, int parent_prec) {
    std::string s = render(e, parent_prec);
    if (prec_of(e) < parent_prec) return "(" + s + ")";
    return s;
}

std::string render(const Expr& e, int) {
    std::ostringstream out;
    switch (e.kind) {
    case Expr::Kind::Number: return number_text(e.number);
    case Expr::Kind::Power: return mono_text(e.mono);
    case Expr::Kind::PochList: {
        out << "(";
        for (size_t i = 0; i < e.bases.size(); ++i) {
            if (i) out << ",";
            out << mono_text(e.bases[i]);
        }
        out << ";" << mono_text(Monomial(1, e.step)) << ")_";
        if (e.len)
            out << *e.len;
        else
            out << "inf";
        return out.str();
    }
    case Expr::Kind::Theta:
        return "f(" + mono_text(e.bases[0]) + "," + mono_text(e.bases[1]) + ")";
    case Expr::Kind::FalseTheta:
        return "Psi(" + mono_text(e.bases[0]) + "," + mono_text(e.bases[1]) + ")";
    case Expr::Kind::Phi: return "phi(" + mono_text(e.bases[0]) + ")";
    case Expr::Kind::Psi: return "psi(" + mono_text(e.bases[0]) + ")";
    case Expr::Kind::FNeg: return "fneg(" + mono_text(e.bases[0]) + ")";
    case Expr::Kind::Mul: {
        for (size_t i = 0; i < e.args.size(); ++i) {
            if (i) out << "*";
            out << render_wrapped(*e.args[i], i == 0 ? 2 : 3);
        }
        return out.str();
    }
    case Expr::Kind::Div:
        return render_wrapped(*e.args[0], 2) + "/" + render_wrapped(*e.args[1], 4);
    case Expr::Kind::Add: {
        const Expr& b = *e.args[1];
        std::string rhs = render_wrapped(b, 2);
        if (!rhs.empty() && rhs[0] == '-')
            return render_wrapped(*e.args[0], 1) + " - " + rhs.substr(1);
        return render_wrapped(*e.args[0], 1) + " + " + rhs;
    }
    case Expr::Kind::Sub: return render_wrapped(*e.args[0], 1) + " - " + render_wrapped(*e.args[1], 2);
    case Expr::Kind::Neg: return "-" + render_wrapped(*e.args[0], 3);
    case Expr::Kind::IntPow:
        return render_wrapped(*e.args[0], 5) + "^" + std::to_string(e.ipow);
    case Expr::Kind::TemplateSum: throw Error("template sums have no text rendering");
    }
    throw Error("unreachable");
}

} // namespace

std::string render_expr(const Expr& e) { return render(e, 1); }

// ------------------------------------------------------------------ JSON

namespace {

nlohmann::json mono_to_json(const Monomial& m) {
    return nlohmann::json::array({rat_str(m.coeff), rat_str(m.exp)});
}

Monomial mono_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw CatalogError("monomial must be [coeff, exp]");
    return Monomial(parse_rational(j.at(0).get<std::string>()),
                    parse_rational(j.at(1).get<std::string>()));
}

nlohmann::json affine_to_json(const Affine& a) {
    return nlohmann::json::array({rat_str(a.a), rat_str(a.b)});
}

Affine affine_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw CatalogError("affine must be [a, b]");
    return Affine{parse_rational(j.at(0).get<std::string>()),
                  parse_rational(j.at(1).get<std::string>())};
}

nlohmann::json poch_template_to_json(const PochTemplate& p) {
    return nlohmann::json{{"c", rat_str(p.base_coeff)},
                          {"e", affine_to_json(p.base_exp)},
                          {"step", rat_str(p.step)},
                          {"len", affine_to_json(p.len)}};
}

PochTemplate poch_template_from_json(const nlohmann::json& j) {
    PochTemplate p;
    p.base_coeff = parse_rational(j.at("c").get<std::string>());
    p.base_exp = affine_from_json(j.at("e"));
    p.step = parse_rational(j.at("step").get<std::string>());
    p.len = affine_from_json(j.at("len"));
    return p;
}

nlohmann::json template_to_json(const SumTemplate& t) {
    nlohmann::json j{{"alt", t.sign_alternating},
                     {"qexp", nlohmann::json::array(
                                  {rat_str(t.qexp[0]), rat_str(t.qexp[1]), rat_str(t.qexp[2])})},
                     {"start", t.start},
                     {"leading_one", t.leading_one},
                     {"num", nlohmann::json::array()},
                     {"den", nlohmann::json::array()}};
    for (const auto& p : t.num) j["num"].push_back(poch_template_to_json(p));
    for (const auto& p : t.den) j["den"].push_back(poch_template_to_json(p));
    if (t.weight)
        j["weight"] = nlohmann::json{{"c0", rat_str(t.weight->c0)},
                                     {"c1", rat_str(t.weight->c1)},
                                     {"e", affine_to_json(t.weight->e)}};
    return j;
}

SumTemplate template_from_json(const nlohmann::json& j) {
    SumTemplate t;
    t.sign_alternating = j.at("alt").get<bool>();
    const auto& q = j.at("qexp");
    t.qexp = {parse_rational(q.at(0).get<std::string>()),
              parse_rational(q.at(1).get<std::string>()),
              parse_rational(q.at(2).get<std::string>())};
    t.start = j.at("start").get<long long>();
    t.leading_one = j.at("leading_one").get<bool>();
    for (const auto& p : j.at("num")) t.num.push_back(poch_template_from_json(p));
    for (const auto& p : j.at("den")) t.den.push_back(poch_template_from_json(p));
    if (j.contains("weight")) {
        TemplateWeight w;
        w.c0 = parse_rational(j.at("weight").at("c0").get<std::string>());
        w.c1 = parse_rational(j.at("weight").at("c1").get<std::string>());
        w.e = affine_from_json(j.at("weight").at("e"));
        t.weight = w;
    }
    return t;
}

} // namespace

nlohmann::json expr_to_json(const Expr& e) {
    using nlohmann::json;
    switch (e.kind) {
    case Expr::Kind::Number: return json{{"op", "num"}, {"v", rat_str(e.number)}};
    case Expr::Kind::Power:
        return json{{"op", "pow"}, {"c", rat_str(e.mono.coeff)}, {"e", rat_str(e.mono.exp)}};
    case Expr::Kind::PochList: {
        json bases = json::array();
        for (const auto& m : e.bases) bases.push_back(mono_to_json(m));
        json j{{"op", "poch"}, {"bases", std::move(bases)}, {"step", rat_str(e.step)}};
        if (e.len) j["len"] = *e.len;
        return j;
    }
    case Expr::Kind::Theta:
        return json{{"op", "f"}, {"a", mono_to_json(e.bases[0])}, {"b", mono_to_json(e.bases[1])}};
    case Expr::Kind::FalseTheta:
        return json{{"op", "Psi"}, {"a", mono_to_json(e.bases[0])}, {"b", mono_to_json(e.bases[1])}};
    case Expr::Kind::Phi: return json{{"op", "phi"}, {"m", mono_to_json(e.bases[0])}};
    case Expr::Kind::Psi: return json{{"op", "psi"}, {"m", mono_to_json(e.bases[0])}};
    case Expr::Kind::FNeg: return json{{"op", "fneg"}, {"m", mono_to_json(e.bases[0])}};
    case Expr::Kind::Mul: {
        json args = json::array();
        for (const auto& a : e.args) args.push_back(expr_to_json(*a));
        return json{{"op", "mul"}, {"args", std::move(args)}};
    }
    case Expr::Kind::Div:
        return json{{"op", "div"}, {"num", expr_to_json(*e.args[0])}, {"den", expr_to_json(*e.args[1])}};
    case Expr::Kind::Add:
        return json{{"op", "add"}, {"a", expr_to_json(*e.args[0])}, {"b", expr_to_json(*e.args[1])}};
    case Expr::Kind::Sub:
        return json{{"op", "sub"}, {"a", expr_to_json(*e.args[0])}, {"b", expr_to_json(*e.args[1])}};
    case Expr::Kind::Neg: return json{{"op", "neg"}, {"a", expr_to_json(*e.args[0])}};
    case Expr::Kind::IntPow:
        return json{{"op", "ipow"}, {"base", expr_to_json(*e.args[0])}, {"k", e.ipow}};
    case Expr::Kind::TemplateSum: return json{{"op", "sum"}, {"template", template_to_json(e.tsum)}};
    }
    throw Error("unreachable");
}

ExprPtr expr_from_json(const nlohmann::json& j) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "num") return make_number(parse_rational(j.at("v").get<std::string>()));
    if (op == "pow")
        return make_power(Monomial(parse_rational(j.at("c").get<std::string>()),
                                   parse_rational(j.at("e").get<std::string>())));
    if (op == "poch") {
        std::vector<Monomial> bases;
        for (const auto& b : j.at("bases")) bases.push_back(mono_from_json(b));
        std::optional<long long> len;
        if (j.contains("len")) len = j.at("len").get<long long>();
        return make_poch(std::move(bases), parse_rational(j.at("step").get<std::string>()), len);
    }
    if (op == "f") return make_theta(mono_from_json(j.at("a")), mono_from_json(j.at("b")));
    if (op == "Psi")
        return make_false_theta(mono_from_json(j.at("a")), mono_from_json(j.at("b")));
    if (op == "phi") return make_phi(mono_from_json(j.at("m")));
    if (op == "psi") return make_psi(mono_from_json(j.at("m")));
    if (op == "fneg") return make_fneg(mono_from_json(j.at("m")));
    if (op == "mul") {
        std::vector<ExprPtr> args;
        for (const auto& a : j.at("args")) args.push_back(expr_from_json(a));
        return make_mul(std::move(args));
    }
    if (op == "div") return make_div(expr_from_json(j.at("num")), expr_from_json(j.at("den")));
    if (op == "add") return make_add(expr_from_json(j.at("a")), expr_from_json(j.at("b")));
    if (op == "sub") return make_sub(expr_from_json(j.at("a")), expr_from_json(j.at("b")));
    if (op == "neg") return make_neg(expr_from_json(j.at("a")));
    if (op == "ipow") return make_intpow(expr_from_json(j.at("base")), j.at("k").get<long long>());
    if (op == "sum") return make_template_sum(template_from_json(j.at("template")));
    throw CatalogError("unknown expression op '" + op + "'");
}

} // namespace qident
