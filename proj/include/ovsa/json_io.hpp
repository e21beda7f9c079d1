#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amalg.hpp"
#include "cuts.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "formulas.hpp"
#include "hahn.hpp"
#include "orders.hpp"
#include "rational.hpp"
#include "sigmapoly.hpp"
#include "solve.hpp"
#include "unipoly.hpp"

namespace ovsa {

// Ordered JSON keeps field order stable, so serialized certificates are
// byte-reproducible and diffable.
using Json = nlohmann::ordered_json;

namespace jio {

inline std::string require_string(const Json& j, const char* what) {
    if (!j.is_string()) throw SchemaError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

inline const Json& require_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string kind_of(const Json& j) { return require_string(require_field(j, "kind"), "kind"); }

// ----- scalars -----

inline Json rat(const Rat& r) { return rat_to_string(r); }
inline Rat to_rat(const Json& j) { return rat_from_string(require_string(j, "rational")); }

inline Json unipoly(const UniPoly& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(rat(c));
    return Json{{"coeffs", coeffs}};
}
inline UniPoly to_unipoly(const Json& j) {
    const Json& arr = require_field(j, "coeffs");
    if (!arr.is_array()) throw SchemaError("coeffs must be an array");
    std::vector<Rat> c;
    for (const auto& x : arr) c.push_back(to_rat(x));
    return UniPoly(std::move(c));
}

// ----- orders -----

inline Json order(const IndexOrder& o) {
    switch (o->kind) {
        case OrderKind::Finite: return Json{{"kind", "finite"}, {"n", o->size}};
        case OrderKind::Int: return Json{{"kind", "int"}};
        case OrderKind::IntReversed: return Json{{"kind", "int_reversed"}};
        case OrderKind::Concat:
            return Json{{"kind", "concat"}, {"left", order(o->left)}, {"right", order(o->right)}};
    }
    throw SchemaError("bad order");
}
inline IndexOrder to_order(const Json& j) {
    const std::string k = kind_of(j);
    if (k == "finite") {
        const Json& n = require_field(j, "n");
        if (!n.is_number_integer()) throw SchemaError("finite order needs integer n");
        return order_finite(n.get<long long>());
    }
    if (k == "int") return order_int();
    if (k == "int_reversed") return order_int_reversed();
    if (k == "concat")
        return order_concat(to_order(require_field(j, "left")), to_order(require_field(j, "right")));
    throw SchemaError("unknown order kind: " + k);
}

inline Json elem(const OrdElem& e) {
    Json path = Json::array();
    for (auto p : e.path) path.push_back(p ? "right" : "left");
    return Json{{"path", path}, {"pos", e.pos}};
}
inline OrdElem to_elem(const Json& j) {
    OrdElem e;
    const Json& path = require_field(j, "path");
    if (!path.is_array()) throw SchemaError("element path must be an array");
    for (const auto& p : path) {
        const std::string s = require_string(p, "path step");
        if (s == "left")
            e.path.push_back(0);
        else if (s == "right")
            e.path.push_back(1);
        else
            throw SchemaError("path step must be 'left' or 'right'");
    }
    const Json& pos = require_field(j, "pos");
    if (!pos.is_number_integer()) throw SchemaError("element pos must be an integer");
    e.pos = pos.get<long long>();
    return e;
}

inline Json order_auto(const OrderAuto& a) {
    switch (a->kind) {
        case AutoKind::Identity: return Json{{"kind", "identity"}};
        case AutoKind::Shift: return Json{{"kind", "shift"}, {"k", a->shift}};
        case AutoKind::Concat:
            return Json{{"kind", "concat"},
                        {"left", order_auto(a->left)},
                        {"right", order_auto(a->right)}};
    }
    throw SchemaError("bad automorphism");
}
inline OrderAuto to_order_auto(const Json& j) {
    const std::string k = kind_of(j);
    if (k == "identity") return auto_identity();
    if (k == "shift") {
        const Json& s = require_field(j, "k");
        if (!s.is_number_integer()) throw SchemaError("shift needs integer k");
        return auto_shift(s.get<long long>());
    }
    if (k == "concat")
        return auto_concat(to_order_auto(require_field(j, "left")),
                           to_order_auto(require_field(j, "right")));
    throw SchemaError("unknown automorphism kind: " + k);
}

inline Json index_cut(const IndexCut& c) {
    switch (c->kind) {
        case CutKind::AtMinusInfinity: return Json{{"kind", "at_minus_infinity"}};
        case CutKind::AtPlusInfinity: return Json{{"kind", "at_plus_infinity"}};
        case CutKind::BelowElement: return Json{{"kind", "below_element"}, {"elem", elem(c->elem)}};
        case CutKind::AboveElement: return Json{{"kind", "above_element"}, {"elem", elem(c->elem)}};
        case CutKind::ConcatSeam: return Json{{"kind", "concat_seam"}};
        case CutKind::ImageUnderAuto:
            return Json{{"kind", "image_under_auto"},
                        {"cut", index_cut(c->inner)},
                        {"auto", order_auto(c->map)},
                        {"power", c->power}};
    }
    throw SchemaError("bad cut");
}
inline IndexCut to_index_cut(const Json& j) {
    const std::string k = kind_of(j);
    if (k == "at_minus_infinity") return cut_at_minus_infinity();
    if (k == "at_plus_infinity") return cut_at_plus_infinity();
    if (k == "below_element") return cut_below_element(to_elem(require_field(j, "elem")));
    if (k == "above_element") return cut_above_element(to_elem(require_field(j, "elem")));
    if (k == "concat_seam") return cut_concat_seam();
    if (k == "image_under_auto") {
        const Json& p = require_field(j, "power");
        if (!p.is_number_integer()) throw SchemaError("power must be an integer");
        return cut_image_under_auto(to_index_cut(require_field(j, "cut")),
                                    to_order_auto(require_field(j, "auto")), p.get<long long>());
    }
    throw SchemaError("unknown cut kind: " + k);
}

// ----- hahn -----

inline Json scaling(const Scaling& s) {
    switch (s->kind) {
        case ScaleKind::Constant: return Json{{"kind", "constant"}, {"value", rat(s->value)}};
        case ScaleKind::FiniteTable: {
            Json vals = Json::array();
            for (const auto& v : s->table) vals.push_back(rat(v));
            return Json{{"kind", "table"}, {"values", vals}};
        }
        case ScaleKind::PerBlock:
            return Json{{"kind", "per_block"}, {"left", scaling(s->left)}, {"right", scaling(s->right)}};
    }
    throw SchemaError("bad scaling");
}
inline Scaling to_scaling(const Json& j) {
    const std::string k = kind_of(j);
    if (k == "constant") return scale_constant(to_rat(require_field(j, "value")));
    if (k == "table") {
        const Json& vals = require_field(j, "values");
        if (!vals.is_array()) throw SchemaError("table values must be an array");
        std::vector<Rat> t;
        for (const auto& v : vals) t.push_back(to_rat(v));
        return scale_table(std::move(t));
    }
    if (k == "per_block")
        return scale_per_block(to_scaling(require_field(j, "left")),
                               to_scaling(require_field(j, "right")));
    throw SchemaError("unknown scaling kind: " + k);
}

inline Json model(const HahnModel& m) {
    return Json{{"order", order(m.index())}, {"tau", order_auto(m.tau())},
                {"scaling", scaling(m.scaling())}};
}
inline HahnModel to_model(const Json& j) {
    try {
        return HahnModel(to_order(require_field(j, "order")),
                         to_order_auto(require_field(j, "tau")),
                         to_scaling(require_field(j, "scaling")));
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(std::string("invalid model: ") + e.what());
    }
}

inline Json vector(const HahnVector& v) {
    Json coeffs = Json::array();
    for (const auto& [i, c] : v.terms())
        coeffs.push_back(Json{{"index", elem(i)}, {"value", rat(c)}});
    return Json{{"coeffs", coeffs}};
}
inline HahnVector to_vector(const Json& j, const HahnModel& m) {
    const Json& coeffs = require_field(j, "coeffs");
    if (!coeffs.is_array()) throw SchemaError("coeffs must be an array");
    std::vector<HahnVector::Term> terms;
    for (const auto& c : coeffs) {
        const OrdElem i = to_elem(require_field(c, "index"));
        try {
            check_element(m.index(), i);
        } catch (const ElementNotInOrderError& e) {
            throw SchemaError(std::string("vector index outside the model order: ") + e.what());
        }
        terms.push_back({i, to_rat(require_field(c, "value"))});
    }
    return HahnVector(m, std::move(terms));
}

// ----- sigma polynomials -----

inline Json sigma_poly(const SigmaPoly& f) {
    Json terms = Json::array();
    for (const auto& [k, c] : f.terms()) terms.push_back(Json{{"exp", k}, {"coef", rat(c)}});
    return Json{{"terms", terms}};
}
inline SigmaPoly to_sigma_poly(const Json& j) {
    const Json& terms = require_field(j, "terms");
    if (!terms.is_array()) throw SchemaError("terms must be an array");
    std::vector<SigmaPoly::Term> t;
    for (const auto& x : terms) {
        const Json& e = require_field(x, "exp");
        if (!e.is_number_integer()) throw SchemaError("exp must be an integer");
        t.push_back({e.get<long long>(), to_rat(require_field(x, "coef"))});
    }
    return SigmaPoly(std::move(t));
}

// ----- model cuts (Hahn carriers) -----

inline Json model_cut(const ModelCut<HahnModel>& cut) {
    return std::visit(
        [](const auto& c) -> Json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CutAtMinusInf>)
                return Json{{"kind", "at_minus_infinity"}};
            else if constexpr (std::is_same_v<T, CutAtPlusInf>)
                return Json{{"kind", "at_plus_infinity"}};
            else if constexpr (std::is_same_v<T, CutBelowElem<HahnModel>>)
                return Json{{"kind", "below_vector"}, {"v", vector(c.v)}};
            else if constexpr (std::is_same_v<T, CutAboveElem<HahnModel>>)
                return Json{{"kind", "above_vector"}, {"v", vector(c.v)}};
            else if constexpr (std::is_same_v<T, CutZeroOfMonotone<HahnModel>>)
                return Json{{"kind", "zero_cut"},
                            {"poly", sigma_poly(c.f)},
                            {"rhs", vector(c.rhs)},
                            {"orientation", c.increasing ? "increasing" : "decreasing"}};
            else if constexpr (std::is_same_v<T, CutFormalZero<HahnModel>>)
                return Json{{"kind", "formal_zero_cut"},
                            {"poly", sigma_poly(c.f)},
                            {"rhs", vector(c.rhs)}};
            else
                return Json{{"kind", "flank"},
                            {"segment", index_cut(c.subgroup.final_segment)},
                            {"side", c.right_flank ? "right" : "left"}};
        },
        cut);
}
inline ModelCut<HahnModel> to_model_cut(const Json& j, const HahnModel& m) {
    const std::string k = kind_of(j);
    if (k == "at_minus_infinity") return CutAtMinusInf{};
    if (k == "at_plus_infinity") return CutAtPlusInf{};
    if (k == "below_vector") return CutBelowElem<HahnModel>{to_vector(require_field(j, "v"), m)};
    if (k == "above_vector") return CutAboveElem<HahnModel>{to_vector(require_field(j, "v"), m)};
    if (k == "zero_cut") {
        const std::string o = require_string(require_field(j, "orientation"), "orientation");
        if (o != "increasing" && o != "decreasing")
            throw SchemaError("orientation must be increasing or decreasing");
        return CutZeroOfMonotone<HahnModel>{to_sigma_poly(require_field(j, "poly")),
                                            to_vector(require_field(j, "rhs"), m),
                                            o == "increasing"};
    }
    if (k == "formal_zero_cut")
        return CutFormalZero<HahnModel>{to_sigma_poly(require_field(j, "poly")),
                                        to_vector(require_field(j, "rhs"), m)};
    if (k == "flank") {
        const std::string side = require_string(require_field(j, "side"), "side");
        if (side != "left" && side != "right") throw SchemaError("side must be left or right");
        return CutFlankSubgroup<HahnModel>{
            convex_subgroup(m, to_index_cut(require_field(j, "segment"))), side == "right"};
    }
    throw SchemaError("unknown model-cut kind: " + k);
}

// ----- extensions -----

inline Json ext_model(const ExtModel<HahnModel>& e) {
    Json out{{"base", model(e.base())}, {"cut", model_cut(e.cut())},
             {"case", e.case_flag() == CaseFlag::Case1 ? 1 : 2}};
    if (e.lambda() == 1) {
        out["a"] = vector(vec_neg(e.sigma_shift()));
    } else {
        out["lambda"] = rat(e.lambda());
        out["rhs"] = vector(e.sigma_shift());
    }
    return out;
}
inline ExtModel<HahnModel> to_ext_model(const Json& j) {
    const HahnModel base = to_model(require_field(j, "base"));
    ModelCut<HahnModel> cut = to_model_cut(require_field(j, "cut"), base);
    const Json& cs = require_field(j, "case");
    if (!cs.is_number_integer() || (cs.get<int>() != 1 && cs.get<int>() != 2))
        throw SchemaError("case must be 1 or 2");
    const CaseFlag flag = cs.get<int>() == 1 ? CaseFlag::Case1 : CaseFlag::Case2;
    if (j.contains("a")) {
        const HahnVector a = to_vector(j.at("a"), base);
        return ExtModel<HahnModel>(base, std::move(cut), flag, Rat(1), vec_neg(a));
    }
    const Rat lambda = to_rat(require_field(j, "lambda"));
    const HahnVector rhs = to_vector(require_field(j, "rhs"), base);
    return ExtModel<HahnModel>(base, std::move(cut), flag, lambda, rhs);
}

// ----- formulas -----

inline Json var(const Var& v) { return v.name(); }
inline Var to_var(const Json& j) {
    const std::string s = require_string(j, "variable");
    if (s.size() < 2 || (s[0] != 'x' && s[0] != 'y'))
        throw SchemaError("variable must look like x0 or y0: " + s);
    try {
        return Var{s[0], std::stoi(s.substr(1))};
    } catch (const std::exception&) {
        throw SchemaError("malformed variable: " + s);
    }
}

inline Json term(const QFTerm<HahnModel>& t) {
    Json summands = Json::array();
    for (const auto& [v, p] : t.summands)
        summands.push_back(Json{{"var", var(v)}, {"poly", sigma_poly(p)}});
    Json out{{"summands", summands}};
    if (t.constant) out["constant"] = vector(*t.constant);
    return out;
}
inline QFTerm<HahnModel> to_term(const Json& j, const HahnModel& m) {
    QFTerm<HahnModel> t;
    const Json& s = require_field(j, "summands");
    if (!s.is_array()) throw SchemaError("summands must be an array");
    for (const auto& x : s)
        t.summands.push_back(
            {to_var(require_field(x, "var")), to_sigma_poly(require_field(x, "poly"))});
    if (j.contains("constant")) t.constant = to_vector(j.at("constant"), m);
    return t;
}

inline Json formula(const QFFormula<HahnModel>& f) {
    using Kind = QFFormula<HahnModel>::Kind;
    switch (f.kind()) {
        case Kind::Top: return Json{{"kind", "top"}};
        case Kind::Bottom: return Json{{"kind", "bottom"}};
        case Kind::Atom: {
            const char* rel = f.rel() == Rel::LT ? "lt" : f.rel() == Rel::GT ? "gt" : "eq";
            return Json{{"kind", "atom"}, {"rel", rel}, {"term", term(f.term())}};
        }
        case Kind::And:
        case Kind::Or: {
            Json items = Json::array();
            for (const auto& c : f.children()) items.push_back(formula(c));
            return Json{{"kind", f.kind() == Kind::And ? "and" : "or"}, {"items", items}};
        }
    }
    throw SchemaError("bad formula");
}
inline QFFormula<HahnModel> to_formula(const Json& j, const HahnModel& m) {
    using F = QFFormula<HahnModel>;
    const std::string k = kind_of(j);
    if (k == "top") return F::top();
    if (k == "bottom") return F::bottom();
    if (k == "atom") {
        const std::string rel = require_string(require_field(j, "rel"), "rel");
        Rel r;
        if (rel == "lt")
            r = Rel::LT;
        else if (rel == "gt")
            r = Rel::GT;
        else if (rel == "eq")
            r = Rel::EQ;
        else
            throw SchemaError("rel must be lt, gt or eq");
        return F::atom(to_term(require_field(j, "term"), m), r);
    }
    if (k == "and" || k == "or") {
        const Json& items = require_field(j, "items");
        if (!items.is_array()) throw SchemaError("items must be an array");
        std::vector<F> children;
        for (const auto& c : items) children.push_back(to_formula(c, m));
        return k == "and" ? F::conj(std::move(children)) : F::disj(std::move(children));
    }
    throw SchemaError("unknown formula kind: " + k);
}

// ----- ordered G-sets -----

inline Json order_with_action(const OrderWithAction& s) {
    Json points = Json::array();
    for (const auto& p : s.points) points.push_back(p);
    Json ord = Json::array();
    for (int id : s.order) ord.push_back(s.points[id]);
    Json gens = Json::array();
    for (const auto& g : s.generators) {
        Json map = Json::object();
        for (std::size_t i = 0; i < g.size(); ++i) map[s.points[i]] = s.points[g[i]];
        gens.push_back(map);
    }
    return Json{{"points", points}, {"order", ord}, {"generators", gens}};
}
inline OrderWithAction to_order_with_action(const Json& j) {
    OrderWithAction s;
    const Json& points = require_field(j, "points");
    if (!points.is_array()) throw SchemaError("points must be an array");
    for (const auto& p : points) s.points.push_back(require_string(p, "point"));
    const Json& ord = require_field(j, "order");
    if (!ord.is_array()) throw SchemaError("order must be an array");
    for (const auto& p : ord) {
        const int id = s.id_of(require_string(p, "order point"));
        if (id < 0) throw SchemaError("order mentions unknown point");
        s.order.push_back(id);
    }
    if (j.contains("generators")) {
        const Json& gens = j.at("generators");
        if (!gens.is_array()) throw SchemaError("generators must be an array");
        for (const auto& g : gens) {
            if (!g.is_object()) throw SchemaError("generator must be an object map");
            std::vector<int> perm(s.points.size(), -1);
            for (const auto& [from, to] : g.items()) {
                const int a = s.id_of(from), b = s.id_of(require_string(to, "generator image"));
                if (a < 0 || b < 0) throw SchemaError("generator mentions unknown point");
                perm[a] = b;
            }
            for (int v : perm)
                if (v < 0) throw SchemaError("generator must map every point");
            s.generators.push_back(std::move(perm));
        }
    }
    validate_order_with_action(s);
    return s;
}

// ----- solver outcomes -----

inline Json solve_outcome(const SolveOutcome& out, const SigmaPoly& f, const HahnVector& d,
                          const HahnModel& m) {
    const char* status = out.status == SolveStatus::Solved
                             ? "solved"
                             : out.status == SolveStatus::Residual ? "residual" : "stuck";
    Json j{{"outcome", status},
           {"partial", vector(out.partial)},
           {"remainder", vector(out.remainder)},
           {"steps", out.steps},
           {"verified",
            out.status == SolveStatus::Solved
                ? verify_solution(f, out.partial, d, m)
                : vec_add(sp_eval(f, out.partial, m), out.remainder) == d}};
    if (!out.stuck_reason.empty()) j["reason"] = out.stuck_reason;
    return j;
}

}  // namespace jio

}  // namespace ovsa
