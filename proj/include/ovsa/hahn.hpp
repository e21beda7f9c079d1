#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "orders.hpp"
#include "rational.hpp"

namespace ovsa {

// ---------------------------------------------------------------------------
// Scaling maps i -> Q_{>0}, in descriptor form so that orbit products stay
// exactly computable and the model serializes.
// ---------------------------------------------------------------------------

enum class ScaleKind { Constant, FiniteTable, PerBlock };

struct ScalingNode;
using Scaling = std::shared_ptr<const ScalingNode>;

struct ScalingNode {
    ScaleKind kind;
    Rat value;               // Constant
    std::vector<Rat> table;  // FiniteTable
    Scaling left, right;     // PerBlock
};

inline Scaling scale_constant(const Rat& r) {
    if (r <= 0) throw NonPositiveScaleError();
    return std::make_shared<ScalingNode>(ScalingNode{ScaleKind::Constant, r, {}, nullptr, nullptr});
}
inline Scaling scale_table(std::vector<Rat> values) {
    for (const auto& v : values)
        if (v <= 0) throw NonPositiveScaleError();
    return std::make_shared<ScalingNode>(
        ScalingNode{ScaleKind::FiniteTable, Rat(0), std::move(values), nullptr, nullptr});
}
inline Scaling scale_per_block(Scaling l, Scaling r) {
    return std::make_shared<ScalingNode>(
        ScalingNode{ScaleKind::PerBlock, Rat(0), {}, std::move(l), std::move(r)});
}

inline bool scaling_equal(const Scaling& a, const Scaling& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ScaleKind::Constant: return a->value == b->value;
        case ScaleKind::FiniteTable: return a->table == b->table;
        case ScaleKind::PerBlock:
            return scaling_equal(a->left, b->left) && scaling_equal(a->right, b->right);
    }
    return false;
}

inline void check_scaling(const IndexOrder& order, const Scaling& s) {
    if (!s) throw SchemaError("missing scaling");
    switch (s->kind) {
        case ScaleKind::Constant: return;
        case ScaleKind::FiniteTable:
            if (order->kind != OrderKind::Finite ||
                static_cast<long long>(s->table.size()) != order->size)
                throw SchemaError("scaling table does not match a Finite block");
            return;
        case ScaleKind::PerBlock:
            if (order->kind != OrderKind::Concat)
                throw SchemaError("per-block scaling requires a Concat order");
            check_scaling(order->left, s->left);
            check_scaling(order->right, s->right);
            return;
    }
}

inline Rat scaling_at(const Scaling& s, const IndexOrder& order, const OrdElem& i) {
    const ScalingNode* snode = s.get();
    const IndexOrderNode* onode = order.get();
    std::size_t d = 0;
    for (;;) {
        switch (snode->kind) {
            case ScaleKind::Constant: return snode->value;
            case ScaleKind::FiniteTable:
                if (i.pos < 0 || i.pos >= static_cast<long long>(snode->table.size()))
                    throw ElementNotInOrderError(elem_to_string(i));
                return snode->table[static_cast<std::size_t>(i.pos)];
            case ScaleKind::PerBlock: {
                if (d >= i.path.size() || onode->kind != OrderKind::Concat)
                    throw ElementNotInOrderError(elem_to_string(i));
                const bool right = i.path[d] != 0;
                snode = right ? snode->right.get() : snode->left.get();
                onode = right ? onode->right.get() : onode->left.get();
                ++d;
                continue;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Hahn models: finitely supported vectors over an index order, with the
// automorphism sigma(e_i) = s(i) * e_{tau(i)}.
// ---------------------------------------------------------------------------

struct HahnModelData {
    IndexOrder index;
    OrderAuto tau;
    Scaling s;
};

class HahnVector;

class HahnModel {
public:
    using Element = HahnVector;

    HahnModel() = default;
    HahnModel(IndexOrder index, OrderAuto tau, Scaling s)
        : data_(std::make_shared<const HahnModelData>(
              HahnModelData{std::move(index), std::move(tau), std::move(s)})) {
        check_auto(data_->index, data_->tau);
        check_scaling(data_->index, data_->s);
    }

    const IndexOrder& index() const { return data_->index; }
    const OrderAuto& tau() const { return data_->tau; }
    const Scaling& scaling() const { return data_->s; }
    bool valid() const { return data_ != nullptr; }

    bool same_as(const HahnModel& o) const {
        if (data_ == o.data_) return true;
        if (!data_ || !o.data_) return false;
        return order_equal(data_->index, o.data_->index) && auto_equal(data_->tau, o.data_->tau) &&
               scaling_equal(data_->s, o.data_->s);
    }

    // Product of scalings along the tau-orbit segment from i, so that
    // sigma^k(e_i) = orbit_scale(i, k) * e_{tau^k(i)}.
    Rat orbit_scale(const OrdElem& i, long long k) const {
        Rat prod = 1;
        if (k >= 0) {
            OrdElem cur = i;
            for (long long m = 0; m < k; ++m) {
                prod *= scaling_at(data_->s, data_->index, cur);
                cur = apply_auto_power(data_->tau, data_->index, cur, 1);
            }
        } else {
            OrdElem cur = i;
            for (long long m = 0; m < -k; ++m) {
                cur = apply_auto_power(data_->tau, data_->index, cur, -1);
                prod /= scaling_at(data_->s, data_->index, cur);
            }
        }
        return prod;
    }

    // Model-concept surface (defined after HahnVector below).
    HahnVector zero() const;
    HahnVector unit(const OrdElem& i, const Rat& coeff = Rat(1)) const;
    HahnVector add(const HahnVector& v, const HahnVector& w) const;
    HahnVector neg(const HahnVector& v) const;
    HahnVector scale(const Rat& r, const HahnVector& v) const;
    Ord compare(const HahnVector& v, const HahnVector& w) const;
    HahnVector sigma(const HahnVector& v, long long k = 1) const;

private:
    std::shared_ptr<const HahnModelData> data_;
};

// Finitely supported vector; terms sorted ascending in the index order, no
// zero coefficients stored.
class HahnVector {
public:
    using Term = std::pair<OrdElem, Rat>;

    HahnVector() = default;
    explicit HahnVector(HahnModel model) : model_(std::move(model)) {}
    HahnVector(HahnModel model, std::vector<Term> terms)
        : model_(std::move(model)), terms_(std::move(terms)) {
        normalize();
    }

    const HahnModel& model() const { return model_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }

    Rat coeff_at(const OrdElem& i) const {
        for (const auto& [idx, c] : terms_)
            if (idx == i) return c;
        return Rat(0);
    }

    bool operator==(const HahnVector& o) const { return terms_ == o.terms_; }
    bool operator!=(const HahnVector& o) const { return !(*this == o); }

private:
    HahnModel model_;
    std::vector<Term> terms_;

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
            return compare(model_.index(), a.first, b.first) == Ord::LT;
        });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second += t.second;
            else
                out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const Term& t) { return t.second == 0; }),
                  out.end());
        terms_ = std::move(out);
    }
};

namespace detail {
inline void require_same_model(const HahnVector& v, const HahnVector& w) {
    if (!v.model().same_as(w.model())) throw ModelMismatchError();
}
}  // namespace detail

inline HahnVector vec_zero(const HahnModel& m) { return HahnVector(m); }

inline HahnVector vec_unit(const HahnModel& m, const OrdElem& i, const Rat& coeff = Rat(1)) {
    check_element(m.index(), i);
    if (coeff == 0) return HahnVector(m);
    return HahnVector(m, {{i, coeff}});
}

inline HahnVector vec_add(const HahnVector& v, const HahnVector& w) {
    detail::require_same_model(v, w);
    const IndexOrder& order = v.model().index();
    std::vector<HahnVector::Term> out;
    out.reserve(v.terms().size() + w.terms().size());
    std::size_t a = 0, b = 0;
    while (a < v.terms().size() && b < w.terms().size()) {
        const Ord o = compare(order, v.terms()[a].first, w.terms()[b].first);
        if (o == Ord::LT)
            out.push_back(v.terms()[a++]);
        else if (o == Ord::GT)
            out.push_back(w.terms()[b++]);
        else {
            Rat c = v.terms()[a].second + w.terms()[b].second;
            if (c != 0) out.push_back({v.terms()[a].first, std::move(c)});
            ++a, ++b;
        }
    }
    for (; a < v.terms().size(); ++a) out.push_back(v.terms()[a]);
    for (; b < w.terms().size(); ++b) out.push_back(w.terms()[b]);
    return HahnVector(v.model(), std::move(out));
}

inline HahnVector vec_neg(const HahnVector& v) {
    std::vector<HahnVector::Term> out(v.terms());
    for (auto& t : out) t.second = -t.second;
    return HahnVector(v.model(), std::move(out));
}

inline HahnVector vec_sub(const HahnVector& v, const HahnVector& w) {
    return vec_add(v, vec_neg(w));
}

inline HahnVector vec_scale(const Rat& r, const HahnVector& v) {
    if (r == 0) return HahnVector(v.model());
    std::vector<HahnVector::Term> out(v.terms());
    for (auto& t : out) t.second *= r;
    return HahnVector(v.model(), std::move(out));
}

// Hahn ordering: the sign of a nonzero vector is the sign of the coefficient
// at its minimal support index.
inline int vec_sign(const HahnVector& v) {
    if (v.is_zero()) return 0;
    return sign(v.terms().front().second);
}

inline Ord vec_compare(const HahnVector& v, const HahnVector& w) {
    detail::require_same_model(v, w);
    const int s = vec_sign(vec_sub(v, w));
    return s < 0 ? Ord::LT : s > 0 ? Ord::GT : Ord::EQ;
}

inline bool vec_lt(const HahnVector& v, const HahnVector& w) {
    return vec_compare(v, w) == Ord::LT;
}

inline HahnVector vec_abs(const HahnVector& v) { return vec_sign(v) < 0 ? vec_neg(v) : v; }

// sigma^k applied termwise: e_i -> orbit_scale(i,k) e_{tau^k(i)}. tau^k is
// order-preserving, so the term list stays sorted.
inline HahnVector sigma_apply(const HahnModel& m, const HahnVector& v, long long k = 1) {
    if (!v.model().same_as(m)) throw ModelMismatchError();
    std::vector<HahnVector::Term> out;
    out.reserve(v.terms().size());
    for (const auto& [i, c] : v.terms())
        out.push_back({apply_auto_power(m.tau(), m.index(), i, k), c * m.orbit_scale(i, k)});
    return HahnVector(m, std::move(out));
}

// ---------------------------------------------------------------------------
// Archimedean structure.
// ---------------------------------------------------------------------------

inline OrdElem valuation(const HahnVector& v) {
    if (v.is_zero()) throw ZeroVectorError();
    return v.terms().front().first;
}

// v << w: v is infinitesimal relative to w (later valuation index).
inline bool rel_much_smaller(const HahnVector& v, const HahnVector& w) {
    detail::require_same_model(v, w);
    return compare(v.model().index(), valuation(v), valuation(w)) == Ord::GT;
}

inline bool rel_asymp(const HahnVector& v, const HahnVector& w) {
    detail::require_same_model(v, w);
    return valuation(v) == valuation(w);
}

// v ~ w iff v - w << w (or v = w).
inline bool rel_sim(const HahnVector& v, const HahnVector& w) {
    detail::require_same_model(v, w);
    if (v.is_zero() || w.is_zero()) throw ZeroVectorError();
    const HahnVector d = vec_sub(v, w);
    if (d.is_zero()) return true;
    return rel_much_smaller(d, w);
}

inline HahnVector HahnModel::zero() const { return vec_zero(*this); }
inline HahnVector HahnModel::unit(const OrdElem& i, const Rat& coeff) const {
    return vec_unit(*this, i, coeff);
}
inline HahnVector HahnModel::add(const HahnVector& v, const HahnVector& w) const {
    return vec_add(v, w);
}
inline HahnVector HahnModel::neg(const HahnVector& v) const { return vec_neg(v); }
inline HahnVector HahnModel::scale(const Rat& r, const HahnVector& v) const {
    return vec_scale(r, v);
}
inline Ord HahnModel::compare(const HahnVector& v, const HahnVector& w) const {
    return vec_compare(v, w);
}
inline HahnVector HahnModel::sigma(const HahnVector& v, long long k) const {
    return sigma_apply(*this, v, k);
}

// ---------------------------------------------------------------------------
// Standard constructions.
// ---------------------------------------------------------------------------

struct PrependedLine {
    HahnModel model;
    HahnVector line_unit;  // the new unit, above every embedded old vector
};

// Lexicographically prepend a scaled line: sigma(l) = c*l, l > old model.
inline PrependedLine prepend_scaled_line(const HahnModel& m, const Rat& c) {
    if (c <= 0) throw NonPositiveScaleError();
    HahnModel out(order_concat(order_finite(1), m.index()),
                  auto_concat(auto_identity(), m.tau()),
                  scale_per_block(scale_table({c}), m.scaling()));
    return {out, vec_unit(out, elem_left(elem_at(0)))};
}

inline HahnModel lex_product(const HahnModel& m1, const HahnModel& m2) {
    return HahnModel(order_concat(m1.index(), m2.index()), auto_concat(m1.tau(), m2.tau()),
                     scale_per_block(m1.scaling(), m2.scaling()));
}

// Embed a vector of one factor into a Concat-indexed model by tagging its
// support. The target must have the factor's index as the chosen block.
inline HahnVector embed_concat(const HahnModel& target, bool right_block, const HahnVector& v) {
    std::vector<HahnVector::Term> out(v.terms());
    for (auto& t : out) t.first.path.insert(t.first.path.begin(), right_block ? 1 : 0);
    return HahnVector(target, std::move(out));
}

// ---------------------------------------------------------------------------
// Convex subgroups given by a final segment of the index order: the vectors
// supported entirely on the right part of the cut (plus zero).
// ---------------------------------------------------------------------------

struct ConvexSubgroup {
    HahnModel model;
    IndexCut final_segment;
};

inline ConvexSubgroup convex_subgroup(const HahnModel& m, IndexCut final_segment) {
    return {m, std::move(final_segment)};
}

inline bool subgroup_contains(const ConvexSubgroup& c, const HahnVector& v) {
    if (!v.model().same_as(c.model)) throw ModelMismatchError();
    for (const auto& [i, coeff] : v.terms())
        if (cut_side(c.final_segment, c.model.index(), i) == Side::Left) return false;
    return true;
}

// Sampled check that the defining final segment is closed under tau and its
// inverse, which is what sigma-invariance of the subgroup amounts to.
inline bool subgroup_sigma_invariant_sampled(const ConvexSubgroup& c,
                                             const std::vector<OrdElem>& samples) {
    for (const auto& i : samples) {
        const Side s = cut_side(c.final_segment, c.model.index(), i);
        for (long long k : {-1LL, 1LL}) {
            const OrdElem j = apply_auto_power(c.model.tau(), c.model.index(), i, k);
            if (cut_side(c.final_segment, c.model.index(), j) != s) return false;
        }
    }
    return true;
}

// Side test for the cut immediately to the right of C: the left part is
// { x : x <= some c in C }.
inline Side flank_right_side(const ConvexSubgroup& c, const HahnVector& v) {
    if (!v.model().same_as(c.model)) throw ModelMismatchError();
    if (vec_sign(v) <= 0) return Side::Left;
    return cut_side(c.final_segment, c.model.index(), valuation(v)) == Side::Right ? Side::Left
                                                                                   : Side::Right;
}

// Side test for the cut immediately to the left of C: the right part is
// { x : x >= some c in C }.
inline Side flank_left_side(const ConvexSubgroup& c, const HahnVector& v) {
    if (!v.model().same_as(c.model)) throw ModelMismatchError();
    if (vec_sign(v) >= 0) return Side::Right;
    return cut_side(c.final_segment, c.model.index(), valuation(v)) == Side::Right ? Side::Right
                                                                                   : Side::Left;
}

inline Side cut_flanking_subgroup(const ConvexSubgroup& c, bool right_flank,
                                  const HahnVector& v) {
    return right_flank ? flank_right_side(c, v) : flank_left_side(c, v);
}

// ---------------------------------------------------------------------------
// Model concept: what generic sigma-polynomial and formula code needs.
// ---------------------------------------------------------------------------

template <class M>
concept OvsaModelType = requires(const M& m, const typename M::Element& v, const Rat& r,
                                 long long k) {
    { m.zero() } -> std::convertible_to<typename M::Element>;
    { m.add(v, v) } -> std::convertible_to<typename M::Element>;
    { m.neg(v) } -> std::convertible_to<typename M::Element>;
    { m.scale(r, v) } -> std::convertible_to<typename M::Element>;
    { m.compare(v, v) } -> std::convertible_to<Ord>;
    { m.sigma(v, k) } -> std::convertible_to<typename M::Element>;
};

static_assert(OvsaModelType<HahnModel>);

}  // namespace ovsa
