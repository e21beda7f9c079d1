#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ovsa {

enum class Ord { LT, EQ, GT };

inline Ord ord_of_int(long long a, long long b) {
    return a < b ? Ord::LT : a > b ? Ord::GT : Ord::EQ;
}

inline Ord ord_flip(Ord o) { return o == Ord::LT ? Ord::GT : o == Ord::GT ? Ord::LT : Ord::EQ; }

// ---------------------------------------------------------------------------
// Index orders: composable computable linear orders used as Hahn index sets.
// Concat places every left element strictly before every right element.
// ---------------------------------------------------------------------------

enum class OrderKind { Finite, Int, IntReversed, Concat };

struct IndexOrderNode;
using IndexOrder = std::shared_ptr<const IndexOrderNode>;

struct IndexOrderNode {
    OrderKind kind;
    long long size = 0;  // Finite only
    IndexOrder left, right;
};

inline IndexOrder order_finite(long long n) {
    if (n <= 0) throw SchemaError("finite order needs n >= 1");
    return std::make_shared<IndexOrderNode>(IndexOrderNode{OrderKind::Finite, n, nullptr, nullptr});
}
inline IndexOrder order_int() {
    return std::make_shared<IndexOrderNode>(IndexOrderNode{OrderKind::Int, 0, nullptr, nullptr});
}
inline IndexOrder order_int_reversed() {
    return std::make_shared<IndexOrderNode>(
        IndexOrderNode{OrderKind::IntReversed, 0, nullptr, nullptr});
}
inline IndexOrder order_concat(IndexOrder l, IndexOrder r) {
    return std::make_shared<IndexOrderNode>(
        IndexOrderNode{OrderKind::Concat, 0, std::move(l), std::move(r)});
}

inline bool order_equal(const IndexOrder& a, const IndexOrder& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case OrderKind::Finite: return a->size == b->size;
        case OrderKind::Int:
        case OrderKind::IntReversed: return true;
        case OrderKind::Concat:
            return order_equal(a->left, b->left) && order_equal(a->right, b->right);
    }
    return false;
}

// An element is a path of left/right choices through the Concat nodes plus a
// position in the leaf block.
struct OrdElem {
    std::vector<std::uint8_t> path;  // 0 = left, 1 = right
    long long pos = 0;

    bool operator==(const OrdElem& o) const { return path == o.path && pos == o.pos; }
    bool operator!=(const OrdElem& o) const { return !(*this == o); }
};

inline OrdElem elem_at(long long pos) { return OrdElem{{}, pos}; }
inline OrdElem elem_left(OrdElem e) {
    e.path.insert(e.path.begin(), 0);
    return e;
}
inline OrdElem elem_right(OrdElem e) {
    e.path.insert(e.path.begin(), 1);
    return e;
}

inline std::string elem_to_string(const OrdElem& e) {
    std::string s;
    for (auto p : e.path) s += p ? "R" : "L";
    if (!s.empty()) s += ":";
    return s + std::to_string(e.pos);
}

namespace detail {
inline const IndexOrderNode* descend(const IndexOrder& order, const OrdElem& e) {
    const IndexOrderNode* node = order.get();
    for (auto step : e.path) {
        if (!node || node->kind != OrderKind::Concat)
            throw ElementNotInOrderError(elem_to_string(e));
        node = step ? node->right.get() : node->left.get();
    }
    if (!node || node->kind == OrderKind::Concat) throw ElementNotInOrderError(elem_to_string(e));
    return node;
}
}  // namespace detail

inline void check_element(const IndexOrder& order, const OrdElem& e) {
    const IndexOrderNode* leaf = detail::descend(order, e);
    if (leaf->kind == OrderKind::Finite && (e.pos < 0 || e.pos >= leaf->size))
        throw ElementNotInOrderError(elem_to_string(e));
}

inline Ord compare(const IndexOrder& order, const OrdElem& i, const OrdElem& j) {
    check_element(order, i);
    check_element(order, j);
    const IndexOrderNode* node = order.get();
    std::size_t d = 0;
    for (;;) {
        if (node->kind == OrderKind::Concat) {
            const std::uint8_t si = i.path[d], sj = j.path[d];
            if (si != sj) return si < sj ? Ord::LT : Ord::GT;
            node = si ? node->right.get() : node->left.get();
            ++d;
            continue;
        }
        switch (node->kind) {
            case OrderKind::Finite:
            case OrderKind::Int: return ord_of_int(i.pos, j.pos);
            case OrderKind::IntReversed: return ord_of_int(j.pos, i.pos);
            default: throw ElementNotInOrderError();
        }
    }
}

// A canonical element, used for sampling and witnesses.
inline OrdElem first_element(const IndexOrder& order) {
    const IndexOrderNode* node = order.get();
    OrdElem e;
    while (node->kind == OrderKind::Concat) {
        e.path.push_back(0);
        node = node->left.get();
    }
    e.pos = 0;
    return e;
}

// ---------------------------------------------------------------------------
// Order automorphisms. Finite blocks only admit the identity; Int and
// IntReversed blocks admit shifts; Concat acts blockwise.
// ---------------------------------------------------------------------------

enum class AutoKind { Identity, Shift, Concat };

struct OrderAutoNode;
using OrderAuto = std::shared_ptr<const OrderAutoNode>;

struct OrderAutoNode {
    AutoKind kind;
    long long shift = 0;
    OrderAuto left, right;
};

inline OrderAuto auto_identity() {
    return std::make_shared<OrderAutoNode>(OrderAutoNode{AutoKind::Identity, 0, nullptr, nullptr});
}
inline OrderAuto auto_shift(long long k) {
    return std::make_shared<OrderAutoNode>(OrderAutoNode{AutoKind::Shift, k, nullptr, nullptr});
}
inline OrderAuto auto_concat(OrderAuto l, OrderAuto r) {
    return std::make_shared<OrderAutoNode>(
        OrderAutoNode{AutoKind::Concat, 0, std::move(l), std::move(r)});
}

inline bool auto_equal(const OrderAuto& a, const OrderAuto& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case AutoKind::Identity: return true;
        case AutoKind::Shift: return a->shift == b->shift;
        case AutoKind::Concat: return auto_equal(a->left, b->left) && auto_equal(a->right, b->right);
    }
    return false;
}

inline void check_auto(const IndexOrder& order, const OrderAuto& a) {
    if (!a) throw SchemaError("missing automorphism");
    switch (a->kind) {
        case AutoKind::Identity: return;
        case AutoKind::Shift:
            if (order->kind != OrderKind::Int && order->kind != OrderKind::IntReversed)
                throw SchemaError("shift automorphism requires an Int or IntReversed block");
            return;
        case AutoKind::Concat:
            if (order->kind != OrderKind::Concat)
                throw SchemaError("blockwise automorphism requires a Concat order");
            check_auto(order->left, a->left);
            check_auto(order->right, a->right);
            return;
    }
}

// tau^k(i), computed structurally; k may be any integer.
inline OrdElem apply_auto_power(const OrderAuto& a, const IndexOrder& order, const OrdElem& i,
                                long long k) {
    check_element(order, i);
    const OrderAutoNode* anode = a.get();
    const IndexOrderNode* onode = order.get();
    OrdElem out = i;
    std::size_t d = 0;
    for (;;) {
        switch (anode->kind) {
            case AutoKind::Identity: return out;
            case AutoKind::Shift:
                if (onode->kind != OrderKind::Int && onode->kind != OrderKind::IntReversed)
                    throw SchemaError("shift automorphism on a non-Int block");
                out.pos += k * anode->shift;
                return out;
            case AutoKind::Concat: {
                if (d >= out.path.size() || onode->kind != OrderKind::Concat)
                    throw ElementNotInOrderError(elem_to_string(i));
                const bool right = out.path[d] != 0;
                anode = right ? anode->right.get() : anode->left.get();
                onode = right ? onode->right.get() : onode->left.get();
                ++d;
                continue;
            }
        }
    }
}

inline OrdElem apply_auto(const OrderAuto& a, const IndexOrder& order, const OrdElem& i) {
    return apply_auto_power(a, order, i, 1);
}

// ---------------------------------------------------------------------------
// Cuts of an index order, as a closed descriptor grammar with decidable
// side-queries. The left part is always downward closed.
// ---------------------------------------------------------------------------

enum class CutKind {
    AtMinusInfinity,
    AtPlusInfinity,
    BelowElement,  // left part {j : j < elem}
    AboveElement,  // left part {j : j <= elem}
    ConcatSeam,    // left part = left block of a Concat order
    ImageUnderAuto
};

enum class Side { Left, Right };

struct IndexCutNode;
using IndexCut = std::shared_ptr<const IndexCutNode>;

struct IndexCutNode {
    CutKind kind;
    OrdElem elem;
    IndexCut inner;
    OrderAuto map;
    long long power = 0;
};

inline IndexCut cut_at_minus_infinity() {
    return std::make_shared<IndexCutNode>(IndexCutNode{CutKind::AtMinusInfinity, {}, nullptr, nullptr, 0});
}
inline IndexCut cut_at_plus_infinity() {
    return std::make_shared<IndexCutNode>(IndexCutNode{CutKind::AtPlusInfinity, {}, nullptr, nullptr, 0});
}
inline IndexCut cut_below_element(OrdElem e) {
    return std::make_shared<IndexCutNode>(IndexCutNode{CutKind::BelowElement, std::move(e), nullptr, nullptr, 0});
}
inline IndexCut cut_above_element(OrdElem e) {
    return std::make_shared<IndexCutNode>(IndexCutNode{CutKind::AboveElement, std::move(e), nullptr, nullptr, 0});
}
inline IndexCut cut_concat_seam() {
    return std::make_shared<IndexCutNode>(IndexCutNode{CutKind::ConcatSeam, {}, nullptr, nullptr, 0});
}
inline IndexCut cut_image_under_auto(IndexCut inner, OrderAuto map, long long power) {
    return std::make_shared<IndexCutNode>(
        IndexCutNode{CutKind::ImageUnderAuto, {}, std::move(inner), std::move(map), power});
}

inline Side cut_side(const IndexCut& c, const IndexOrder& order, const OrdElem& i) {
    check_element(order, i);
    switch (c->kind) {
        case CutKind::AtMinusInfinity: return Side::Right;
        case CutKind::AtPlusInfinity: return Side::Left;
        case CutKind::BelowElement:
            return compare(order, i, c->elem) == Ord::LT ? Side::Left : Side::Right;
        case CutKind::AboveElement:
            return compare(order, i, c->elem) != Ord::GT ? Side::Left : Side::Right;
        case CutKind::ConcatSeam:
            if (order->kind != OrderKind::Concat || i.path.empty())
                throw SchemaError("seam cut requires a Concat order");
            return i.path.front() == 0 ? Side::Left : Side::Right;
        case CutKind::ImageUnderAuto:
            return cut_side(c->inner, order, apply_auto_power(c->map, order, i, -c->power));
    }
    throw SchemaError("bad cut");
}

// Some right-part element <= bound, if one exists.
inline std::optional<OrdElem> cut_exists_right_below(const IndexCut& c, const IndexOrder& order,
                                                     const OrdElem& bound) {
    check_element(order, bound);
    switch (c->kind) {
        case CutKind::AtMinusInfinity: return bound;
        case CutKind::AtPlusInfinity: return std::nullopt;
        case CutKind::BelowElement:
            // right part starts at elem
            if (compare(order, c->elem, bound) != Ord::GT) return c->elem;
            return std::nullopt;
        case CutKind::AboveElement:
            if (compare(order, bound, c->elem) == Ord::GT) return bound;
            return std::nullopt;
        case CutKind::ConcatSeam:
            if (!bound.path.empty() && bound.path.front() == 1) return bound;
            return std::nullopt;
        case CutKind::ImageUnderAuto: {
            auto inner = cut_exists_right_below(c->inner, order,
                                                apply_auto_power(c->map, order, bound, -c->power));
            if (!inner) return std::nullopt;
            return apply_auto_power(c->map, order, *inner, c->power);
        }
    }
    throw SchemaError("bad cut");
}

// Some left-part element >= bound, if one exists.
inline std::optional<OrdElem> cut_exists_left_above(const IndexCut& c, const IndexOrder& order,
                                                    const OrdElem& bound) {
    check_element(order, bound);
    switch (c->kind) {
        case CutKind::AtMinusInfinity: return std::nullopt;
        case CutKind::AtPlusInfinity: return bound;
        case CutKind::BelowElement:
            if (compare(order, bound, c->elem) == Ord::LT) return bound;
            return std::nullopt;
        case CutKind::AboveElement:
            if (compare(order, bound, c->elem) != Ord::GT) return bound;
            return std::nullopt;
        case CutKind::ConcatSeam:
            if (!bound.path.empty() && bound.path.front() == 0) return bound;
            return std::nullopt;
        case CutKind::ImageUnderAuto: {
            auto inner = cut_exists_left_above(c->inner, order,
                                               apply_auto_power(c->map, order, bound, -c->power));
            if (!inner) return std::nullopt;
            return apply_auto_power(c->map, order, *inner, c->power);
        }
    }
    throw SchemaError("bad cut");
}

}  // namespace ovsa
