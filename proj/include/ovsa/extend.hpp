#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "cuts.hpp"
#include "errors.hpp"
#include "hahn.hpp"
#include "sigmapoly.hpp"

namespace ovsa {

// ---------------------------------------------------------------------------
// Orbit adjunction at +infinity: a fresh Z-indexed block above the whole
// model, with sigma acting on it by shift. The block is reverse-ordered so
// that sigma(e'_i) = e'_{i+1} yields an increasing sequence cofinal at the
// top of the extension.
// ---------------------------------------------------------------------------

struct ShiftOrbitExtension {
    HahnModel model;

    OrdElem orbit_index(long long i) const { return elem_left(elem_at(i)); }
    HahnVector orbit(long long i) const { return vec_unit(model, orbit_index(i)); }
    HahnVector embed(const HahnVector& v) const { return embed_concat(model, true, v); }
};

inline ShiftOrbitExtension adjoin_shift_orbit(const HahnModel& m) {
    HahnModel out(order_concat(order_int_reversed(), m.index()),
                  auto_concat(auto_shift(1), m.tau()),
                  scale_per_block(scale_constant(Rat(1)), m.scaling()));
    return {out};
}

// ---------------------------------------------------------------------------
// Lexicographic prepending of Z with forward or backward shift; the old
// model embeds as the right block and keeps its ordering.
// ---------------------------------------------------------------------------

struct LexPrependExtension {
    HahnModel model;

    OrdElem new_index(long long i) const { return elem_left(elem_at(i)); }
    HahnVector new_unit(long long i) const { return vec_unit(model, new_index(i)); }
    HahnVector embed(const HahnVector& v) const { return embed_concat(model, true, v); }
};

inline LexPrependExtension lex_prepend(const HahnModel& m, bool forward) {
    HahnModel out(order_concat(order_int(), m.index()),
                  auto_concat(auto_shift(forward ? 1 : -1), m.tau()),
                  scale_per_block(scale_constant(Rat(1)), m.scaling()));
    return {out};
}

// ---------------------------------------------------------------------------
// Formal adjunction of a degree-1 solution. The extension carrier is
// base + Q*b'; sigma is extended by sigma(b') = lambda*b' + w and the order
// places b' at the given cut of the base:
//   Case 1: b' < c iff some right-part element lies at or below c;
//   Case 2: b' > c iff some left-part element lies at or above c.
// The normalized surface (lambda = 1, w = -a) realizes x - sigma(x) - a = 0;
// the general lambda > 0 form realizes sigma(x) - lambda*x = w, which is
// what the paper's sigma-rescaling reduction amounts to.
// ---------------------------------------------------------------------------

template <class Base>
struct ExtElem {
    typename Base::Element base;
    Rat gen;  // coefficient of b'

    bool operator==(const ExtElem& o) const { return base == o.base && gen == o.gen; }
    bool operator!=(const ExtElem& o) const { return !(*this == o); }
};

template <OvsaModelType Base>
class ExtModel {
public:
    using Element = ExtElem<Base>;

    ExtModel(Base base, ModelCut<Base> cut, CaseFlag flag, Rat lambda,
             typename Base::Element sigma_shift)
        : base_(std::move(base)),
          cut_(std::move(cut)),
          flag_(flag),
          lambda_(std::move(lambda)),
          shift_(std::move(sigma_shift)) {
        if (lambda_ <= 0) throw NonPositiveScaleError();
    }

    const Base& base() const { return base_; }
    const ModelCut<Base>& cut() const { return cut_; }
    CaseFlag case_flag() const { return flag_; }
    const Rat& lambda() const { return lambda_; }
    const typename Base::Element& sigma_shift() const { return shift_; }

    Element embed(const typename Base::Element& v) const { return {v, Rat(0)}; }
    Element generator() const { return {base_.zero(), Rat(1)}; }

    Element zero() const { return {base_.zero(), Rat(0)}; }
    Element add(const Element& v, const Element& w) const {
        return {base_.add(v.base, w.base), v.gen + w.gen};
    }
    Element neg(const Element& v) const { return {base_.neg(v.base), -v.gen}; }
    Element sub(const Element& v, const Element& w) const { return add(v, neg(w)); }
    Element scale(const Rat& r, const Element& v) const {
        return {base_.scale(r, v.base), r * v.gen};
    }

    // b' versus a base element, by the case rule. Never equal.
    Ord generator_vs(const typename Base::Element& w) const {
        if (flag_ == CaseFlag::Case1)
            return model_cut_exists_right_below(cut_, base_, w) ? Ord::LT : Ord::GT;
        return model_cut_exists_left_above(cut_, base_, w) ? Ord::GT : Ord::LT;
    }

    Ord compare(const Element& v, const Element& w) const {
        const Element d = sub(v, w);
        if (d.gen == 0) return base_.compare(d.base, base_.zero());
        // d = rho * (b' - w0) with w0 = -d.base / rho
        const Rat rho = d.gen;
        const typename Base::Element w0 = base_.scale(Rat(-1) / rho, d.base);
        const Ord gen_ord = generator_vs(w0);
        const int s = (gen_ord == Ord::GT ? 1 : -1) * sign(rho);
        return s > 0 ? Ord::GT : Ord::LT;
    }

    Element sigma(const Element& v, long long k = 1) const {
        Element cur = v;
        for (long long m = 0; m < (k >= 0 ? k : -k); ++m)
            cur = (k >= 0) ? sigma_once(cur) : sigma_inv_once(cur);
        return cur;
    }

private:
    Base base_;
    ModelCut<Base> cut_;
    CaseFlag flag_;
    Rat lambda_;
    typename Base::Element shift_;

    // sigma(x + r b') = sigma(x) + r*w + r*lambda*b'
    Element sigma_once(const Element& v) const {
        return {base_.add(base_.sigma(v.base, 1), base_.scale(v.gen, shift_)), v.gen * lambda_};
    }
    // solve sigma(y + s b') = x + r b' for (y, s)
    Element sigma_inv_once(const Element& v) const {
        const Rat s = v.gen / lambda_;
        const typename Base::Element adjusted =
            base_.add(v.base, base_.neg(base_.scale(s, shift_)));
        return {base_.sigma(adjusted, -1), s};
    }
};

// The spec-facing constructor: f must be the normalized degree-1 shape
// x - sigma(x) - a, handed over as its sigma-part (1 - sigma) plus the
// translate a; anything else is rejected.
template <OvsaModelType Base>
ExtModel<Base> adjoin_degree1_solution(const Base& base, const SigmaPoly& sigma_part,
                                       const typename Base::Element& a, ModelCut<Base> cut,
                                       CaseFlag flag) {
    const SigmaPoly normalized({{0, Rat(1)}, {1, Rat(-1)}});
    if (sigma_part != normalized)
        throw NotNormalizedError("expected x - sigma(x); apply the scaling reductions first");
    return ExtModel<Base>(base, std::move(cut), flag, Rat(1), base.neg(a));
}

// Pipeline form: adjoin b' with sigma(b') = lambda*b' + rhs, realizing
// (sigma - lambda)(b') = rhs.
template <OvsaModelType Base>
ExtModel<Base> adjoin_scaled_degree1(const Base& base, const Rat& lambda,
                                     const typename Base::Element& rhs, ModelCut<Base> cut,
                                     CaseFlag flag) {
    return ExtModel<Base>(base, std::move(cut), flag, lambda, rhs);
}

static_assert(OvsaModelType<ExtModel<HahnModel>>);

}  // namespace ovsa
