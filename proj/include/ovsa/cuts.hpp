#pragma once

#include <optional>
#include <string>
#include <variant>

#include "errors.hpp"
#include "hahn.hpp"
#include "sigmapoly.hpp"

namespace ovsa {

// ---------------------------------------------------------------------------
// One step of greedy leading-term elimination for f(x) = remainder: find a
// source index j whose image f(e_j) has leading index exactly i0 with a
// nonzero aggregated coefficient. Candidates are j = tau^{-k}(i0) for the
// exponents k of f, tried by smallest |k| first, ties broken by smaller k.
// Shared by the solver and by the formal-zero cut side test.
// ---------------------------------------------------------------------------

struct GreedyStep {
    OrdElem source;       // j
    long long exponent;   // the k that produced j
    Rat aggregated;       // sum over k' with tau^{k'}(j) = i0 of alpha_{k'} S_{k'}(j)
};

inline std::optional<GreedyStep> greedy_candidate(const SigmaPoly& f, const HahnModel& m,
                                                  const OrdElem& i0) {
    if (f.is_zero()) throw ZeroSigmaPolyError();
    std::vector<long long> exps;
    exps.reserve(f.terms().size());
    for (const auto& [k, c] : f.terms()) exps.push_back(k);
    std::stable_sort(exps.begin(), exps.end(), [](long long a, long long b) {
        const long long aa = a < 0 ? -a : a, ab = b < 0 ? -b : b;
        return aa != ab ? aa < ab : a < b;
    });
    for (long long k : exps) {
        const OrdElem j = apply_auto_power(m.tau(), m.index(), i0, -k);
        std::optional<OrdElem> min_idx;
        for (const auto& [kp, c] : f.terms()) {
            OrdElem idx = apply_auto_power(m.tau(), m.index(), j, kp);
            if (!min_idx || compare(m.index(), idx, *min_idx) == Ord::LT) min_idx = idx;
        }
        if (!(*min_idx == i0)) continue;
        Rat agg = 0;
        for (const auto& [kp, c] : f.terms())
            if (apply_auto_power(m.tau(), m.index(), j, kp) == i0)
                agg += c * m.orbit_scale(j, kp);
        if (agg == 0) continue;
        return GreedyStep{j, k, agg};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cuts of a model carrier, with decidable side queries. Every descriptor
// here is a cut of the whole carrier, so the existential queries quantify
// over the carrier itself and the bound is its own witness.
// ---------------------------------------------------------------------------

enum class CaseFlag { Case1 = 1, Case2 = 2 };

struct CutAtMinusInf {};
struct CutAtPlusInf {};

// left part {x : x < v}
template <class M>
struct CutBelowElem {
    typename M::Element v;
};

// left part {x : x <= v}
template <class M>
struct CutAboveElem {
    typename M::Element v;
};

// The cut of a zero of f(x) = rhs for absolutely monotone f: the side of x
// is decided by the exact sign of f(x) - rhs, oriented by monotonicity.
template <class M>
struct CutZeroOfMonotone {
    SigmaPoly f;
    typename M::Element rhs;
    bool increasing;
};

// The cut of the formal greedy solution of f(x) = rhs in a Hahn model: x
// lies left of the missing zero iff the greedy leading term of the residual
// rhs - f(x) is positive. Undecidable on non-Hahn carriers.
template <class M>
struct CutFormalZero {
    SigmaPoly f;
    typename M::Element rhs;
};

// The cut immediately left or right of a convex subgroup (Hahn carriers).
template <class M>
struct CutFlankSubgroup {
    ConvexSubgroup subgroup;
    bool right_flank;
};

template <class M>
using ModelCut = std::variant<CutAtMinusInf, CutAtPlusInf, CutBelowElem<M>, CutAboveElem<M>,
                              CutZeroOfMonotone<M>, CutFormalZero<M>, CutFlankSubgroup<M>>;

template <OvsaModelType M>
Side model_cut_side(const ModelCut<M>& cut, const M& m, const typename M::Element& x) {
    using E = typename M::Element;
    return std::visit(
        [&](const auto& c) -> Side {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CutAtMinusInf>) {
                return Side::Right;
            } else if constexpr (std::is_same_v<T, CutAtPlusInf>) {
                return Side::Left;
            } else if constexpr (std::is_same_v<T, CutBelowElem<M>>) {
                return m.compare(x, c.v) == Ord::LT ? Side::Left : Side::Right;
            } else if constexpr (std::is_same_v<T, CutAboveElem<M>>) {
                return m.compare(x, c.v) != Ord::GT ? Side::Left : Side::Right;
            } else if constexpr (std::is_same_v<T, CutZeroOfMonotone<M>>) {
                const E val = sp_eval(c.f, x, m);
                const Ord o = m.compare(val, c.rhs);
                if (o == Ord::EQ)
                    throw CutQueryUndecidableError("query point solves the equation exactly");
                const bool below = (o == Ord::LT);
                return (below == c.increasing) ? Side::Left : Side::Right;
            } else if constexpr (std::is_same_v<T, CutFormalZero<M>>) {
                if constexpr (std::is_same_v<M, HahnModel>) {
                    const HahnVector residual = vec_sub(c.rhs, sp_eval(c.f, x, m));
                    if (residual.is_zero())
                        throw CutQueryUndecidableError("query point solves the equation exactly");
                    const auto step = greedy_candidate(c.f, m, valuation(residual));
                    if (!step)
                        throw CutQueryUndecidableError("greedy step is stuck at this residual");
                    const Rat lead = residual.terms().front().second / step->aggregated;
                    return lead > 0 ? Side::Left : Side::Right;
                } else {
                    throw CutQueryUndecidableError("formal-zero cut needs a Hahn carrier");
                }
            } else {
                static_assert(std::is_same_v<T, CutFlankSubgroup<M>>);
                if constexpr (std::is_same_v<M, HahnModel>) {
                    return cut_flanking_subgroup(c.subgroup, c.right_flank, x);
                } else {
                    throw CutQueryUndecidableError("flanking cut needs a Hahn carrier");
                }
            }
        },
        cut);
}

// Some right-part element <= bound, if one exists. All descriptors above cut
// the full carrier, so by downward closure the bound itself is the witness
// exactly when it lies on the right.
template <OvsaModelType M>
std::optional<typename M::Element> model_cut_exists_right_below(const ModelCut<M>& cut, const M& m,
                                                                const typename M::Element& bound) {
    if (model_cut_side(cut, m, bound) == Side::Right) return bound;
    return std::nullopt;
}

template <OvsaModelType M>
std::optional<typename M::Element> model_cut_exists_left_above(const ModelCut<M>& cut, const M& m,
                                                               const typename M::Element& bound) {
    if (model_cut_side(cut, m, bound) == Side::Left) return bound;
    return std::nullopt;
}

}  // namespace ovsa
