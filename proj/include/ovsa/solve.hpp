#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cuts.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "hahn.hpp"
#include "sigmapoly.hpp"

namespace ovsa {

// ---------------------------------------------------------------------------
// Greedy leading-term solver for f(x) = d over finitely supported vectors.
// Each step cancels the leading term of the remainder exactly; the residual
// invariant f(partial) + remainder = d holds after every step. The solver is
// a verified heuristic, not a decision procedure: solutions with infinite
// support show up as Residual, never as a false claim either way.
// ---------------------------------------------------------------------------

enum class SolveStatus { Solved, Residual, Stuck };

struct SolveOutcome {
    SolveStatus status;
    HahnVector partial;
    HahnVector remainder;
    std::size_t steps = 0;
    std::string stuck_reason;

    bool solved() const { return status == SolveStatus::Solved; }
};

inline SolveOutcome solve_exact(const SigmaPoly& f, const HahnVector& d, const HahnModel& m,
                                std::size_t cap) {
    if (f.is_zero()) throw ZeroSigmaPolyError();
    if (!d.model().same_as(m)) throw ModelMismatchError();
    HahnVector partial = vec_zero(m);
    HahnVector image = vec_zero(m);  // sp_eval(f, partial), kept incrementally
    HahnVector remainder = d;
    std::size_t steps = 0;
    while (steps < cap) {
        if (remainder.is_zero()) return {SolveStatus::Solved, partial, remainder, steps, {}};
        const OrdElem i0 = valuation(remainder);
        const auto step = greedy_candidate(f, m, i0);
        if (!step)
            return {SolveStatus::Stuck, partial, remainder, steps,
                    "no source index cancels the leading term at " + elem_to_string(i0)};
        const Rat c = remainder.terms().front().second / step->aggregated;
        const HahnVector basis = vec_unit(m, step->source, c);
        partial = vec_add(partial, basis);
        image = vec_add(image, sp_eval(f, basis, m));
        remainder = vec_sub(d, image);
        ++steps;
        // exact bookkeeping, asserted every iteration
        if (vec_add(image, remainder) != d) throw Error("internal: residual invariant broke");
        if (!remainder.is_zero() && compare(m.index(), valuation(remainder), i0) != Ord::GT)
            throw Error("internal: greedy step did not raise the valuation");
    }
    if (remainder.is_zero()) return {SolveStatus::Solved, partial, remainder, steps, {}};
    return {SolveStatus::Residual, partial, remainder, steps, {}};
}

// Independent re-check; callers use this instead of trusting the solver.
inline bool verify_solution(const SigmaPoly& f, const HahnVector& x, const HahnVector& d,
                            const HahnModel& m) {
    return sp_eval(f, x, m) == d;
}

// ---------------------------------------------------------------------------
// Bounded midpoint bisection for a sign change of f(x) - d on [a, b].
// ---------------------------------------------------------------------------

struct ZeroFound {
    HahnVector x;
};
struct Bracket {
    HahnVector lo, hi;  // f - d has opposite nonzero signs at lo and hi
};
struct NoSignChange {};

using BracketOutcome = std::variant<ZeroFound, Bracket, NoSignChange>;

inline BracketOutcome sign_change_bracket(const SigmaPoly& f, const HahnVector& d, HahnVector a,
                                          HahnVector b, const HahnModel& m,
                                          std::size_t iterations = 64) {
    if (vec_compare(a, b) != Ord::LT) throw InvalidIntervalError();
    auto sig = [&](const HahnVector& x) { return vec_sign(vec_sub(sp_eval(f, x, m), d)); };
    int sa = sig(a);
    if (sa == 0) return ZeroFound{a};
    const int sb = sig(b);
    if (sb == 0) return ZeroFound{b};
    if (sa == sb) return NoSignChange{};
    for (std::size_t it = 0; it < iterations; ++it) {
        const HahnVector mid = vec_scale(Rat(1, 2), vec_add(a, b));
        const int sm = sig(mid);
        if (sm == 0) return ZeroFound{mid};
        if (sm == sa)
            a = mid;
        else
            b = mid;
    }
    return Bracket{a, b};
}

// ---------------------------------------------------------------------------
// The cut of a zero of f(x) = d for absolutely monotone f, as a decidable
// side-test descriptor. Callers are responsible for having checked that the
// equation is unsolved.
// ---------------------------------------------------------------------------

inline ModelCut<HahnModel> cut_of_zero(const SigmaPoly& f, const HahnVector& d,
                                       const HahnModel& m) {
    const Classification cls = classify_monotone(f);
    if (cls.cls == MonotoneClass::NotAbsMonotone) throw NotMonotoneError();
    (void)m;
    return CutZeroOfMonotone<HahnModel>{f, d, cls.cls == MonotoneClass::AbsIncreasing};
}

// ---------------------------------------------------------------------------
// Instance check that the cut of a zero is not the flanking cut of a convex
// subgroup: produce a = sigma^{-deg}(d) (after normalizing f increasing with
// nonzero identity term), pick the proof case by how sigma moves a across
// Archimedean classes, and search for k with f(w/k) < d < f(k w).
// ---------------------------------------------------------------------------

struct FlankingReport {
    SigmaPoly normalized_f;       // increasing, nonzero identity term
    HahnVector normalized_d;
    HahnVector anchor;            // a = sigma^{-deg}(d)
    int case_taken = 1;           // 1: sigma(a) >~ a, 2: sigma(a) << a
    HahnVector straddle_base;     // a (case 1) or sigma^{deg}(a) (case 2)
    unsigned long long k = 0;
    HahnVector lower_point, upper_point;   // straddle_base/k and k*straddle_base
    Side flank_side_lower = Side::Left;    // both points land on the same side
    Side flank_side_upper = Side::Left;    // of the given subgroup's flank cut
    Side zero_cut_side_lower = Side::Left;
    Side zero_cut_side_upper = Side::Right;
    bool right_flank;
    bool separated = false;       // some straddle point contradicts the flank cut
};

inline FlankingReport check_not_flanking_subgroup(const SigmaPoly& f_in, const HahnVector& d_in,
                                                  const HahnModel& m, const ConvexSubgroup& sub,
                                                  bool right_flank = true,
                                                  unsigned long long search_bound = 1ULL << 16,
                                                  std::size_t solve_cap = 64) {
    const Classification cls = classify_monotone(f_in);
    if (cls.cls == MonotoneClass::NotAbsMonotone) throw NotMonotoneError();
    SigmaPoly f = f_in;
    HahnVector d = d_in;
    if (cls.cls == MonotoneClass::AbsDecreasing) {
        f = sp_neg(f);
        d = vec_neg(d);
    }
    // strip the sigma-shift: f = sigma^shift * f0, so f(x) = d iff
    // f0(x) = sigma^{-shift}(d)
    const auto assoc = associated_poly(f);
    if (assoc.shift != 0) {
        std::vector<SigmaPoly::Term> t;
        for (const auto& [k, c] : f.terms()) t.push_back({k - assoc.shift, c});
        f = SigmaPoly(std::move(t));
        d = sigma_apply(m, d, -assoc.shift);
    }
    if (d.is_zero()) throw SolvableError();
    if (solve_exact(f, d, m, solve_cap).solved()) throw SolvableError();

    FlankingReport rep;
    rep.normalized_f = f;
    rep.normalized_d = d;
    rep.right_flank = right_flank;
    const long long deg = f.degree();
    const HahnVector a = sigma_apply(m, d, -deg);
    rep.anchor = a;
    const HahnVector sa = sigma_apply(m, a, 1);
    const bool case2 = rel_much_smaller(sa, a);
    rep.case_taken = case2 ? 2 : 1;
    rep.straddle_base = case2 ? sigma_apply(m, a, deg) : a;

    const HahnVector w = sp_eval(f, rep.straddle_base, m);
    for (unsigned long long k = 1; k <= search_bound; ++k) {
        const Rat kr(static_cast<long long>(k));
        const HahnVector img_shrunk = vec_scale(Rat(1) / kr, w);  // f(base/k)
        const HahnVector img_grown = vec_scale(kr, w);            // f(k*base)
        const int s1 = vec_sign(vec_sub(img_shrunk, d));
        const int s2 = vec_sign(vec_sub(img_grown, d));
        if (s1 != 0 && s2 != 0 && s1 != s2) {
            rep.k = k;
            rep.lower_point = vec_scale(Rat(1) / kr, rep.straddle_base);
            rep.upper_point = vec_scale(kr, rep.straddle_base);
            // f is normalized increasing, so f(x) < d puts x left of the cut
            rep.zero_cut_side_lower = s1 < 0 ? Side::Left : Side::Right;
            rep.zero_cut_side_upper = s2 < 0 ? Side::Left : Side::Right;
            rep.flank_side_lower = cut_flanking_subgroup(sub, right_flank, rep.lower_point);
            rep.flank_side_upper = cut_flanking_subgroup(sub, right_flank, rep.upper_point);
            // scaling by a positive integer never crosses a flank cut, so
            // equal flank sides here mean the zero cut is not that cut
            rep.separated = (rep.flank_side_lower == rep.flank_side_upper);
            return rep;
        }
    }
    throw Error("kBoundExceeded: no separating k up to " + std::to_string(search_bound));
}

// ---------------------------------------------------------------------------
// Unbounded image: a witness x with f(x) > bound, scaling a basis vector
// when one reaches the bound's Archimedean class, otherwise adjoining a
// shift orbit above the model.
// ---------------------------------------------------------------------------

struct UnboundedImageWitness {
    HahnModel model;
    HahnVector x;
    HahnVector image;
    bool extended = false;
};

inline UnboundedImageWitness unbounded_image_witness(const SigmaPoly& f, const HahnModel& m,
                                                     const HahnVector& bound) {
    if (f.is_zero()) throw ZeroSigmaPolyError();
    if (!bound.model().same_as(m)) throw ModelMismatchError();
    // scaling route: basis vectors whose image can reach the bound's class
    std::vector<OrdElem> candidates;
    auto push = [&](const OrdElem& j) {
        for (const auto& seen : candidates)
            if (seen == j) return;
        candidates.push_back(j);
    };
    if (bound.is_zero()) {
        push(first_element(m.index()));
    } else {
        for (const auto& [i, c] : bound.terms()) {
            for (const auto& [k, coeff] : f.terms()) push(apply_auto_power(m.tau(), m.index(), i, -k));
            push(i);
        }
    }
    for (const auto& j : candidates) {
        const HahnVector w = sp_eval(f, vec_unit(m, j), m);
        if (w.is_zero()) continue;
        if (!bound.is_zero() &&
            compare(m.index(), valuation(w), valuation(bound)) == Ord::GT)
            continue;
        const Rat lead = w.terms().front().second;
        Rat beta;
        if (bound.is_zero() || compare(m.index(), valuation(w), valuation(bound)) == Ord::LT) {
            beta = Rat(sign(lead));
        } else {
            const Rat target = rat_abs(bound.coeff_at(valuation(bound))) + 1;
            beta = Rat(sign(lead)) * target / rat_abs(lead);
        }
        const HahnVector x = vec_unit(m, j, beta);
        const HahnVector img = sp_eval(f, x, m);
        if (vec_compare(img, bound) == Ord::GT) return {m, x, img, false};
    }
    // extension route: always succeeds
    const ShiftOrbitExtension ext = adjoin_shift_orbit(m);
    const Rat leading = f.terms().back().second;
    const HahnVector x = vec_scale(Rat(sign(leading)), ext.orbit(0));
    const HahnVector img = sp_eval(f, x, ext.model);
    const HahnVector b2 = ext.embed(bound);
    if (vec_compare(img, b2) != Ord::GT) throw Error("internal: orbit witness failed");
    return {ext.model, x, img, true};
}

}  // namespace ovsa
