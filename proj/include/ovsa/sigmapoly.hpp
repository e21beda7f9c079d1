#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "hahn.hpp"
#include "rational.hpp"
#include "unipoly.hpp"

namespace ovsa {

// ---------------------------------------------------------------------------
// Laurent polynomials in sigma with rational coefficients, acting as linear
// operators x -> sum_k alpha_k sigma^k(x). Multiplication is composition of
// the induced maps, which coincides with Laurent multiplication because the
// coefficients commute with sigma.
// ---------------------------------------------------------------------------

class SigmaPoly {
public:
    using Term = std::pair<long long, Rat>;  // (exponent, coefficient)

    SigmaPoly() = default;
    explicit SigmaPoly(std::vector<Term> terms) : t_(std::move(terms)) { normalize(); }
    static SigmaPoly constant(const Rat& r) { return SigmaPoly({{0, r}}); }
    static SigmaPoly sigma_power(long long k, const Rat& coeff = Rat(1)) {
        return SigmaPoly({{k, coeff}});
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    long long degree() const {
        if (is_zero()) throw ZeroSigmaPolyError();
        return t_.back().first;
    }
    long long order() const {
        if (is_zero()) throw ZeroSigmaPolyError();
        return t_.front().first;
    }
    Rat coeff(long long k) const {
        for (const auto& [e, c] : t_)
            if (e == k) return c;
        return Rat(0);
    }

    bool operator==(const SigmaPoly& o) const { return t_ == o.t_; }
    bool operator!=(const SigmaPoly& o) const { return !(*this == o); }

private:
    std::vector<Term> t_;  // sorted by exponent, nonzero coefficients

    void normalize() {
        std::sort(t_.begin(), t_.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        std::vector<Term> out;
        for (auto& t : t_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second += t.second;
            else
                out.push_back(std::move(t));
        }
        out.erase(
            std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second == 0; }),
            out.end());
        t_ = std::move(out);
    }
};

inline SigmaPoly sp_add(const SigmaPoly& f, const SigmaPoly& g) {
    std::vector<SigmaPoly::Term> t(f.terms());
    t.insert(t.end(), g.terms().begin(), g.terms().end());
    return SigmaPoly(std::move(t));
}

inline SigmaPoly sp_neg(const SigmaPoly& f) {
    std::vector<SigmaPoly::Term> t(f.terms());
    for (auto& x : t) x.second = -x.second;
    return SigmaPoly(std::move(t));
}

inline SigmaPoly sp_sub(const SigmaPoly& f, const SigmaPoly& g) { return sp_add(f, sp_neg(g)); }

inline SigmaPoly sp_mul(const SigmaPoly& f, const SigmaPoly& g) {
    std::vector<SigmaPoly::Term> t;
    t.reserve(f.terms().size() * g.terms().size());
    for (const auto& [ke, kc] : f.terms())
        for (const auto& [le, lc] : g.terms()) t.push_back({ke + le, kc * lc});
    return SigmaPoly(std::move(t));
}

inline SigmaPoly sp_scale(const Rat& r, const SigmaPoly& f) {
    std::vector<SigmaPoly::Term> t(f.terms());
    for (auto& x : t) x.second *= r;
    return SigmaPoly(std::move(t));
}

// Parse helper: "sigma - 1" style construction from (coeff, exp) pairs is all
// callers need; convenience factories for the common shapes.
inline SigmaPoly sp_one() { return SigmaPoly::constant(Rat(1)); }
inline SigmaPoly sp_sigma() { return SigmaPoly::sigma_power(1); }
// sigma - c
inline SigmaPoly sp_sigma_minus(const Rat& c) { return SigmaPoly({{1, Rat(1)}, {0, -c}}); }

// Evaluation in any model: sum_k alpha_k sigma^k(v), exact.
template <OvsaModelType M>
typename M::Element sp_eval(const SigmaPoly& f, const typename M::Element& v, const M& m) {
    typename M::Element acc = m.zero();
    for (const auto& [k, c] : f.terms()) acc = m.add(acc, m.scale(c, m.sigma(v, k)));
    return acc;
}

inline HahnVector sp_eval(const SigmaPoly& f, const HahnVector& v) {
    return sp_eval(f, v, v.model());
}

// ---------------------------------------------------------------------------
// The associated ordinary polynomial: f = sigma^shift * f0 with f0 having a
// nonzero constant term; p is f0 with sigma replaced by the variable.
// ---------------------------------------------------------------------------

struct AssociatedPoly {
    long long shift = 0;
    UniPoly p;
};

inline AssociatedPoly associated_poly(const SigmaPoly& f) {
    if (f.is_zero()) throw ZeroSigmaPolyError();
    const long long shift = f.order();
    std::vector<Rat> coeffs(static_cast<std::size_t>(f.degree() - shift) + 1);
    for (const auto& [k, c] : f.terms()) coeffs[static_cast<std::size_t>(k - shift)] = c;
    return {shift, UniPoly(std::move(coeffs))};
}

// Laurent evaluation at a positive rational: c^shift * p(c).
inline Rat sp_eval_scalar(const SigmaPoly& f, const Rat& c) {
    if (c <= 0) throw NonPositiveScaleError();
    Rat acc = 0;
    for (const auto& [k, coeff] : f.terms()) {
        Rat power = 1;
        for (long long m = 0; m < (k >= 0 ? k : -k); ++m) power *= c;
        if (k < 0) power = Rat(1) / power;
        acc += coeff * power;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Absolute monotonicity: monotone in every model iff the associated
// polynomial has no positive real root; then the direction is the shared
// sign of the leading and trailing coefficients.
// ---------------------------------------------------------------------------

enum class MonotoneClass { AbsIncreasing, AbsDecreasing, NotAbsMonotone };

struct Classification {
    MonotoneClass cls;
    std::size_t positive_root_count = 0;
    long long shift = 0;
    UniPoly associated;
};

inline Classification classify_monotone(const SigmaPoly& f) {
    if (f.is_zero()) throw ZeroSigmaPolyError();
    auto [shift, p] = associated_poly(f);
    const std::size_t roots = count_positive_roots(p);
    if (roots > 0) return {MonotoneClass::NotAbsMonotone, roots, shift, p};
    const int lead = sign(p.leading());
    const int trail = detail::sign_lowest_coeff(p);
    if (lead != trail) throw Error("internal: leading/trailing sign mismatch without positive root");
    return {lead > 0 ? MonotoneClass::AbsIncreasing : MonotoneClass::AbsDecreasing, 0, shift, p};
}

inline bool is_abs_monotone(const SigmaPoly& f) {
    return classify_monotone(f).cls != MonotoneClass::NotAbsMonotone;
}

// ---------------------------------------------------------------------------
// Witness that a non-monotone f is not injective: prepend a line scaled by a
// positive rational root c of the associated polynomial; the new unit l
// satisfies sigma(l) = c*l, hence f(l) = 0, and l lies above the base model.
// ---------------------------------------------------------------------------

struct MonotonicityCounterexample {
    Rat root;
    HahnModel extended;
    HahnVector zero_witness;
};

inline MonotonicityCounterexample monotonicity_counterexample(const SigmaPoly& f,
                                                              const HahnModel& m) {
    const Classification cls = classify_monotone(f);
    if (cls.cls != MonotoneClass::NotAbsMonotone)
        throw NotApplicableError("f is absolutely monotone");
    const auto fac = extract_positive_rational_roots(cls.associated);
    if (fac.roots.empty())
        throw UnsupportedScalarFieldError("all positive roots of the associated polynomial are irrational");
    const Rat c = fac.roots.front().first;
    auto [ext, line] = prepend_scaled_line(m, c);
    if (!sp_eval(f, line, ext).is_zero())
        throw Error("internal: prepended line is not a zero of f");
    return {c, ext, line};
}

// ---------------------------------------------------------------------------
// Factorization pipeline: f = sigma^shift * monotone * prod (sigma - c_i)
// with each c_i a positive rational root of the associated polynomial. The
// absolutely monotone cofactor absorbs everything without positive roots;
// remaining positive irrational roots make the split impossible over Q.
// ---------------------------------------------------------------------------

struct FactorPipeline {
    long long shift = 0;
    SigmaPoly monotone_factor;
    std::vector<SigmaPoly> degree1_factors;  // each sigma - c, root-ascending
    std::vector<Rat> roots;                  // the c's, multiplicity expanded
};

inline FactorPipeline factor_pipeline(const SigmaPoly& f) {
    if (f.is_zero()) throw ZeroSigmaPolyError();
    auto [shift, p] = associated_poly(f);
    auto fac = extract_positive_rational_roots(p);
    if (count_positive_roots(fac.cofactor) > 0)
        throw UnsupportedScalarFieldError(
            "associated polynomial has a positive irrational root; no split over Q exists");
    FactorPipeline out;
    out.shift = shift;
    std::vector<SigmaPoly::Term> mono;
    mono.reserve(fac.cofactor.coeffs().size());
    for (std::size_t i = 0; i < fac.cofactor.coeffs().size(); ++i)
        if (fac.cofactor[i] != 0) mono.push_back({static_cast<long long>(i), fac.cofactor[i]});
    out.monotone_factor = SigmaPoly(std::move(mono));
    for (const auto& [root, mult] : fac.roots)
        for (std::size_t m = 0; m < mult; ++m) {
            out.degree1_factors.push_back(sp_sigma_minus(root));
            out.roots.push_back(root);
        }
    return out;
}

// Recompose for verification: sigma^shift * monotone * prod factors.
inline SigmaPoly pipeline_product(const FactorPipeline& pipe) {
    SigmaPoly acc = SigmaPoly::sigma_power(pipe.shift);
    acc = sp_mul(acc, pipe.monotone_factor);
    for (const auto& g : pipe.degree1_factors) acc = sp_mul(acc, g);
    return acc;
}

inline std::string monotone_class_name(MonotoneClass c) {
    switch (c) {
        case MonotoneClass::AbsIncreasing: return "AbsIncreasing";
        case MonotoneClass::AbsDecreasing: return "AbsDecreasing";
        case MonotoneClass::NotAbsMonotone: return "NotAbsMonotone";
    }
    return "?";
}

}  // namespace ovsa
