#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "extend.hpp"
#include "formulas.hpp"
#include "hahn.hpp"
#include "laws.hpp"
#include "sigmapoly.hpp"
#include "solve.hpp"

namespace ovsa {

// ---------------------------------------------------------------------------
// Finite linear orders with a group action by order-automorphisms.
// ---------------------------------------------------------------------------

struct OrderWithAction {
    std::vector<std::string> points;                // unique names
    std::vector<int> order;                         // point ids, ascending
    std::vector<std::vector<int>> generators;       // permutations by point id

    int id_of(const std::string& name) const {
        for (std::size_t i = 0; i < points.size(); ++i)
            if (points[i] == name) return static_cast<int>(i);
        return -1;
    }
    int rank(int p) const {
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] == p) return static_cast<int>(i);
        throw SchemaError("point missing from order: " + std::to_string(p));
    }
    bool less(int p, int q) const { return rank(p) < rank(q); }
    bool less_by_name(const std::string& p, const std::string& q) const {
        return less(id_of(p), id_of(q));
    }
};

inline void validate_order_with_action(const OrderWithAction& s) {
    const std::size_t n = s.points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (s.points[i] == s.points[j]) throw SchemaError("duplicate point name: " + s.points[i]);
    if (s.order.size() != n) throw SchemaError("order must list every point exactly once");
    std::vector<bool> seen(n, false);
    for (int p : s.order) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p])
            throw SchemaError("order is not a permutation of the points");
        seen[p] = true;
    }
    for (const auto& g : s.generators) {
        if (g.size() != n) throw SchemaError("generator arity mismatch");
        std::vector<bool> hit(n, false);
        for (int img : g) {
            if (img < 0 || static_cast<std::size_t>(img) >= n || hit[img])
                throw ActionNotOrderPreservingError("generator is not a permutation");
            hit[img] = true;
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (s.less(static_cast<int>(a), static_cast<int>(b)) &&
                    !s.less(g[a], g[b]))
                    throw ActionNotOrderPreservingError();
    }
}

// Closure of the generators and their inverses under composition. On a
// finite chain every order-automorphism is the identity, so this is tiny;
// the cap guards against malformed inputs.
inline std::vector<std::vector<int>> group_elements(const OrderWithAction& s,
                                                    std::size_t cap = 4096) {
    const std::size_t n = s.points.size();
    std::vector<int> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
    std::vector<std::vector<int>> elems{id};
    std::vector<std::vector<int>> gens;
    for (const auto& g : s.generators) {
        gens.push_back(g);
        std::vector<int> inv(n);
        for (std::size_t i = 0; i < n; ++i) inv[g[i]] = static_cast<int>(i);
        gens.push_back(inv);
    }
    for (std::size_t at = 0; at < elems.size(); ++at) {
        for (const auto& g : gens) {
            std::vector<int> comp(n);
            for (std::size_t i = 0; i < n; ++i) comp[i] = g[elems[at][i]];
            if (std::find(elems.begin(), elems.end(), comp) == elems.end()) {
                elems.push_back(comp);
                if (elems.size() > cap) throw Error("group closure exceeded cap");
            }
        }
    }
    return elems;
}

// Atomic formulas g*x [] y over an ordered G-set, and their alternation
// count along a sequence of points against a parameter.
inline bool order_atom_holds(const OrderWithAction& s, const std::vector<int>& g, Rel rel, int x,
                             int y) {
    const int gx = g[x];
    switch (rel) {
        case Rel::LT: return s.less(gx, y);
        case Rel::GT: return s.less(y, gx);
        case Rel::EQ: return gx == y;
    }
    return false;
}

inline AltResult order_atom_alt(const OrderWithAction& s, const std::vector<int>& g_phi,
                                Rel rel_phi, const std::vector<int>& g_psi, Rel rel_psi,
                                const std::vector<int>& seq, int b) {
    std::vector<std::pair<bool, bool>> truth;
    truth.reserve(seq.size());
    for (int x : seq)
        truth.push_back(
            {order_atom_holds(s, g_phi, rel_phi, x, b), order_atom_holds(s, g_psi, rel_psi, x, b)});
    return alt_scan(truth);
}

// ---------------------------------------------------------------------------
// Amalgamation of ordered G-sets over a common substructure, by the three
// order rules; the action carries over pointwise.
// ---------------------------------------------------------------------------

struct OrderAmalgamationProblem {
    OrderWithAction A, B, C;  // A's point names occur in both B and C
};

namespace detail {
inline void check_substructure(const OrderWithAction& sub, const OrderWithAction& sup,
                               const char* label) {
    for (const auto& p : sub.points)
        if (sup.id_of(p) < 0) throw NotASubstructureError(std::string(label) + " misses " + p);
    for (const auto& p : sub.points)
        for (const auto& q : sub.points)
            if (p != q && sub.less_by_name(p, q) != sup.less_by_name(p, q))
                throw NotASubstructureError(std::string(label) + " changes the order on A");
    if (sub.generators.size() != sup.generators.size())
        throw NotASubstructureError("generator counts differ");
    for (std::size_t g = 0; g < sub.generators.size(); ++g)
        for (const auto& p : sub.points) {
            const int sub_img = sub.generators[g][sub.id_of(p)];
            const int sup_img = sup.generators[g][sup.id_of(p)];
            if (sup.points[sup_img] != sub.points[sub_img])
                throw NotASubstructureError("action differs on A at " + p);
        }
}
}  // namespace detail

inline void validate_problem(const OrderAmalgamationProblem& prob) {
    validate_order_with_action(prob.A);
    validate_order_with_action(prob.B);
    validate_order_with_action(prob.C);
    detail::check_substructure(prob.A, prob.B, "B");
    detail::check_substructure(prob.A, prob.C, "C");
    for (const auto& p : prob.B.points) {
        if (prob.A.id_of(p) >= 0) continue;
        if (prob.C.id_of(p) >= 0)
            throw NotASubstructureError("B\\A and C\\A share the name " + p);
    }
}

struct OrderAmalgam {
    OrderWithAction D;
    std::map<std::string, std::string> emb_B, emb_C;  // name maps (identities)
};

inline OrderAmalgam amalgamate_orders(const OrderAmalgamationProblem& prob) {
    validate_problem(prob);
    const auto& A = prob.A;
    const auto& B = prob.B;
    const auto& C = prob.C;

    std::vector<std::string> names(B.points);
    for (const auto& p : C.points)
        if (B.id_of(p) < 0) names.push_back(p);

    auto in_B = [&](const std::string& p) { return B.id_of(p) >= 0; };
    auto in_C = [&](const std::string& p) { return C.id_of(p) >= 0; };

    // rule (1): b < c if some a in A has b <_B a and a <_C c
    // rule (2): b > c if some a in A has b >_B a and a >_C c
    // rule (3): otherwise b < c for b in B\A, c in C\A
    auto cross_less = [&](const std::string& b, const std::string& c) {
        for (const auto& a : A.points)
            if (B.less_by_name(b, a) && C.less_by_name(a, c)) return true;
        for (const auto& a : A.points)
            if (B.less_by_name(a, b) && C.less_by_name(c, a)) return false;
        return true;
    };
    auto less = [&](const std::string& u, const std::string& v) {
        if (in_B(u) && in_B(v)) return B.less_by_name(u, v);
        if (in_C(u) && in_C(v)) return C.less_by_name(u, v);
        if (in_B(u)) return cross_less(u, v);
        return !cross_less(v, u);
    };

    // selection sort with the rule comparator; no strict-weak-order
    // assumption is needed this way
    std::vector<std::string> sorted;
    std::vector<std::string> rest(names);
    while (!rest.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < rest.size(); ++i)
            if (less(rest[i], rest[best])) best = i;
        sorted.push_back(rest[best]);
        rest.erase(rest.begin() + static_cast<long>(best));
    }

    OrderWithAction D;
    D.points = names;
    for (const auto& p : sorted) D.order.push_back(D.id_of(p));
    for (std::size_t g = 0; g < B.generators.size(); ++g) {
        std::vector<int> gen(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) {
            const auto& p = names[i];
            const std::string img = in_B(p) ? B.points[B.generators[g][B.id_of(p)]]
                                            : C.points[C.generators[g][C.id_of(p)]];
            gen[i] = D.id_of(img);
        }
        D.generators.push_back(std::move(gen));
    }
    validate_order_with_action(D);  // throws ActionNotOrderPreserving on failure

    OrderAmalgam out;
    out.D = std::move(D);
    for (const auto& p : B.points) out.emb_B[p] = p;
    for (const auto& p : C.points) out.emb_C[p] = p;
    return out;
}

// ---------------------------------------------------------------------------
// OVSA amalgamation machinery: the Lemma 7.2 monotone embedding step and the
// sigma-algebraic pipeline that composes it with degree-1 adjunctions.
// ---------------------------------------------------------------------------

// A concrete inclusion of Hahn models, with the vector embedding map.
struct HahnInclusion {
    HahnModel sub, super;
    std::function<HahnVector(const HahnVector&)> map;

    static HahnInclusion identity(const HahnModel& m) {
        return {m, m, [](const HahnVector& v) { return v; }};
    }
    // sub sits as one block of a Concat-indexed super
    static HahnInclusion concat_block(const HahnModel& sub, const HahnModel& super,
                                      bool right_block) {
        return {sub, super,
                [super, right_block](const HahnVector& v) {
                    return embed_concat(super, right_block, v);
                }};
    }
};

inline const std::vector<Rat>& embedding_test_coefficients() {
    static const std::vector<Rat> coeffs{Rat(-2), Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1),
                                         Rat(2)};
    return coeffs;
}

struct MonotoneEmbedResult {
    HahnVector d;              // the solution in C with f(d) = a
    std::size_t checks = 0;    // embedding-equivalence instances tested
    std::size_t failures = 0;
    std::string first_failure;

    bool check_passed() const { return failures == 0; }
};

// Lemma 7.2 instance: given b (in its home model BM, containing A via
// embed_ab) with f(b) = a for absolutely monotone f, produce d in C solving
// f(d) = a and verify the embedding equivalence
//   h(b, sigma(b), ..., sigma^k(b)) >= e  <=>  h(d, ..., sigma^k(d)) >= e
// for every affine h over the test coefficient set and every test point e.
template <OvsaModelType BM>
MonotoneEmbedResult embed_via_monotone(
    const HahnModel& A, const BM& bmodel, const typename BM::Element& b,
    const std::function<typename BM::Element(const HahnVector&)>& embed_ab, const SigmaPoly& f,
    const HahnVector& a, const HahnInclusion& ac, int test_degree = 4,
    std::vector<HahnVector> test_points = {}, std::size_t solve_cap = 512) {
    if (classify_monotone(f).cls == MonotoneClass::NotAbsMonotone) throw NotMonotoneError();
    if (!a.model().same_as(A)) throw ModelMismatchError();
    if (!(sp_eval(f, b, bmodel) == embed_ab(a)))
        throw NotApplicableError("f(b) is not the given element of A");

    const SolveOutcome sol = solve_exact(f, ac.map(a), ac.super, solve_cap);
    if (!sol.solved())
        throw SolveIncompleteError("solving f(x) = a in C did not terminate within the cap");
    MonotoneEmbedResult res;
    res.d = sol.partial;

    if (test_points.empty()) {
        test_points.push_back(vec_zero(A));
        test_points.push_back(a);
        test_points.push_back(vec_neg(a));
        test_points.push_back(vec_scale(Rat(2), a));
        test_points.push_back(sigma_apply(A, a, 1));
    }

    // precompute the sigma-orbits of b and d
    std::vector<typename BM::Element> orb_b{b};
    std::vector<HahnVector> orb_d{res.d};
    for (int k = 1; k <= test_degree; ++k) {
        orb_b.push_back(bmodel.sigma(orb_b.back(), 1));
        orb_d.push_back(sigma_apply(ac.super, orb_d.back(), 1));
    }
    const auto& coeffs = embedding_test_coefficients();
    std::vector<std::size_t> digit(static_cast<std::size_t>(test_degree) + 1, 0);
    for (;;) {
        typename BM::Element hb = bmodel.zero();
        HahnVector hd = vec_zero(ac.super);
        bool all_zero = true;
        for (std::size_t j = 0; j < digit.size(); ++j) {
            const Rat& g = coeffs[digit[j]];
            if (g == 0) continue;
            all_zero = false;
            hb = bmodel.add(hb, bmodel.scale(g, orb_b[j]));
            hd = vec_add(hd, vec_scale(g, orb_d[j]));
        }
        if (!all_zero) {
            for (const auto& e : test_points) {
                ++res.checks;
                const bool lhs = bmodel.compare(hb, embed_ab(e)) != Ord::LT;
                const bool rhs = vec_compare(hd, ac.map(e)) != Ord::LT;
                if (lhs != rhs) {
                    if (res.failures == 0)
                        res.first_failure = "h >= e disagrees for a test pair";
                    ++res.failures;
                }
            }
        }
        // next coefficient tuple
        std::size_t j = 0;
        while (j < digit.size() && ++digit[j] == coeffs.size()) digit[j++] = 0;
        if (j == digit.size()) break;
    }
    return res;
}

// ---------------------------------------------------------------------------
// The sigma-algebraic amalgamation pipeline for a single-generator B: one
// monotone stage, then one degree-1 stage per rational root factor. The
// tower on the C side stays a Hahn model while stages solve exactly; the
// first stage that needs a formal adjunction produces an ExtModel, and any
// stage after that cannot decide its cut queries and fails honestly.
// ---------------------------------------------------------------------------

struct PipelineStage {
    std::string kind;       // "monotone" | "degree1-solved" | "degree1-adjoined"
    std::string detail;
    bool verified = false;
    std::string failure;
};

struct PipelineReport {
    FactorPipeline factors;
    std::vector<PipelineStage> stages;
    bool ok = false;
    bool final_in_extension = false;
    std::optional<ExtModel<HahnModel>> extension;  // present when a stage adjoined
    std::optional<HahnVector> final_solved;        // d_n when everything solved in C
};

template <OvsaModelType BM>
PipelineReport amalgamate_sigma_algebraic(
    const HahnModel& A, const BM& bmodel, const typename BM::Element& b,
    const std::function<typename BM::Element(const HahnVector&)>& embed_ab,
    const std::function<std::optional<HahnVector>(const typename BM::Element&)>& project_to_A,
    const SigmaPoly& f, const HahnInclusion& ac, int test_degree = 4,
    std::vector<HahnVector> sample_points = {}, std::size_t solve_cap = 512,
    std::size_t law_pairs = 500, unsigned long long seed = 1) {
    PipelineReport rep;
    rep.factors = factor_pipeline(f);  // may throw UnsupportedScalarField
    const std::size_t n = rep.factors.degree1_factors.size();

    // monotone part absorbs the sigma-shift; it stays absolutely monotone
    const SigmaPoly mono =
        sp_mul(SigmaPoly::sigma_power(rep.factors.shift), rep.factors.monotone_factor);

    // f(b) must land in A
    const auto a_opt = project_to_A(sp_eval(f, b, bmodel));
    if (!a_opt) throw NotApplicableError("f(b) does not lie in A; b is not a valid generator");
    const HahnVector a = *a_opt;

    // B-side chain: c_i = (g_{i+1} ... g_n)(b), so c_0 = a' and c_n = b
    std::vector<typename BM::Element> chain(n + 1, b);
    for (std::size_t i = n; i-- > 0;)
        chain[i] = sp_eval(rep.factors.degree1_factors[i], chain[i + 1], bmodel);

    if (sample_points.empty()) {
        sample_points.push_back(vec_zero(A));
        sample_points.push_back(a);
        sample_points.push_back(vec_neg(a));
        sample_points.push_back(vec_scale(Rat(1, 2), a));
        sample_points.push_back(sigma_apply(A, a, 1));
    }

    // Stage 0: the monotone factor, via the Lemma 7.2 step.
    {
        PipelineStage st;
        st.kind = "monotone";
        st.detail = "solve monotone factor against f(b)";
        try {
            const auto emb = embed_via_monotone(A, bmodel, chain[0], embed_ab, mono, a, ac,
                                                test_degree, sample_points, solve_cap);
            st.verified = emb.check_passed();
            if (!st.verified) st.failure = emb.first_failure;
            rep.stages.push_back(st);
            if (!st.verified) return rep;
            rep.final_solved = emb.d;
        } catch (const Error& e) {
            st.failure = e.what();
            rep.stages.push_back(st);
            return rep;
        }
    }

    // Degree-1 stages over the C-side tower.
    HahnVector target = *rep.final_solved;  // copy of c_0 in C
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        PipelineStage st;
        st.kind = "degree1";
        st.detail = "factor sigma - " + rat_to_string(rep.factors.roots[i]);
        if (rep.final_in_extension) {
            st.failure = "cut queries over a formal extension are undecidable; stage " +
                         std::to_string(i + 1) + " cannot run";
            rep.stages.push_back(st);
            throw CutQueryUndecidableError(st.failure);
        }
        const SigmaPoly& g = rep.factors.degree1_factors[i];
        const SolveOutcome sol = solve_exact(g, target, ac.super, solve_cap);
        if (sol.solved()) {
            st.kind = "degree1-solved";
            st.verified = verify_solution(g, sol.partial, target, ac.super);
            target = sol.partial;
            rep.final_solved = target;
            rep.stages.push_back(st);
            if (!st.verified) return rep;
            continue;
        }
        // formal adjunction with the cut of the missing zero
        st.kind = "degree1-adjoined";
        ModelCut<HahnModel> cut = CutFormalZero<HahnModel>{g, target};
        ExtModel<HahnModel> ext =
            adjoin_scaled_degree1(ac.super, rep.factors.roots[i], target, cut, CaseFlag::Case1);
        const auto bp = ext.generator();
        bool okay = sp_eval(g, bp, ext) == ext.embed(target);
        // sampled law checks on the extension
        std::vector<ExtElem<HahnModel>> samples;
        samples.push_back(bp);
        for (const auto& p : sample_points) samples.push_back(ext.embed(ac.map(p)));
        samples.push_back(ext.add(bp, ext.embed(ac.map(a))));
        samples.push_back(ext.scale(Rat(-1, 2), bp));
        const LawCheckResult laws = check_model_laws(ext, samples, rng, law_pairs);
        okay = okay && laws.ok();
        if (!laws.ok()) st.failure = laws.first_failure;
        // sampled cut equality against the B-side element c_{i+1}
        for (const auto& p : sample_points) {
            const Ord b_side = bmodel.compare(chain[i + 1], embed_ab(p));
            const Ord d_side = ext.compare(bp, ext.embed(ac.map(p)));
            if (b_side != d_side) {
                okay = false;
                st.failure = "cut of the adjoined generator differs from b's cut at a sample";
                break;
            }
        }
        st.verified = okay;
        rep.stages.push_back(st);
        if (!okay) return rep;
        rep.final_in_extension = true;
        rep.extension = std::move(ext);
        rep.final_solved.reset();
    }
    rep.ok = true;
    for (const auto& st : rep.stages) rep.ok = rep.ok && st.verified;
    return rep;
}

}  // namespace ovsa
