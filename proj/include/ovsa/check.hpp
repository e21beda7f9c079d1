#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amalg.hpp"
#include "extend.hpp"
#include "formulas.hpp"
#include "hahn.hpp"
#include "laws.hpp"
#include "sigmapoly.hpp"
#include "solve.hpp"
#include "unipoly.hpp"

namespace ovsa {

// ---------------------------------------------------------------------------
// Deterministic generators. All randomness flows through mt19937_64 with
// explicit modulo reduction, so runs reproduce exactly for a fixed seed.
// ---------------------------------------------------------------------------

namespace gen {

inline long long pick(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rat rand_rat(std::mt19937_64& rng, long long num_range = 9, long long den_range = 4) {
    return Rat(pick(rng, -num_range, num_range), pick(rng, 1, den_range));
}

inline Rat rand_nonzero_rat(std::mt19937_64& rng, long long num_range = 9,
                            long long den_range = 4) {
    for (;;) {
        Rat r = rand_rat(rng, num_range, den_range);
        if (r != 0) return r;
    }
}

inline Rat rand_positive_rat(std::mt19937_64& rng, long long num_range = 6,
                             long long den_range = 4) {
    return Rat(pick(rng, 1, num_range), pick(rng, 1, den_range));
}

inline OrdElem random_element(const IndexOrder& order, std::mt19937_64& rng) {
    const IndexOrderNode* node = order.get();
    OrdElem e;
    for (;;) {
        switch (node->kind) {
            case OrderKind::Finite:
                e.pos = pick(rng, 0, node->size - 1);
                return e;
            case OrderKind::Int:
            case OrderKind::IntReversed:
                e.pos = pick(rng, -6, 6);
                return e;
            case OrderKind::Concat: {
                const bool right = rng() % 2 == 1;
                e.path.push_back(right ? 1 : 0);
                node = right ? node->right.get() : node->left.get();
                continue;
            }
        }
    }
}

inline HahnVector rand_vector(const HahnModel& m, std::mt19937_64& rng, std::size_t max_terms = 4) {
    std::vector<HahnVector::Term> terms;
    const std::size_t n = 1 + rng() % max_terms;
    for (std::size_t i = 0; i < n; ++i)
        terms.push_back({random_element(m.index(), rng), rand_rat(rng)});
    return HahnVector(m, std::move(terms));
}

inline HahnVector rand_nonzero_vector(const HahnModel& m, std::mt19937_64& rng,
                                      std::size_t max_terms = 4) {
    for (;;) {
        HahnVector v = rand_vector(m, rng, max_terms);
        if (!v.is_zero()) return v;
    }
}

inline SigmaPoly rand_sigma_poly(std::mt19937_64& rng, long long max_degree = 5,
                                 bool laurent = false) {
    for (;;) {
        std::vector<SigmaPoly::Term> terms;
        const long long lo = laurent ? -2 : 0;
        for (long long k = lo; k <= max_degree; ++k)
            if (rng() % 3 == 0) terms.push_back({k, rand_rat(rng, 5, 3)});
        SigmaPoly f(std::move(terms));
        if (!f.is_zero()) return f;
    }
}

// The registered model shapes used by classifier probes and round-trips.
inline std::vector<HahnModel> model_shapes() {
    std::vector<HahnModel> shapes;
    // Z with unit shift
    shapes.push_back(HahnModel(order_int(), auto_shift(1), scale_constant(Rat(1))));
    // singleton with scaling 2
    shapes.push_back(HahnModel(order_finite(1), auto_identity(), scale_table({Rat(2)})));
    // two copies of Z, backward shift then forward shift
    shapes.push_back(HahnModel(order_concat(order_int(), order_int()),
                               auto_concat(auto_shift(-1), auto_shift(1)),
                               scale_per_block(scale_constant(Rat(1)), scale_constant(Rat(1)))));
    // lexicographic product of a scaled line with shifted Z
    shapes.push_back(HahnModel(order_concat(order_finite(1), order_int()),
                               auto_concat(auto_identity(), auto_shift(1)),
                               scale_per_block(scale_table({Rat(3)}), scale_constant(Rat(1, 2)))));
    return shapes;
}

inline HahnModel int_shift_model() { return model_shapes()[0]; }

inline HahnModel singleton_model(const Rat& c) {
    return HahnModel(order_finite(1), auto_identity(), scale_table({c}));
}

inline HahnModel example61_model() { return model_shapes()[2]; }

}  // namespace gen

// ---------------------------------------------------------------------------
// Invariant suites. Each returns counts; a failure carries a note. These are
// the library's own cross-checks; the independent oracles live with the
// test suites.
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> notes;

    bool ok() const { return failures == 0; }
    void check(bool cond, const std::string& what) {
        ++cases;
        if (!cond) {
            ++failures;
            if (notes.size() < 8) notes.push_back(what);
        }
    }
};

inline SuiteResult suite_scalars(unsigned long long seed) {
    SuiteResult res{"scalars"};
    std::mt19937_64 rng(seed);
    auto rand_poly = [&](long long maxdeg) {
        for (;;) {
            std::vector<Rat> c(static_cast<std::size_t>(gen::pick(rng, 1, maxdeg)) + 1);
            for (auto& x : c) x = gen::rand_rat(rng, 5, 3);
            UniPoly p(std::move(c));
            if (!p.is_zero()) return p;
        }
    };
    for (int it = 0; it < 200; ++it) {
        const UniPoly p = rand_poly(5), q = rand_poly(5);
        const Rat x = gen::rand_rat(rng);
        res.check(poly_eval(poly_add(p, q), x) == poly_eval(p, x) + poly_eval(q, x),
                  "poly_eval additive");
        res.check(poly_eval(poly_mul(p, q), x) == poly_eval(p, x) * poly_eval(q, x),
                  "poly_eval multiplicative");
    }
    // positive-root counts on products with known roots
    for (int it = 0; it < 100; ++it) {
        std::vector<Rat> roots;
        UniPoly p = UniPoly::constant(gen::rand_nonzero_rat(rng));
        const int nlin = static_cast<int>(gen::pick(rng, 0, 3));
        for (int i = 0; i < nlin; ++i) {
            const Rat r = gen::rand_nonzero_rat(rng, 5, 2);
            if (r > 0) roots.push_back(r);
            p = poly_mul(p, UniPoly({-r, Rat(1)}));
        }
        if (rng() % 2) p = poly_mul(p, UniPoly({Rat(1), Rat(0), Rat(1)}));  // y^2 + 1
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        res.check(count_positive_roots(p) == roots.size(), "count_positive_roots on known product");
        const auto fac = extract_positive_rational_roots(p);
        UniPoly rebuilt = fac.cofactor;
        for (const auto& [r, mult] : fac.roots)
            for (std::size_t m2 = 0; m2 < mult; ++m2) rebuilt = poly_mul(rebuilt, UniPoly({-r, Rat(1)}));
        res.check(rebuilt == p, "root extraction reconstructs p");
    }
    return res;
}

inline SuiteResult suite_orders(unsigned long long seed) {
    SuiteResult res{"orders"};
    std::mt19937_64 rng(seed);
    struct Shape {
        IndexOrder order;
        OrderAuto tau;
    };
    std::vector<Shape> shapes{
        {order_int(), auto_shift(1)},
        {order_int_reversed(), auto_shift(1)},
        {order_finite(4), auto_identity()},
        {order_concat(order_int(), order_int()), auto_concat(auto_shift(-1), auto_shift(1))},
        {order_concat(order_finite(2), order_concat(order_int(), order_int_reversed())),
         auto_concat(auto_identity(), auto_concat(auto_shift(2), auto_shift(1)))},
    };
    for (const auto& sh : shapes) {
        for (int it = 0; it < 500; ++it) {
            const OrdElem a = gen::random_element(sh.order, rng);
            const OrdElem b = gen::random_element(sh.order, rng);
            const OrdElem c = gen::random_element(sh.order, rng);
            const Ord ab = compare(sh.order, a, b);
            res.check(ord_flip(compare(sh.order, b, a)) == ab, "compare antisymmetry");
            res.check((ab == Ord::EQ) == (a == b), "compare reflexivity");
            if (ab == Ord::LT && compare(sh.order, b, c) == Ord::LT)
                res.check(compare(sh.order, a, c) == Ord::LT, "compare transitivity");
            // automorphism preserves order; inverse cancels
            const OrdElem ta = apply_auto(sh.tau, sh.order, a);
            const OrdElem tb = apply_auto(sh.tau, sh.order, b);
            res.check(compare(sh.order, ta, tb) == ab, "auto preserves compare");
            if (it < 300)
                res.check(apply_auto_power(sh.tau, sh.order,
                                           apply_auto_power(sh.tau, sh.order, a, 1), -1) == a,
                          "auto inverse");
        }
        // cut side downward closure on assorted descriptors
        std::vector<IndexCut> cuts{cut_at_minus_infinity(), cut_at_plus_infinity(),
                                   cut_below_element(gen::random_element(sh.order, rng)),
                                   cut_above_element(gen::random_element(sh.order, rng)),
                                   cut_image_under_auto(
                                       cut_below_element(gen::random_element(sh.order, rng)),
                                       sh.tau, 2)};
        if (sh.order->kind == OrderKind::Concat) cuts.push_back(cut_concat_seam());
        for (const auto& cut : cuts) {
            for (int it = 0; it < 200; ++it) {
                const OrdElem i = gen::random_element(sh.order, rng);
                const OrdElem j = gen::random_element(sh.order, rng);
                if (cut_side(cut, sh.order, i) == Side::Left &&
                    compare(sh.order, j, i) == Ord::LT)
                    res.check(cut_side(cut, sh.order, j) == Side::Left, "cut downward closure");
                // existential side queries agree with the side test
                const auto rb = cut_exists_right_below(cut, sh.order, i);
                if (rb) {
                    res.check(cut_side(cut, sh.order, *rb) == Side::Right &&
                                  compare(sh.order, *rb, i) != Ord::GT,
                              "exists_right_below witness");
                } else {
                    res.check(cut_side(cut, sh.order, i) == Side::Left,
                              "exists_right_below none implies Left");
                }
                const auto la = cut_exists_left_above(cut, sh.order, i);
                if (la) {
                    res.check(cut_side(cut, sh.order, *la) == Side::Left &&
                                  compare(sh.order, *la, i) != Ord::LT,
                              "exists_left_above witness");
                } else {
                    res.check(cut_side(cut, sh.order, i) == Side::Right,
                              "exists_left_above none implies Right");
                }
            }
        }
    }
    return res;
}

inline SuiteResult suite_hahn(unsigned long long seed) {
    SuiteResult res{"hahn"};
    std::mt19937_64 rng(seed);
    for (const auto& m : gen::model_shapes()) {
        std::vector<HahnVector> samples;
        for (int i = 0; i < 24; ++i) samples.push_back(gen::rand_vector(m, rng));
        samples.push_back(vec_zero(m));
        const LawCheckResult laws = check_model_laws(m, samples, rng, 500);
        res.cases += laws.checks;
        if (!laws.ok()) {
            res.failures += laws.failures;
            res.notes.push_back("model laws: " + laws.first_failure);
        }
        // Archimedean relation: the index criterion against the multiple-wise
        // definition (v << w iff n|v| < |w| for every natural n). One
        // direction is checked on n = 1..64, the other by exhibiting an
        // exact witness multiple, which may exceed any fixed cutoff.
        for (int it = 0; it < 200; ++it) {
            const HahnVector v = gen::rand_nonzero_vector(m, rng);
            const HahnVector w = gen::rand_nonzero_vector(m, rng);
            const HahnVector av = vec_abs(v), aw = vec_abs(w);
            if (rel_much_smaller(v, w)) {
                bool below = true;
                for (long long n = 1; n <= 64 && below; ++n)
                    below = vec_compare(vec_scale(Rat(n), av), aw) == Ord::LT;
                res.check(below, "<< implies every multiple stays below");
            } else {
                // some multiple must reach |w|
                const Rat lv = av.terms().front().second;
                const Rat lw = rat_abs(w.terms().front().second);
                Rat n = lw / lv + 1;
                n = Rat(numerator(n) / denominator(n) + 1);
                res.check(vec_compare(vec_scale(n, av), aw) != Ord::LT,
                          "not << exhibits a witness multiple");
            }
        }
        // ~ is an equivalence within an Archimedean class
        for (int it = 0; it < 200; ++it) {
            const HahnVector v = gen::rand_nonzero_vector(m, rng);
            HahnVector w = vec_scale(gen::rand_positive_rat(rng), v);
            HahnVector u = vec_add(w, gen::rand_vector(m, rng, 2));
            res.check(rel_sim(v, v), "~ reflexive");
            if (!u.is_zero() && rel_sim(v, u)) {
                res.check(rel_sim(u, v), "~ symmetric");
                if (!w.is_zero() && rel_sim(u, w)) res.check(rel_sim(v, w), "~ transitive");
            }
        }
    }
    // lex_product embeddings preserve order, operations and sigma
    {
        const auto shapes = gen::model_shapes();
        const HahnModel m1 = shapes[1], m2 = shapes[0];
        const HahnModel prod = lex_product(m1, m2);
        for (int it = 0; it < 200; ++it) {
            const HahnVector v = gen::rand_vector(m2, rng);
            const HahnVector w = gen::rand_vector(m2, rng);
            const HahnVector ev = embed_concat(prod, true, v), ew = embed_concat(prod, true, w);
            res.check(vec_compare(ev, ew) == vec_compare(v, w), "embedding preserves order");
            res.check(embed_concat(prod, true, vec_add(v, w)) == vec_add(ev, ew),
                      "embedding additive");
            res.check(embed_concat(prod, true, sigma_apply(m2, v)) == sigma_apply(prod, ev),
                      "embedding commutes with sigma");
            // left coordinate dominates
            const HahnVector l = gen::rand_nonzero_vector(m1, rng);
            if (vec_sign(l) > 0)
                res.check(vec_compare(vec_add(embed_concat(prod, false, l), ew), ev) == Ord::GT,
                          "lex rule: positive left beats any right");
        }
    }
    return res;
}

inline SuiteResult suite_sigmapoly(unsigned long long seed) {
    SuiteResult res{"sigmapoly"};
    std::mt19937_64 rng(seed);
    const auto shapes = gen::model_shapes();
    for (int it = 0; it < 300; ++it) {
        const HahnModel& m = shapes[rng() % shapes.size()];
        const SigmaPoly f = gen::rand_sigma_poly(rng, 3, true);
        const SigmaPoly g = gen::rand_sigma_poly(rng, 3, true);
        const HahnVector v = gen::rand_vector(m, rng);
        res.check(sp_eval(sp_add(f, g), v, m) == vec_add(sp_eval(f, v, m), sp_eval(g, v, m)),
                  "sp_eval additive in f");
        res.check(sp_eval(sp_mul(f, g), v, m) == sp_eval(f, sp_eval(g, v, m), m),
                  "sp_eval multiplicative = composition");
        res.check(sp_mul(f, g) == sp_mul(g, f), "sigma-polynomials commute");
        // beta * f(a) = f(beta * a)
        const Rat beta = gen::rand_rat(rng);
        res.check(vec_scale(beta, sp_eval(f, v, m)) == sp_eval(f, vec_scale(beta, v), m),
                  "linearity identity");
    }
    // classifier soundness, sampled
    for (int it = 0; it < 60; ++it) {
        const SigmaPoly f = gen::rand_sigma_poly(rng, 4, false);
        const Classification cls = classify_monotone(f);
        if (cls.cls == MonotoneClass::NotAbsMonotone) {
            const auto fac = extract_positive_rational_roots(cls.associated);
            if (!fac.roots.empty()) {
                const auto ce = monotonicity_counterexample(f, gen::int_shift_model());
                res.check(sp_eval(f, ce.zero_witness, ce.extended).is_zero(),
                          "counterexample zero is exact");
                res.check(vec_compare(ce.zero_witness,
                                      embed_concat(ce.extended, true,
                                                   gen::rand_vector(gen::int_shift_model(), rng))) ==
                              Ord::GT,
                          "counterexample sits above the base model");
            }
            continue;
        }
        const bool increasing = cls.cls == MonotoneClass::AbsIncreasing;
        for (const auto& m : shapes) {
            for (int p = 0; p < 125; ++p) {
                HahnVector v = gen::rand_vector(m, rng);
                HahnVector w = gen::rand_vector(m, rng);
                if (vec_compare(v, w) == Ord::GT) std::swap(v, w);
                if (vec_compare(v, w) != Ord::LT) continue;
                const Ord img = vec_compare(sp_eval(f, v, m), sp_eval(f, w, m));
                res.check(img == (increasing ? Ord::LT : Ord::GT), "monotone verdict sampled");
            }
        }
    }
    // P5.7(b) on singleton models: f(a) = c^shift * ftilde(c) * a exactly
    for (const Rat& c : {Rat(1, 2), Rat(1), Rat(2), Rat(3)}) {
        const HahnModel m = gen::singleton_model(c);
        for (int it = 0; it < 50; ++it) {
            const SigmaPoly f = gen::rand_sigma_poly(rng, 4, true);
            const HahnVector a = gen::rand_vector(m, rng, 1);
            res.check(sp_eval(f, a, m) == vec_scale(sp_eval_scalar(f, c), a),
                      "singleton evaluation is the scalar Laurent value");
        }
    }
    return res;
}

inline SuiteResult suite_solve_roundtrip(unsigned long long seed) {
    SuiteResult res{"solve-roundtrip"};
    std::mt19937_64 rng(seed);
    const auto shapes = gen::model_shapes();
    for (int it = 0; it < 300; ++it) {
        const HahnModel& m = shapes[rng() % shapes.size()];
        const SigmaPoly f = gen::rand_sigma_poly(rng, 3, true);
        const HahnVector x = gen::rand_vector(m, rng);
        const HahnVector d = sp_eval(f, x, m);
        const long long span = f.degree() - f.order() + 1;
        const std::size_t cap = x.support_size() * static_cast<std::size_t>(span) + 8;
        const SolveOutcome out = solve_exact(f, d, m, cap);
        res.check(out.solved(), "round-trip solve terminates");
        if (out.solved())
            res.check(verify_solution(f, out.partial, d, m), "round-trip solution verifies");
    }
    // the 1 + sigma residual case never claims success
    {
        const HahnModel m = gen::int_shift_model();
        const SigmaPoly f = sp_add(sp_one(), sp_sigma());
        const HahnVector d = vec_unit(m, elem_at(0));
        for (std::size_t cap : {1u, 5u, 10u, 40u}) {
            const SolveOutcome out = solve_exact(f, d, m, cap);
            res.check(out.status == SolveStatus::Residual, "1+sigma stays residual");
            res.check(vec_add(sp_eval(f, out.partial, m), out.remainder) == d,
                      "residual bookkeeping is exact");
            res.check(out.steps == cap, "residual reports the cap");
        }
    }
    // absolutely monotone operators solve in one step on singleton models:
    // the aggregated coefficient is the scalar Laurent value, nonzero because
    // the associated polynomial has no positive root
    for (const Rat& c : {Rat(1, 2), Rat(1), Rat(2), Rat(3)}) {
        const HahnModel m = gen::singleton_model(c);
        for (int it = 0; it < 25; ++it) {
            SigmaPoly f = gen::rand_sigma_poly(rng, 3, true);
            if (classify_monotone(f).cls == MonotoneClass::NotAbsMonotone) continue;
            const HahnVector d = gen::rand_nonzero_vector(m, rng, 1);
            const SolveOutcome out = solve_exact(f, d, m, 4);
            res.check(out.solved() && out.steps == 1,
                      "monotone singleton equations solve in one step");
        }
    }
    return res;
}

inline SuiteResult suite_extend(unsigned long long seed) {
    SuiteResult res{"extend"};
    std::mt19937_64 rng(seed);
    // shift orbit
    for (const auto& m : gen::model_shapes()) {
        const ShiftOrbitExtension ext = adjoin_shift_orbit(m);
        for (long long i = -3; i <= 3; ++i) {
            res.check(sigma_apply(ext.model, ext.orbit(i)) == ext.orbit(i + 1),
                      "sigma shifts the orbit");
            res.check(vec_compare(ext.orbit(i), ext.orbit(i + 1)) == Ord::LT,
                      "orbit is increasing");
        }
        for (int it = 0; it < 50; ++it) {
            const HahnVector v = gen::rand_vector(m, rng);
            res.check(vec_compare(ext.orbit(0), ext.embed(v)) == Ord::GT,
                      "orbit sits above the base");
        }
        std::vector<HahnVector> samples;
        for (int i = 0; i < 16; ++i) samples.push_back(gen::rand_vector(ext.model, rng));
        const LawCheckResult laws = check_model_laws(ext.model, samples, rng, 300);
        res.cases += laws.checks;
        res.failures += laws.failures;
        if (!laws.ok()) res.notes.push_back("orbit model laws: " + laws.first_failure);
    }
    // lex prepend directions
    {
        const HahnModel m = gen::int_shift_model();
        const LexPrependExtension fw = lex_prepend(m, true), bw = lex_prepend(m, false);
        res.check(sigma_apply(fw.model, fw.new_unit(0)) == fw.new_unit(1), "forward prepend");
        res.check(sigma_apply(bw.model, bw.new_unit(0)) == bw.new_unit(-1), "backward prepend");
        for (int it = 0; it < 100; ++it) {
            const HahnVector v = gen::rand_vector(m, rng), w = gen::rand_vector(m, rng);
            res.check(vec_compare(fw.embed(v), fw.embed(w)) == vec_compare(v, w),
                      "prepend embedding preserves order");
        }
    }
    // degree-1 adjunctions over seeded configurations
    const SigmaPoly norm({{0, Rat(1)}, {1, Rat(-1)}});  // x - sigma(x)
    for (int cfg = 0; cfg < 20; ++cfg) {
        const HahnModel m = gen::int_shift_model();
        HahnVector a = gen::rand_nonzero_vector(m, rng, 3);
        const SigmaPoly g = sp_neg(norm);  // sigma - 1; g(x) = -a  <=>  norm(x) = a
        if (solve_exact(norm, a, m, 64).solved()) continue;  // want the unsolved case
        ModelCut<HahnModel> cut = CutFormalZero<HahnModel>{norm, a};
        const CaseFlag flag = (cfg % 2 == 0) ? CaseFlag::Case1 : CaseFlag::Case2;
        const auto ext = adjoin_degree1_solution(m, norm, a, cut, flag);
        const auto bp = ext.generator();
        res.check(sp_eval(norm, bp, ext) == ext.embed(a), "f(b') = a exactly");
        std::vector<ExtElem<HahnModel>> samples{bp, ext.scale(Rat(-2), bp)};
        for (int i = 0; i < 14; ++i) samples.push_back(ext.embed(gen::rand_vector(m, rng)));
        samples.push_back(ext.add(bp, samples[2]));
        const LawCheckResult laws = check_model_laws(ext, samples, rng, 500);
        res.cases += laws.checks;
        res.failures += laws.failures;
        if (!laws.ok()) res.notes.push_back("ext model laws: " + laws.first_failure);
        // b' realizes the cut on bracketing samples
        for (int i = 0; i < 20; ++i) {
            const HahnVector x = gen::rand_vector(m, rng);
            try {
                const Side side = model_cut_side(ext.cut(), m, x);
                const Ord o = ext.compare(bp, ext.embed(x));
                res.check((side == Side::Left) == (o == Ord::GT), "b' matches the cut side-test");
            } catch (const CutQueryUndecidableError&) {
            }
        }
        (void)g;
    }
    return res;
}

inline SuiteResult suite_amalg(unsigned long long seed) {
    SuiteResult res{"amalg"};
    std::mt19937_64 rng(seed);
    // seeded order problems: random chains B, C over a shared A
    for (int it = 0; it < 100; ++it) {
        const int na = static_cast<int>(gen::pick(rng, 0, 4));
        const int nb = na + static_cast<int>(gen::pick(rng, 0, 4));
        const int nc = na + static_cast<int>(gen::pick(rng, 0, 4));
        OrderAmalgamationProblem prob;
        for (int i = 0; i < na; ++i) prob.A.points.push_back("a" + std::to_string(i));
        prob.B.points = prob.A.points;
        prob.C.points = prob.A.points;
        for (int i = na; i < nb; ++i) prob.B.points.push_back("b" + std::to_string(i));
        for (int i = na; i < nc; ++i) prob.C.points.push_back("c" + std::to_string(i));
        auto random_order = [&](OrderWithAction& s) {
            s.order.resize(s.points.size());
            for (std::size_t i = 0; i < s.order.size(); ++i) s.order[i] = static_cast<int>(i);
            for (std::size_t i = s.order.size(); i > 1; --i)
                std::swap(s.order[i - 1], s.order[rng() % i]);
        };
        random_order(prob.A);
        // B and C extend A's order: random interleavings that keep A's order
        auto extend_order = [&](OrderWithAction& s) {
            std::vector<int> a_ids;
            for (const auto& p : prob.A.points) a_ids.push_back(s.id_of(p));
            std::vector<int> rest;
            for (std::size_t i = 0; i < s.points.size(); ++i)
                if (std::find(a_ids.begin(), a_ids.end(), static_cast<int>(i)) == a_ids.end())
                    rest.push_back(static_cast<int>(i));
            std::vector<int> merged;
            std::size_t ai = 0, ri = 0;
            std::vector<int> a_sorted;
            for (int id : prob.A.order) a_sorted.push_back(s.id_of(prob.A.points[id]));
            while (ai < a_sorted.size() || ri < rest.size()) {
                const bool take_a = ri == rest.size() ||
                                    (ai < a_sorted.size() && rng() % 2 == 0);
                merged.push_back(take_a ? a_sorted[ai++] : rest[ri++]);
            }
            s.order = merged;
        };
        extend_order(prob.B);
        extend_order(prob.C);
        // identity generator on every structure (the only order-automorphism
        // of a finite chain)
        auto add_identity = [](OrderWithAction& s) {
            std::vector<int> id(s.points.size());
            for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
            s.generators.push_back(id);
        };
        add_identity(prob.A);
        add_identity(prob.B);
        add_identity(prob.C);
        const OrderAmalgam am = amalgamate_orders(prob);
        res.check(am.D.points.size() == static_cast<std::size_t>(nb + nc - na),
                  "amalgam carrier size");
        // embeddings preserve order
        bool emb_ok = true;
        for (const auto& p : prob.B.points)
            for (const auto& q : prob.B.points)
                if (p != q && prob.B.less_by_name(p, q) != am.D.less_by_name(p, q)) emb_ok = false;
        for (const auto& p : prob.C.points)
            for (const auto& q : prob.C.points)
                if (p != q && prob.C.less_by_name(p, q) != am.D.less_by_name(p, q)) emb_ok = false;
        res.check(emb_ok, "embeddings preserve the order");
    }
    // pipeline smoke: sigma^2 - 1 over the double-Z model
    {
        const HahnModel A = gen::int_shift_model();
        const SigmaPoly norm({{0, Rat(1)}, {1, Rat(-1)}});
        const HahnVector rhs = vec_unit(A, elem_at(0));
        ModelCut<HahnModel> cut = CutFormalZero<HahnModel>{norm, rhs};
        const ExtModel<HahnModel> B =
            adjoin_degree1_solution(A, norm, rhs, cut, CaseFlag::Case1);
        const SigmaPoly f = sp_mul(sp_add(sp_sigma(), sp_one()), sp_sigma_minus(Rat(1)));
        std::function<ExtElem<HahnModel>(const HahnVector&)> embed_ab =
            [&B](const HahnVector& v) { return B.embed(v); };
        std::function<std::optional<HahnVector>(const ExtElem<HahnModel>&)> project =
            [](const ExtElem<HahnModel>& e) -> std::optional<HahnVector> {
            if (e.gen != 0) return std::nullopt;
            return e.base;
        };
        const auto report = amalgamate_sigma_algebraic(A, B, B.generator(), embed_ab, project, f,
                                                       HahnInclusion::identity(A), 3, {}, 256,
                                                       200, seed);
        res.check(report.ok, "sigma^2-1 pipeline verifies");
        res.check(report.stages.size() == 2, "sigma^2-1 pipeline has two stages");
    }
    return res;
}

inline SuiteResult suite_formulas(unsigned long long seed) {
    SuiteResult res{"formulas"};
    std::mt19937_64 rng(seed);
    const HahnModel m = gen::int_shift_model();
    using F = QFFormula<HahnModel>;
    const F phi = F::atom(term_poly_minus_var<HahnModel>(sp_one(), vx(0), vy(0)), Rel::LT);
    const F psi = F::atom(term_poly_minus_var<HahnModel>(sp_one(), vx(0), vy(0)), Rel::GT);
    // alt is monotone under subsequences
    for (int it = 0; it < 200; ++it) {
        std::vector<std::vector<HahnVector>> seq;
        const std::size_t len = 3 + rng() % 5;
        for (std::size_t i = 0; i < len; ++i) seq.push_back({gen::rand_vector(m, rng, 2)});
        const std::vector<HahnVector> b{gen::rand_vector(m, rng, 2)};
        AltResult full;
        try {
            full = alt_count(phi, psi, seq, b, m);
        } catch (const DisjointnessViolatedError&) {
            res.check(false, "strict order atoms cannot overlap");
            continue;
        }
        std::vector<std::vector<HahnVector>> sub;
        for (const auto& t : seq)
            if (rng() % 2) sub.push_back(t);
        const AltResult part = alt_count(phi, psi, sub, b, m);
        res.check(part.value <= full.value || part.no_alternation,
                  "alt monotone under subsequence");
        ++res.cases;
    }
    // atomic alternation bound on monotone sequences
    for (int it = 0; it < 100; ++it) {
        const SigmaPoly p = gen::rand_sigma_poly(rng, 3, false);
        const F phi_p = F::atom(term_poly_minus_var<HahnModel>(p, vx(0), vy(0)), Rel::LT);
        const F psi_p = F::atom(term_poly_minus_var<HahnModel>(p, vx(0), vy(0)), Rel::GT);
        const HahnVector start = gen::rand_vector(m, rng, 2);
        const HahnVector step = gen::rand_nonzero_vector(m, rng, 2);
        std::vector<std::vector<HahnVector>> seq;
        HahnVector cur = start;
        for (int i = 0; i < 8; ++i) {
            seq.push_back({cur});
            cur = vec_add(cur, vec_abs(step));
        }
        const std::vector<HahnVector> b{gen::rand_vector(m, rng, 2)};
        const AltResult alt = alt_count(phi_p, psi_p, seq, b, m);
        res.check(alt.no_alternation || alt.value <= 1,
                  "atomic alternation on a monotone sequence is at most 1");
    }
    return res;
}

inline std::vector<std::string> suite_names() {
    return {"scalars", "orders", "hahn", "sigmapoly", "solve-roundtrip", "extend", "amalg",
            "formulas"};
}

inline SuiteResult run_suite(const std::string& name, unsigned long long seed) {
    if (name == "scalars") return suite_scalars(seed);
    if (name == "orders") return suite_orders(seed);
    if (name == "hahn") return suite_hahn(seed);
    if (name == "sigmapoly") return suite_sigmapoly(seed);
    if (name == "solve-roundtrip") return suite_solve_roundtrip(seed);
    if (name == "extend") return suite_extend(seed);
    if (name == "amalg") return suite_amalg(seed);
    if (name == "formulas") return suite_formulas(seed);
    throw UnknownSuiteError(name);
}

inline std::vector<SuiteResult> run_all_suites(unsigned long long seed) {
    std::vector<SuiteResult> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name, seed));
    return out;
}

}  // namespace ovsa
