#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ovsa/check.hpp"
#include "ovsa/sigmapoly.hpp"

using namespace ovsa;

namespace {
SigmaPoly SP(std::initializer_list<std::pair<long long, long long>> terms) {
    std::vector<SigmaPoly::Term> t;
    for (const auto& [e, c] : terms) t.push_back({e, Rat(c)});
    return SigmaPoly(std::move(t));
}
}  // namespace

TEST_CASE("ring operations") {
    CHECK(sp_mul(SP({{1, 1}, {0, -1}}), SP({{1, 1}, {0, 1}})) == SP({{2, 1}, {0, -1}}));
    CHECK(sp_mul(SigmaPoly::sigma_power(-1), SigmaPoly::sigma_power(1)) == sp_one());
    const SigmaPoly f = SP({{1, 2}, {0, 1}});   // 2 sigma + 1
    const SigmaPoly g = SP({{2, 1}, {0, -3}});  // sigma^2 - 3
    CHECK(sp_mul(f, g) == sp_mul(g, f));
    CHECK(sp_mul(f, g) == SP({{3, 2}, {2, 1}, {1, -6}, {0, -3}}));
}

TEST_CASE("evaluation in models") {
    const HahnModel z = gen::int_shift_model();
    const HahnVector e0 = vec_unit(z, elem_at(0));
    CHECK(sp_eval(sp_sigma_minus(Rat(1)), e0, z) ==
          vec_sub(vec_unit(z, elem_at(1)), e0));
    CHECK(sp_eval(sp_one(), e0, z) == e0);
    const HahnModel s2 = gen::singleton_model(Rat(2));
    const HahnVector e = vec_unit(s2, elem_at(0));
    CHECK(sp_eval(sp_sigma_minus(Rat(3)), e, s2) == vec_neg(e));  // (2 - 3) e
}

TEST_CASE("associated polynomial strips the sigma shift") {
    {
        const auto [shift, p] = associated_poly(sp_sigma_minus(Rat(1)));
        CHECK(shift == 0);
        CHECK(p == UniPoly({Rat(-1), Rat(1)}));
    }
    {
        const auto [shift, p] = associated_poly(SP({{3, 1}, {2, 1}}));  // sigma^3 + sigma^2
        CHECK(shift == 2);
        CHECK(p == UniPoly({Rat(1), Rat(1)}));
    }
    {
        const auto [shift, p] = associated_poly(SP({{-1, 1}, {0, 2}}));  // sigma^-1 + 2
        CHECK(shift == -1);
        CHECK(p == UniPoly({Rat(1), Rat(2)}));
    }
    CHECK_THROWS_AS(associated_poly(SigmaPoly()), ZeroSigmaPolyError);
}

TEST_CASE("monotonicity classifier") {
    CHECK(classify_monotone(SP({{1, 1}, {0, 1}})).cls == MonotoneClass::AbsIncreasing);
    const auto c = classify_monotone(sp_sigma_minus(Rat(1)));
    CHECK(c.cls == MonotoneClass::NotAbsMonotone);
    CHECK(c.positive_root_count == 1);
    CHECK(classify_monotone(SP({{2, 1}, {1, -1}, {0, 1}})).cls == MonotoneClass::AbsIncreasing);
    CHECK(classify_monotone(SP({{1, -1}, {0, -1}})).cls == MonotoneClass::AbsDecreasing);
    // classification is invariant under sigma shifts
    CHECK(classify_monotone(SP({{4, 1}, {3, 1}})).cls == MonotoneClass::AbsIncreasing);
    CHECK(classify_monotone(SP({{-2, 1}, {-3, -1}})).cls == MonotoneClass::NotAbsMonotone);
    CHECK_THROWS_AS(classify_monotone(SigmaPoly()), ZeroSigmaPolyError);
}

TEST_CASE("monotonicity counterexamples") {
    const HahnModel z = gen::int_shift_model();
    SECTION("sigma - 1 fixes the prepended line") {
        const auto ce = monotonicity_counterexample(sp_sigma_minus(Rat(1)), z);
        CHECK(ce.root == 1);
        CHECK(sp_eval(sp_sigma_minus(Rat(1)), ce.zero_witness, ce.extended).is_zero());
        CHECK(sigma_apply(ce.extended, ce.zero_witness) == ce.zero_witness);
        CHECK(vec_compare(ce.zero_witness,
                          embed_concat(ce.extended, true, vec_unit(z, elem_at(-5), Rat(999)))) ==
              Ord::GT);
    }
    SECTION("sigma - 2 scales the prepended line by 2") {
        const auto ce = monotonicity_counterexample(sp_sigma_minus(Rat(2)), z);
        CHECK(ce.root == 2);
        CHECK(sp_eval(sp_sigma_minus(Rat(2)), ce.zero_witness, ce.extended).is_zero());
    }
    SECTION("absolutely monotone input is rejected") {
        CHECK_THROWS_AS(monotonicity_counterexample(SP({{1, 1}, {0, 1}}), z), NotApplicableError);
    }
    SECTION("irrational-only roots are an explicit unsupported-scalar error") {
        CHECK_THROWS_AS(monotonicity_counterexample(SP({{2, 1}, {0, -2}}), z),
                        UnsupportedScalarFieldError);
    }
}

TEST_CASE("factor pipeline") {
    SECTION("sigma^2 - 1 splits off sigma - 1") {
        const auto pipe = factor_pipeline(SP({{2, 1}, {0, -1}}));
        CHECK(pipe.shift == 0);
        CHECK(pipe.monotone_factor == SP({{1, 1}, {0, 1}}));
        REQUIRE(pipe.degree1_factors.size() == 1);
        CHECK(pipe.degree1_factors[0] == sp_sigma_minus(Rat(1)));
        CHECK(pipeline_product(pipe) == SP({{2, 1}, {0, -1}}));
        CHECK(classify_monotone(pipe.monotone_factor).cls == MonotoneClass::AbsIncreasing);
    }
    SECTION("already monotone input passes through") {
        const auto pipe = factor_pipeline(SP({{1, 1}, {0, 1}}));
        CHECK(pipe.degree1_factors.empty());
        CHECK(pipe.monotone_factor == SP({{1, 1}, {0, 1}}));
    }
    SECTION("sigma^2 - 2 has no rational split") {
        CHECK_THROWS_AS(factor_pipeline(SP({{2, 1}, {0, -2}})), UnsupportedScalarFieldError);
    }
    SECTION("random products recompose exactly") {
        std::mt19937_64 rng(9);
        for (int it = 0; it < 60; ++it) {
            SigmaPoly f = SigmaPoly::constant(gen::rand_nonzero_rat(rng));
            const int nfac = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < nfac; ++i) {
                switch (rng() % 3) {
                    case 0: f = sp_mul(f, sp_sigma_minus(gen::rand_positive_rat(rng))); break;
                    case 1: f = sp_mul(f, SP({{1, 1}, {0, 1}})); break;
                    default: f = sp_mul(f, SigmaPoly::sigma_power(1)); break;
                }
            }
            const auto pipe = factor_pipeline(f);
            CHECK(pipeline_product(pipe) == f);
            CHECK(classify_monotone(pipe.monotone_factor).cls != MonotoneClass::NotAbsMonotone);
        }
    }
}

TEST_CASE("proposition 5.7(b) instances") {
    SECTION("singleton models evaluate to the scalar Laurent value") {
        for (const Rat& c : {Rat(1, 2), Rat(1), Rat(2), Rat(3)}) {
            const HahnModel m = gen::singleton_model(c);
            const HahnVector a = vec_unit(m, elem_at(0), Rat(7, 3));
            const SigmaPoly f = SP({{2, 1}, {0, 3}, {-1, 1}});
            CHECK(sp_eval(f, a, m) == vec_scale(sp_eval_scalar(f, c), a));
        }
    }
    SECTION("sigma(a) ~ c a forces f(a) ~ ftilde(c) a") {
        // a = unit of the scaled line prepended to Q((Z)); sigma(a) = c a exactly
        const Rat c(3);
        const auto [m, line] = prepend_scaled_line(gen::int_shift_model(), c);
        const HahnVector tail = embed_concat(m, true, vec_unit(gen::int_shift_model(), elem_at(0)));
        const HahnVector a = vec_add(line, tail);
        CHECK(rel_sim(sigma_apply(m, a), vec_scale(c, a)));
        const SigmaPoly f = SP({{1, 1}, {0, 1}});  // sigma + 1, ftilde(3) = 4
        CHECK(rel_sim(sp_eval(f, a, m), vec_scale(sp_eval_scalar(f, c), a)));
    }
}

TEST_CASE("sigmapoly invariant suite stays green") {
    const SuiteResult r = suite_sigmapoly(17);
    INFO((r.notes.empty() ? std::string() : r.notes.front()));
    CHECK(r.failures == 0);
}
