#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ovsa/check.hpp"
#include "ovsa/json_io.hpp"

using namespace ovsa;

TEST_CASE("model, vector and polynomial round-trips") {
    std::mt19937_64 rng(71);
    for (const auto& m : gen::model_shapes()) {
        const Json mj = jio::model(m);
        const HahnModel m2 = jio::to_model(mj);
        CHECK(m.same_as(m2));
        CHECK(jio::model(m2) == mj);
        for (int it = 0; it < 20; ++it) {
            const HahnVector v = gen::rand_vector(m, rng);
            const Json vj = jio::vector(v);
            CHECK(jio::to_vector(vj, m2) == v);
            CHECK(jio::vector(jio::to_vector(vj, m2)) == vj);
        }
    }
    for (int it = 0; it < 50; ++it) {
        const SigmaPoly f = gen::rand_sigma_poly(rng, 4, true);
        CHECK(jio::to_sigma_poly(jio::sigma_poly(f)) == f);
    }
}

TEST_CASE("extension and cut round-trips") {
    const HahnModel m = gen::int_shift_model();
    const HahnVector a = vec_unit(m, elem_at(0));
    const SigmaPoly norm({{0, Rat(1)}, {1, Rat(-1)}});
    ModelCut<HahnModel> cut = CutFormalZero<HahnModel>{norm, a};
    const auto ext = adjoin_degree1_solution(m, norm, a, cut, CaseFlag::Case1);
    const Json ej = jio::ext_model(ext);
    CHECK(ej.contains("a"));
    const auto ext2 = jio::to_ext_model(ej);
    CHECK(ext2.base().same_as(m));
    CHECK(ext2.lambda() == 1);
    CHECK(sp_eval(norm, ext2.generator(), ext2) == ext2.embed(a));
    CHECK(jio::ext_model(ext2) == ej);
    // the scaled form round-trips through lambda/rhs fields
    const auto scaled = adjoin_scaled_degree1(
        m, Rat(2), a, ModelCut<HahnModel>(CutFormalZero<HahnModel>{sp_sigma_minus(Rat(2)), a}),
        CaseFlag::Case1);
    const Json sj = jio::ext_model(scaled);
    CHECK(sj.contains("lambda"));
    const auto scaled2 = jio::to_ext_model(sj);
    CHECK(scaled2.lambda() == 2);
    CHECK(jio::ext_model(scaled2) == sj);
}

TEST_CASE("formula round-trips") {
    const HahnModel m = gen::int_shift_model();
    using F = QFFormula<HahnModel>;
    const F phi = F::disj(
        {F::atom(term_poly_minus_var<HahnModel>(sp_add(sp_sigma(), sp_one()), vx(0), vy(0)),
                 Rel::LT),
         F::conj({F::top(), F::atom(QFTerm<HahnModel>{{{vx(0), sp_one()}},
                                                      vec_unit(m, elem_at(2), Rat(-1))},
                                    Rel::EQ)})});
    const Json fj = jio::formula(phi);
    const F phi2 = jio::to_formula(fj, m);
    CHECK(jio::formula(phi2) == fj);
    // semantics survive the round-trip
    std::mt19937_64 rng(5);
    for (int it = 0; it < 40; ++it) {
        Assignment<HahnModel> asg;
        asg.set(vx(0), gen::rand_vector(m, rng));
        asg.set(vy(0), gen::rand_vector(m, rng));
        CHECK(eval_formula(phi, asg, m) == eval_formula(phi2, asg, m));
    }
}

TEST_CASE("ordered G-set round-trip") {
    OrderWithAction s;
    s.points = {"p", "q", "r"};
    s.order = {2, 0, 1};  // r < p < q
    std::vector<int> id{0, 1, 2};
    s.generators.push_back(id);
    const Json sj = jio::order_with_action(s);
    const OrderWithAction s2 = jio::to_order_with_action(sj);
    CHECK(s2.points == s.points);
    CHECK(s2.order == s.order);
    CHECK(s2.generators == s.generators);
    CHECK(jio::order_with_action(s2) == sj);
}

TEST_CASE("schema violations are reported as such") {
    CHECK_THROWS_AS(jio::to_order(Json{{"kind", "weird"}}), SchemaError);
    CHECK_THROWS_AS(jio::to_order(Json{{"no_kind", 1}}), SchemaError);
    CHECK_THROWS_AS(jio::to_rat(Json(42)), SchemaError);
    CHECK_THROWS_AS(jio::to_sigma_poly(Json{{"terms", "zap"}}), SchemaError);
    const HahnModel m = gen::int_shift_model();
    // vector index outside the model order
    Json bad = Json{{"coeffs", Json::array({Json{{"index", jio::elem(elem_left(elem_at(0)))},
                                                 {"value", "1/1"}}})}};
    CHECK_THROWS_AS(jio::to_vector(bad, m), SchemaError);
    // shift automorphism on a finite block
    Json badm = Json{{"order", Json{{"kind", "finite"}, {"n", 2}}},
                     {"tau", Json{{"kind", "shift"}, {"k", 1}}},
                     {"scaling", Json{{"kind", "constant"}, {"value", "1/1"}}}};
    CHECK_THROWS_AS(jio::to_model(badm), SchemaError);
}
