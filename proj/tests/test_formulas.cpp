#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "ovsa/check.hpp"
#include "ovsa/formulas.hpp"

using namespace ovsa;

namespace {
using F = QFFormula<HahnModel>;

const HahnModel& zmodel() {
    static const HahnModel m = gen::int_shift_model();
    return m;
}
HahnVector e(long long i, const Rat& c = Rat(1)) { return vec_unit(zmodel(), elem_at(i), c); }

F lt_atom(SigmaPoly p) { return F::atom(term_poly_minus_var<HahnModel>(std::move(p), vx(0), vy(0)), Rel::LT); }
F gt_atom(SigmaPoly p) { return F::atom(term_poly_minus_var<HahnModel>(std::move(p), vx(0), vy(0)), Rel::GT); }
F eq_atom(SigmaPoly p) { return F::atom(term_poly_minus_var<HahnModel>(std::move(p), vx(0), vy(0)), Rel::EQ); }
}  // namespace

TEST_CASE("formula evaluation") {
    Assignment<HahnModel> asg;
    asg.set(vx(0), vec_zero(zmodel()));
    asg.set(vy(0), e(0));
    CHECK(eval_formula(lt_atom(sp_one()), asg, zmodel()));
    asg.set(vx(0), e(0));
    CHECK_FALSE(eval_formula(F::disj({lt_atom(sp_one()), gt_atom(sp_one())}), asg, zmodel()));
    CHECK(eval_formula(F::top(), asg, zmodel()));
    CHECK_FALSE(eval_formula(F::bottom(), asg, zmodel()));
    // unbound variables are an error
    Assignment<HahnModel> partial;
    partial.set(vx(0), e(0));
    CHECK_THROWS_AS(eval_formula(lt_atom(sp_one()), partial, zmodel()), UnboundVariableError);
}

TEST_CASE("sigma(x) - x > 0 holds on the growing block of the double-Z model") {
    const HahnModel m = gen::example61_model();
    const QFTerm<HahnModel> t = term_poly<HahnModel>(vx(0), sp_sigma_minus(Rat(1)));
    const F grows = F::atom(t, Rel::GT);
    Assignment<HahnModel> asg;
    asg.set(vx(0), vec_unit(m, elem_left(elem_at(0))));
    CHECK(eval_formula(grows, asg, m));  // left block: sigma(b) > b
    asg.set(vx(0), vec_unit(m, elem_right(elem_at(0))));
    CHECK_FALSE(eval_formula(grows, asg, m));  // right block: sigma(a) < a
}

TEST_CASE("alternation counting") {
    SECTION("x < y versus x > y along 0, e0, ..., 5 e0 against 5/2 e0") {
        std::vector<std::vector<HahnVector>> seq;
        for (long long i = 0; i < 6; ++i) seq.push_back({e(0, Rat(i))});
        const std::vector<HahnVector> b{e(0, Rat(5, 2))};
        const AltResult r = alt_count(lt_atom(sp_one()), gt_atom(sp_one()), seq, b, zmodel());
        CHECK_FALSE(r.no_alternation);
        CHECK(r.value == 1);
    }
    SECTION("a parameter below the whole sequence leaves no phi start") {
        std::vector<std::vector<HahnVector>> seq;
        for (long long i = 0; i < 6; ++i) seq.push_back({e(0, Rat(i))});
        const std::vector<HahnVector> b{e(0, Rat(-1))};
        const AltResult r = alt_count(lt_atom(sp_one()), gt_atom(sp_one()), seq, b, zmodel());
        CHECK(r.no_alternation);
        CHECK(r.value == 0);
    }
    SECTION("monotone image sequences alternate at most once") {
        const SigmaPoly f = sp_add(sp_sigma(), sp_one());
        std::vector<std::vector<HahnVector>> seq;
        for (long long i = 0; i < 8; ++i) seq.push_back({e(0, Rat(i))});
        std::mt19937_64 rng(3);
        for (int it = 0; it < 30; ++it) {
            const std::vector<HahnVector> b{gen::rand_vector(zmodel(), rng)};
            const AltResult r = alt_count(lt_atom(f), gt_atom(f), seq, b, zmodel());
            CHECK((r.no_alternation || r.value <= 1));
        }
    }
    SECTION("overlapping formulas are a hard error") {
        std::vector<std::vector<HahnVector>> seq{{e(0)}};
        const std::vector<HahnVector> b{e(0, Rat(2))};
        CHECK_THROWS_AS(alt_count(lt_atom(sp_one()), lt_atom(sp_one()), seq, b, zmodel()),
                        DisjointnessViolatedError);
    }
    SECTION("phi-psi-phi scans to 2") {
        std::vector<std::pair<bool, bool>> truth{{true, false}, {false, true}, {true, false}};
        const AltResult r = alt_scan(truth);
        CHECK(r.value == 2);
    }
}

TEST_CASE("sampled disjointness certificates") {
    std::vector<HahnVector> xs, ys;
    for (long long i = -2; i <= 2; ++i) {
        xs.push_back(e(0, Rat(i)));
        ys.push_back(e(0, Rat(i)));
    }
    CHECK(check_disjoint_sampled(lt_atom(sp_one()), gt_atom(sp_one()), xs, ys, zmodel()));
    CHECK_FALSE(check_disjoint_sampled(lt_atom(sp_one()), lt_atom(sp_one()), xs, ys, zmodel()));
}

TEST_CASE("qf indiscernibility over a term bank") {
    std::vector<QFTerm<HahnModel>> bank;
    // x1 - x2
    bank.push_back(QFTerm<HahnModel>{
        {{vx(0), sp_one()}, {vx(1), SigmaPoly::constant(Rat(-1))}}, std::nullopt});
    SECTION("an arithmetic progression is indiscernible for differences") {
        std::vector<HahnVector> seq;
        for (long long i = 0; i < 6; ++i) seq.push_back(e(0, Rat(i)));
        CHECK(is_qf_indiscernible(seq, zmodel(), 2, bank).indiscernible);
    }
    SECTION("a non-monotone sequence fails with a counterexample") {
        const std::vector<HahnVector> seq{e(0), e(0, Rat(2)), e(0)};
        const auto rep = is_qf_indiscernible(seq, zmodel(), 2, bank);
        CHECK_FALSE(rep.indiscernible);
        CHECK(rep.tuple_a != rep.tuple_b);
    }
    SECTION("a sigma-orbit is indiscernible for the shipped bank") {
        std::vector<QFTerm<HahnModel>> shipped = bank;
        shipped.push_back(QFTerm<HahnModel>{
            {{vx(0), SigmaPoly::constant(Rat(2))}, {vx(1), SigmaPoly::constant(Rat(-3))}},
            std::nullopt});
        shipped.push_back(QFTerm<HahnModel>{{{vx(0), sp_one()},
                                             {vx(1), SigmaPoly::constant(Rat(-1))},
                                             {vx(2), sp_one()}},
                                            std::nullopt});
        std::vector<HahnVector> seq;
        HahnVector cur = e(0);
        for (int i = 0; i < 6; ++i) {
            seq.push_back(cur);
            cur = sigma_apply(zmodel(), cur);
        }
        CHECK(is_qf_indiscernible(seq, zmodel(), 3, shipped).indiscernible);
    }
}

TEST_CASE("ip pattern search") {
    std::vector<HahnVector> pool;
    for (long long i = -2; i <= 2; ++i) pool.push_back(e(0, Rat(i)));
    SECTION("strict order atoms carry no 2-pattern") {
        CHECK_FALSE(
            ip_pattern_search(lt_atom(sp_one()), gt_atom(sp_one()), zmodel(), 2, pool, pool)
                .has_value());
    }
    SECTION("a 1-pattern only needs one point on each side") {
        const auto wit =
            ip_pattern_search(lt_atom(sp_one()), gt_atom(sp_one()), zmodel(), 1, pool, pool);
        REQUIRE(wit.has_value());
    }
    SECTION("equality versus apartness on linear data: no 2-pattern") {
        const F phi = eq_atom(sp_one());
        const F psi = F::disj({lt_atom(sp_one()), gt_atom(sp_one())});
        CHECK_FALSE(ip_pattern_search(phi, psi, zmodel(), 2, pool, pool).has_value());
    }
    SECTION("verdicts agree with the brute-force oracle") {
        std::mt19937_64 rng(8);
        for (int it = 0; it < 25; ++it) {
            const SigmaPoly p = gen::rand_sigma_poly(rng, 2, false);
            const F phi = lt_atom(p), psi = gt_atom(p);
            std::vector<HahnVector> apool, bpool;
            const std::size_t na = 2 + rng() % 3, nb = 2 + rng() % 3;
            for (std::size_t i = 0; i < na; ++i) apool.push_back(gen::rand_vector(zmodel(), rng, 2));
            for (std::size_t i = 0; i < nb; ++i) bpool.push_back(gen::rand_vector(zmodel(), rng, 2));
            const bool mine =
                ip_pattern_search(phi, psi, zmodel(), 2, apool, bpool).has_value();
            const bool oracle = oracles::oracle_ip_found(phi, psi, zmodel(), 2, apool, bpool);
            CHECK(mine == oracle);
        }
    }
}

TEST_CASE("order-atom alternation over finite chains") {
    OrderWithAction s;
    s.points = {"p0", "p1", "p2", "p3"};
    s.order = {0, 1, 2, 3};
    std::vector<int> id{0, 1, 2, 3};
    const std::vector<int> seq{0, 1, 2, 3};
    for (const Rel r1 : {Rel::LT, Rel::GT, Rel::EQ})
        for (const Rel r2 : {Rel::LT, Rel::GT, Rel::EQ}) {
            if (r1 == r2) continue;
            for (int b = 0; b < 4; ++b) {
                const AltResult r = order_atom_alt(s, id, r1, id, r2, seq, b);
                CHECK((r.no_alternation || r.value <= 1));
            }
        }
}

TEST_CASE("formulas invariant suite stays green") {
    const SuiteResult r = suite_formulas(19);
    INFO((r.notes.empty() ? std::string() : r.notes.front()));
    CHECK(r.failures == 0);
}
