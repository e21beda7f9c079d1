#include <catch2/catch_amalgamated.hpp>

#include "ovsa/check.hpp"
#include "ovsa/orders.hpp"

using namespace ovsa;

TEST_CASE("compare on the basic shapes") {
    const IndexOrder z = order_int();
    CHECK(compare(z, elem_at(3), elem_at(5)) == Ord::LT);
    CHECK(compare(z, elem_at(5), elem_at(5)) == Ord::EQ);

    const IndexOrder zz = order_concat(order_int(), order_int());
    CHECK(compare(zz, elem_left(elem_at(100)), elem_right(elem_at(-100))) == Ord::LT);

    const IndexOrder rz = order_int_reversed();
    CHECK(compare(rz, elem_at(3), elem_at(5)) == Ord::GT);
}

TEST_CASE("element validation") {
    const IndexOrder f3 = order_finite(3);
    CHECK_NOTHROW(check_element(f3, elem_at(2)));
    CHECK_THROWS_AS(check_element(f3, elem_at(5)), ElementNotInOrderError);
    CHECK_THROWS_AS(check_element(f3, elem_left(elem_at(0))), ElementNotInOrderError);
    const IndexOrder zz = order_concat(order_int(), order_finite(2));
    CHECK_THROWS_AS(check_element(zz, elem_at(0)), ElementNotInOrderError);
    CHECK_THROWS_AS(compare(zz, elem_left(elem_at(0)), elem_right(elem_at(7))),
                    ElementNotInOrderError);
}

TEST_CASE("automorphism application and powers") {
    const IndexOrder z = order_int();
    const OrderAuto s1 = auto_shift(1);
    CHECK(apply_auto(s1, z, elem_at(0)) == elem_at(1));
    CHECK(apply_auto_power(s1, z, elem_at(0), -3) == elem_at(-3));

    const IndexOrder zz = order_concat(order_int(), order_int());
    const OrderAuto both = auto_concat(auto_shift(-1), auto_shift(1));
    CHECK(apply_auto(both, zz, elem_left(elem_at(0))) == elem_left(elem_at(-1)));
    CHECK(apply_auto(both, zz, elem_right(elem_at(0))) == elem_right(elem_at(1)));

    // shifts only act on Z-like blocks
    CHECK_THROWS_AS(check_auto(order_finite(3), auto_shift(1)), SchemaError);
    CHECK_NOTHROW(check_auto(order_finite(3), auto_identity()));
}

TEST_CASE("cut side queries on the pinned examples") {
    const IndexOrder z = order_int();
    const IndexCut below5 = cut_below_element(elem_at(5));
    CHECK(cut_side(below5, z, elem_at(5)) == Side::Right);
    CHECK(cut_side(below5, z, elem_at(4)) == Side::Left);

    const IndexOrder zz = order_concat(order_int(), order_int());
    CHECK(cut_side(cut_concat_seam(), zz, elem_right(elem_at(-10))) == Side::Right);
    CHECK(cut_side(cut_concat_seam(), zz, elem_left(elem_at(10))) == Side::Left);

    const auto witness = cut_exists_right_below(cut_below_element(elem_at(0)), z, elem_at(7));
    REQUIRE(witness.has_value());
    CHECK(cut_side(cut_below_element(elem_at(0)), z, *witness) == Side::Right);
    CHECK(compare(z, *witness, elem_at(7)) != Ord::GT);

    CHECK_FALSE(cut_exists_right_below(cut_at_plus_infinity(), z, elem_at(100)).has_value());
    CHECK_FALSE(cut_exists_left_above(cut_at_minus_infinity(), z, elem_at(-100)).has_value());
}

TEST_CASE("image-under-auto cuts relocate with the automorphism") {
    const IndexOrder z = order_int();
    const IndexCut base = cut_below_element(elem_at(0));
    const IndexCut shifted = cut_image_under_auto(base, auto_shift(1), 3);
    // left part becomes {j : j < 3}
    CHECK(cut_side(shifted, z, elem_at(2)) == Side::Left);
    CHECK(cut_side(shifted, z, elem_at(3)) == Side::Right);
    const auto w = cut_exists_right_below(shifted, z, elem_at(10));
    REQUIRE(w.has_value());
    CHECK(*w == elem_at(3));
}

TEST_CASE("orders invariant suite stays green") {
    const SuiteResult r = suite_orders(3);
    INFO((r.notes.empty() ? std::string() : r.notes.front()));
    CHECK(r.failures == 0);
}
