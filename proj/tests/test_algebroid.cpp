#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algb/algebroid.hpp"
#include "helpers.hpp"

using namespace algb;
using namespace algb::test;

namespace {

Algebroid sl2_like(const RingPtr& ring, bool broken) {
    // zero anchor, constant structure functions on O^3: e=0, f=1, h=2
    PresentedModule o3 = PresentedModule::free_module(ring, 3);
    std::map<std::pair<std::size_t, std::size_t>, FreeElement> st;
    st.emplace(std::make_pair<std::size_t, std::size_t>(0, 1), fe(ring, {"0", "0", "1"}));
    st.emplace(std::make_pair<std::size_t, std::size_t>(0, 2),
               broken ? fe(ring, {"-1", "0", "0"}) : fe(ring, {"-2", "0", "0"}));
    st.emplace(std::make_pair<std::size_t, std::size_t>(1, 2), fe(ring, {"0", "2", "0"}));
    return make_algebroid(ring, o3, zero_matrix(ring, 3, ring->nvars()), st);
}

}  // namespace

TEST_CASE("bracket evaluation on the tangent algebroid") {
    auto R = Ring::make({"x", "y"});
    Algebroid t = tangent_algebroid(R);

    // {x dx, dy} = -dy(x) dx = 0
    CHECK(bracket_eval(t, fe(R, {"x", "0"}), fe(R, {"0", "1"})).is_zero());
    // {dx, x dy} = dx(x) dy = dy
    CHECK(bracket_eval(t, fe(R, {"1", "0"}), fe(R, {"x", "0"})).is_zero());
    CHECK(bracket_eval(t, fe(R, {"1", "0"}), fe(R, {"0", "x"})) == fe(R, {"0", "1"}));
}

TEST_CASE("rank-1 bracket follows the Leibniz identity twice") {
    auto R = Ring::make({"x", "y"});
    Algebroid a = algebroid_from_involutive_submodule(R, {fe(R, {"y", "x"})});
    Rng rng(20240820);
    for (int trial = 0; trial < 20; ++trial) {
        Poly g = rng.poly(R, 2), h = rng.poly(R, 2);
        FreeElement u(R, 1), v(R, 1);
        u[0] = g;
        v[0] = h;
        FreeElement lhs = bracket_eval(a, u, v);
        // {g v, h v} = (g a(v)(h) - h a(v)(g)) v
        FreeElement av(R, 2);
        av[0] = pp("y", R);
        av[1] = pp("x", R);
        Poly expected = g * field_apply(av, h) - h * field_apply(av, g);
        CHECK(lhs[0] == expected);
    }
}

TEST_CASE("validation: tangent algebroid and constant structure algebras") {
    auto R2 = Ring::make({"x", "y"});
    CHECK(validate_algebroid(tangent_algebroid(R2)).ok());

    auto R1 = Ring::make({"x"});
    CHECK(validate_algebroid(sl2_like(R1, false)).ok());

    ValidationReport bad = validate_algebroid(sl2_like(R1, true));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.failures[0].axiom == "jacobi");
    CHECK(bad.failures[0].witness == "(0,1,2)");
}

TEST_CASE("validation flags the unchecked reflexivity hypothesis") {
    auto R = Ring::make({"x"});
    ValidationReport r = validate_algebroid(tangent_algebroid(R));
    REQUIRE_FALSE(r.notes.empty());
    CHECK(r.notes[0].find("reflexivity") != std::string::npos);
}

TEST_CASE("singular loci via Fitting ideals") {
    auto R2 = Ring::make({"x", "y"});
    auto R1 = Ring::make({"x"});

    Algebroid rot = algebroid_from_involutive_submodule(R2, {fe(R2, {"y", "x"})});
    CHECK(ideals_equal(singular_locus(rot), Ideal{R2, {pp("x", R2), pp("y", R2)}}));

    Algebroid ddx = algebroid_from_involutive_submodule(R2, {fe(R2, {"1", "0"})});
    CHECK(is_unit_ideal(singular_locus(ddx)));

    Algebroid xddx = algebroid_from_involutive_submodule(R1, {fe(R1, {"x"})});
    CHECK(ideals_equal(singular_locus(xddx), Ideal{R1, {pp("x", R1)}}));

    CHECK(is_unit_ideal(singular_locus(tangent_algebroid(R2))));
}

TEST_CASE("anchor image") {
    auto R = Ring::make({"x", "y"});
    Algebroid rot = algebroid_from_involutive_submodule(R, {fe(R, {"y", "x"})});
    PresentedModule im = anchor_image(rot);
    REQUIRE(im.ngens() == 1);
    CHECK(im.generators[0] == fe(R, {"y", "x"}));

    CHECK(anchor_image(tangent_algebroid(R)).generic_rank() == 2);

    Algebroid zero_anchor = sl2_like(Ring::make({"x"}), false);
    CHECK(anchor_image(zero_anchor).is_zero());
}

TEST_CASE("algebroid from involutive submodules") {
    auto R = Ring::make({"x", "y"});
    SUBCASE("commuting diagonal fields have zero structure functions") {
        Algebroid a = algebroid_from_involutive_submodule(R, {fe(R, {"x", "0"}), fe(R, {"0", "y"})});
        CHECK(a.structure.empty());
        CHECK(validate_algebroid(a).ok());
    }
    SUBCASE("rank one is always involutive") {
        Algebroid a = algebroid_from_involutive_submodule(R, {fe(R, {"y", "x"})});
        CHECK(a.structure.empty());
        CHECK(validate_algebroid(a).ok());
    }
    SUBCASE("non-involutive pairs are rejected with a witness") {
        try {
            static_cast<void>(
                algebroid_from_involutive_submodule(R, {fe(R, {"1", "0"}), fe(R, {"0", "x"})}));
            CHECK(false);
        } catch (const NotInvolutiveError& e) {
            CHECK(e.gen_i() == 0);
            CHECK(e.gen_j() == 1);
            CHECK(e.remainder() == "(0, 1)");  // [dx, x dy] = dy survives reduction
        }
    }
}

TEST_CASE("bracket antisymmetry and anchor morphism on random pairs") {
    Rng rng(20240821);
    auto R = Ring::make({"x", "y"});
    std::vector<Algebroid> fixtures;
    fixtures.push_back(tangent_algebroid(R));
    fixtures.push_back(algebroid_from_involutive_submodule(R, {fe(R, {"y", "x"})}));
    fixtures.push_back(algebroid_from_involutive_submodule(R, {fe(R, {"x", "0"}), fe(R, {"0", "y"})}));

    for (const auto& a : fixtures) {
        SubmoduleBasis rels = relation_basis(a.carrier);
        for (int trial = 0; trial < 50; ++trial) {
            FreeElement u = rng.element(R, a.ngens(), 2);
            FreeElement v = rng.element(R, a.ngens(), 2);
            FreeElement s = bracket_eval(a, u, v, &rels) + bracket_eval(a, v, u, &rels);
            CHECK(rels.reduce(s).is_zero());
            // anchor carries the bracket to the classical field bracket
            FreeElement lhs = a.anchor_field(bracket_eval(a, u, v, &rels));
            FreeElement rhs = lie_bracket_fields(a.anchor_field(u), a.anchor_field(v));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("Leibniz identity holds exactly for random data") {
    Rng rng(20240822);
    auto R = Ring::make({"x", "y"});
    Algebroid a = algebroid_from_involutive_submodule(R, {fe(R, {"x", "0"}), fe(R, {"0", "y"})});
    SubmoduleBasis rels = relation_basis(a.carrier);
    for (int trial = 0; trial < 30; ++trial) {
        Poly g = rng.poly(R, 2);
        FreeElement u = rng.element(R, 2, 2), v = rng.element(R, 2, 2);
        FreeElement lhs = bracket_eval(a, u.scaled(g), v, &rels);
        FreeElement rhs = bracket_eval(a, u, v, &rels).scaled(g) -
                          u.scaled(field_apply(a.anchor_field(v), g));
        CHECK(rels.reduce(lhs - rhs).is_zero());
    }
}

TEST_CASE("lift_ambient expresses tangent vectors in carrier generators") {
    auto R = Ring::make({"x", "y"});
    Algebroid a = algebroid_from_involutive_submodule(R, {fe(R, {"x", "0"}), fe(R, {"0", "y"})});
    auto c = a.lift_ambient(fe(R, {"x^2", "x*y"}));
    REQUIRE(c.has_value());
    CHECK(a.carrier.realize(*c) == fe(R, {"x^2", "x*y"}));
    CHECK_FALSE(a.lift_ambient(fe(R, {"1", "0"})).has_value());
}
