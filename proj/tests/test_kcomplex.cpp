#include "doctest.h"

#include "fancohom/kcomplex.hpp"

using namespace fancohom;

namespace {

IntVec vec(std::initializer_list<long long> entries) {
    IntVec v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (long long e : entries) v(i++) = e;
    return v;
}

}  // namespace

TEST_CASE("orientation coefficients on the projective line") {
    const Fan f = projective_space_fan(1);
    // Cones: 0 the origin, 1 the ray at -1, 2 the ray at +1.
    CHECK(orientation_coefficient(f, 0, 1) == 1);
    CHECK(orientation_coefficient(f, 0, 2) == 1);
}

TEST_CASE("orientation coefficient signs depend on the ray order") {
    const Fan f = projective_space_fan(2);
    const Index e1 = *f.find(make_cone(2, {vec({1, 0})}));
    const Index e2 = *f.find(make_cone(2, {vec({0, 1})}));
    const Index quadrant = *f.find(make_cone(2, {vec({1, 0}), vec({0, 1})}));
    // The lifted class over e2 is e1, and e1 ^ e2 meets the lex generator
    // e1 ^ e2 head on, while over e1 the wedge comes out reversed.
    CHECK(orientation_coefficient(f, e2, quadrant) == -1);
    CHECK(orientation_coefficient(f, e1, quadrant) == 1);
}

TEST_CASE("orientation coefficients can be proper fractions") {
    const Fan f = Fan::from_maximal(2, {{vec({1, 0}), vec({1, 2})}});
    const Index low = *f.find(make_cone(2, {vec({1, 0})}));
    const Index high = *f.find(make_cone(2, {vec({1, 2})}));
    const Index whole = *f.find(make_cone(2, {vec({1, 0}), vec({1, 2})}));
    CHECK(orientation_coefficient(f, low, whole) == Rational(-1) / 2);
    CHECK(orientation_coefficient(f, high, whole) == Rational(1) / 2);
}

TEST_CASE("orientation coefficient rejects non-facet pairs") {
    const Fan f = projective_space_fan(2);
    CHECK_THROWS_AS(orientation_coefficient(f, 1, 1), FanError);
    const Index quadrant = *f.find(make_cone(2, {vec({1, 0}), vec({0, 1})}));
    CHECK_THROWS_AS(orientation_coefficient(f, 0, quadrant), FanError);
}

TEST_CASE("double complex of the projective line") {
    const Fan f = projective_space_fan(1);
    const DoubleComplex K = build_double_complex(f, 1);

    CHECK(K.size(0, 0) == 2);
    CHECK(K.size(0, 1) == 2);
    CHECK(K.size(1, 0) == 1);
    CHECK(K.size(1, 1) == 0);

    RatMat down(1, 2);
    down << 1, 1;
    CHECK(K.horizontal(0, 0) == down);

    RatMat over(2, 2);
    over << -1, 0, 0, 1;
    CHECK(K.vertical(0, 0) == over);

    CHECK(total_sizes(K) == std::vector<Index>{2, 3, 0});
    CHECK(total_cohomology_ranks(K) == std::vector<Index>{0, 1, 0});
}

TEST_CASE("double complex of the projective plane") {
    const Fan f = projective_space_fan(2);
    const DoubleComplex K = build_double_complex(f, 2);
    CHECK(total_sizes(K) == std::vector<Index>{3, 9, 7, 0, 0});
    CHECK(total_cohomology_ranks(K) == std::vector<Index>{0, 0, 1, 0, 0});
}

TEST_CASE("double complex verification") {
    SUBCASE("projective spaces pass") {
        CHECK(verify_double_complex(projective_space_fan(1)).verdict == Verdict::pass);
        CHECK(verify_double_complex(projective_space_fan(2)).verdict == Verdict::pass);
        CHECK(verify_double_complex(projective_space_fan(3)).verdict == Verdict::pass);
    }
    SUBCASE("hirzebruch surface passes") {
        CHECK(verify_double_complex(hirzebruch_fan(2)).verdict == Verdict::pass);
    }
    SUBCASE("a singular simplicial fan passes with fractional orientations") {
        const Fan f = Fan::from_maximal(2, {{vec({1, 0}), vec({0, 1})},
                                            {vec({0, 1}), vec({-1, -2})},
                                            {vec({-1, -2}), vec({1, 0})}});
        const Report rep = verify_double_complex(f);
        CHECK(rep.regime == "double complex");
        CHECK(rep.verdict == Verdict::pass);
    }
    SUBCASE("sign flip fails only the euler line") {
        const Report rep = verify_double_complex(projective_space_fan(2), VerifyOptions{true});
        CHECK(rep.verdict == Verdict::fail);
        int failing = 0;
        for (const CheckLine& c : rep.checks)
            if (!c.ok) ++failing;
        CHECK(failing == 1);
    }
    SUBCASE("incomplete fans are rejected") {
        const Fan f = Fan::from_maximal(2, {{vec({1, 0}), vec({0, 1})}});
        const Report rep = verify_double_complex(f);
        CHECK(rep.verdict == Verdict::hypothesis_violation);
        CHECK(rep.hypothesis_note == "the fan is not complete");
    }
    SUBCASE("non-simplicial fans are rejected") {
        const Fan cube = Fan::from_maximal(
            3, {{vec({1, 1, 1}), vec({1, 1, -1}), vec({1, -1, 1}), vec({1, -1, -1})},
                {vec({-1, 1, 1}), vec({-1, 1, -1}), vec({-1, -1, 1}), vec({-1, -1, -1})},
                {vec({1, 1, 1}), vec({1, 1, -1}), vec({-1, 1, 1}), vec({-1, 1, -1})},
                {vec({1, -1, 1}), vec({1, -1, -1}), vec({-1, -1, 1}), vec({-1, -1, -1})},
                {vec({1, 1, 1}), vec({1, -1, 1}), vec({-1, 1, 1}), vec({-1, -1, 1})},
                {vec({1, 1, -1}), vec({1, -1, -1}), vec({-1, 1, -1}), vec({-1, -1, -1})}});
        CHECK(cube.is_complete());
        const Report rep = verify_double_complex(cube);
        CHECK(rep.verdict == Verdict::hypothesis_violation);
        CHECK(rep.hypothesis_note == "the fan is not simplicial");
    }
}
