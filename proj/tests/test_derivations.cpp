#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "malcev/catalog.hpp"
#include "malcev/derivations.hpp"

using namespace malcev;

namespace {

MapTuple constant_tuple(const LinearMap& m, std::size_t arity) {
    MapTuple t;
    for (std::size_t s = 0; s <= arity; ++s) t.maps.push_back(m);
    return t;
}

}  // namespace

TEST_CASE("assembled system shapes") {
    const NaryAlgebra m8 = make_m8();
    const Matrix sys8 = assemble_system(m8, ConstraintProfile::unconstrained(3));
    CHECK(sys8.rows() == 4096);
    CHECK(sys8.cols() == 256);

    const NaryAlgebra m7 = make_m7();
    const Matrix sys7 = assemble_system(m7, ConstraintProfile::derivation(2));
    CHECK(sys7.rows() == 343);
    CHECK(sys7.cols() == 49);

    const Matrix zero_sys = assemble_system(zero_algebra(2, 3), ConstraintProfile::quasi(2));
    CHECK(zero_sys.is_zero());
    CHECK(zero_sys.rows() == 27);
    CHECK(zero_sys.cols() == 2 * 9);
}

TEST_CASE("derivation spaces of the shipped algebras") {
    CHECK(derivation_space(make_m7()).dim() == 14);
    CHECK(derivation_space(make_sl2()).dim() == 3);
    CHECK(derivation_space(make_m8()).dim() == 21);
}

TEST_CASE("delta derivation spaces") {
    const NaryAlgebra m7 = make_m7();
    SECTION("delta = 1 reproduces the derivation space") {
        CHECK(delta_derivation_space(m7, Rational(1)).tuple_basis ==
              derivation_space(m7).tuple_basis);
    }
    SECTION("the identity map is a 1/n-derivation") {
        CHECK(delta_derivation_space(m7, Rational(1, 2))
                  .class_basis.contains(LinearMap::identity(7).flatten()));
        const NaryAlgebra m8 = make_m8();
        CHECK(delta_derivation_space(m8, Rational(1, 3))
                  .class_basis.contains(LinearMap::identity(8).flatten()));
    }
    SECTION("sl2 has nontrivial (-1)-derivations") {
        const TupleSpace neg = delta_derivation_space(make_sl2(), Rational(-1));
        CHECK(neg.dim() == 5);
        CHECK(neg.dim() > 0);
    }
    SECTION("generic delta on M7 has no solutions") {
        CHECK(delta_derivation_space(m7, Rational(2)).dim() == 0);
    }
}

TEST_CASE("(n+1)-ary derivation spaces") {
    const NaryAlgebra m7 = make_m7();
    const TupleSpace nary7 = nary_derivation_space(m7);
    CHECK(nary7.dim() == derivation_space(m7).dim() + 2);

    const NaryAlgebra m8 = make_m8();
    const TupleSpace nary8 = nary_derivation_space(m8);
    CHECK(nary8.dim() == derivation_space(m8).dim() + 3);
    CHECK(nary8.dim() == 24);

    const NaryAlgebra zero = zero_algebra(2, 2);
    CHECK(nary_derivation_space(zero).dim() == 3 * 4);
}

TEST_CASE("quasiderivation spaces") {
    const NaryAlgebra m7 = make_m7();
    const TupleSpace qder = quasiderivation_space(m7);
    const MapSpace gder = generalized_derivation_space(m7);
    CHECK(qder.slot_projection(0) == gder.maps);
    CHECK(qder.tuple_basis.contains_all(derivation_space(m7).tuple_basis));
    CHECK(quasiderivation_space(zero_algebra(2, 2)).dim() == 2 * 4);
}

TEST_CASE("generalized derivation spaces") {
    const NaryAlgebra m7 = make_m7();
    const MapSpace gder = generalized_derivation_space(m7);
    const TupleSpace der = derivation_space(m7);
    for (const Vec& d : der.class_basis.vectors()) CHECK(gder.maps.contains(d));
    CHECK(gder.contains(LinearMap::identity(7)));
    CHECK(gder.dim() == 15);

    const MapSpace gder8 = generalized_derivation_space(make_m8());
    CHECK(gder8.dim() == derivation_space(make_m8()).dim() + 1);

    CHECK(generalized_derivation_space(zero_algebra(2, 2)).dim() == 4);
}

TEST_CASE("centroids") {
    const NaryAlgebra m7 = make_m7();
    const MapSpace cen7 = centroid(m7);
    CHECK(cen7.contains(LinearMap::identity(7)));
    CHECK(cen7.dim() == 1);
    CHECK(centroid(make_m8()).dim() == 1);
    const MapSpace cen_sum = centroid(direct_sum(make_sl2(), m7));
    CHECK(cen_sum.dim() == 2);
    // the two projection idempotents
    Matrix proj1(10, 10), proj2(10, 10);
    for (std::size_t i = 0; i < 3; ++i) proj1(i, i) = 1;
    for (std::size_t i = 3; i < 10; ++i) proj2(i, i) = 1;
    CHECK(cen_sum.contains(LinearMap(proj1)));
    CHECK(cen_sum.contains(LinearMap(proj2)));
}

TEST_CASE("trivial tuple spaces") {
    const NaryAlgebra m7 = make_m7();
    const TupleSpace triv7 = trivial_tuple_space(m7);
    CHECK(triv7.dim() == derivation_space(m7).dim() + 2);

    const TupleSpace triv8 = trivial_tuple_space(make_m8());
    CHECK(triv8.dim() == 21 + 3);

    // (id, id/2, id/2) is the centroid family at psi_1 = psi_2 = id/2
    MapTuple t;
    t.maps.push_back(LinearMap::identity(7));
    t.maps.push_back(LinearMap::identity(7).scaled(Rational(1, 2)));
    t.maps.push_back(LinearMap::identity(7).scaled(Rational(1, 2)));
    CHECK(triv7.tuple_basis.contains(t.flatten()));
}

TEST_CASE("triviality certificates") {
    const TrivialityReport m7rep = triviality_certificate(make_m7());
    CHECK(m7rep.trivial);
    CHECK_FALSE(m7rep.witness.has_value());

    const TrivialityReport m8rep = triviality_certificate(make_m8());
    CHECK(m8rep.trivial);
    CHECK(m8rep.nary_dim == 24);

    const NaryAlgebra sum = direct_sum(make_sl2(), make_m7());
    const TrivialityReport sumrep = triviality_certificate(sum);
    CHECK_FALSE(sumrep.trivial);
    REQUIRE(sumrep.witness.has_value());
    CHECK(verify_member(sum, *sumrep.witness));
    CHECK_FALSE(trivial_tuple_space(sum).tuple_basis.contains(sumrep.witness->flatten()));
}

TEST_CASE("slot permutations") {
    const NaryAlgebra m7 = make_m7();
    const TupleSpace nary7 = nary_derivation_space(m7);
    const std::size_t ident[2] = {1, 2};
    const std::size_t swap12[2] = {2, 1};
    for (std::size_t k = 0; k < nary7.dim(); ++k) {
        const MapTuple t = nary7.tuple_at(k);
        CHECK(permute_tuple(t, ident).flatten() == t.flatten());
        CHECK(verify_member(m7, permute_tuple(t, swap12)));
    }
    const std::size_t bad[2] = {1, 3};
    const std::size_t dup[2] = {1, 1};
    CHECK_THROWS_AS(permute_tuple(nary7.tuple_at(0), bad), std::invalid_argument);
    CHECK_THROWS_AS(permute_tuple(nary7.tuple_at(0), dup), std::invalid_argument);
}

TEST_CASE("inner derivations of M8") {
    const NaryAlgebra m8 = make_m8();
    const MapSpace inner = inner_derivations_m8(m8);
    CHECK(inner.dim() == 21);
    CHECK(inner.maps == derivation_space(m8).slot_projection(0));

    // individual generators are derivations, including degenerate choices
    auto generator = [&](const Element& x, const Element& y, const Element& z) {
        const Element xy[2] = {x, y};
        const Element xz[2] = {x, z};
        const LinearMap r1 = right_mult_operator(m8, xy);
        const LinearMap r2 = right_mult_operator(m8, xz);
        const Element w = product(m8, {y, x, z});
        const Element xw[2] = {x, w};
        return LinearMap(r2.mat * r1.mat - r1.mat * r2.mat +
                         right_mult_operator(m8, xw).mat);
    };
    const Element e1 = basis_element(m8, 0), e2 = basis_element(m8, 1),
                  e3 = basis_element(m8, 2);
    CHECK(verify_member(m8, constant_tuple(generator(e2, e3, e3), 3)));
    CHECK(verify_member(m8, constant_tuple(generator(e1, e1, e1), 3)));
    CHECK(inner.contains(generator(e2, e3, e3)));
}

TEST_CASE("membership verification") {
    const NaryAlgebra m7 = make_m7();
    CHECK(verify_member(m7, constant_tuple(LinearMap::zero(7), 2)));
    const TupleSpace der = derivation_space(m7);
    for (std::size_t k = 0; k < der.dim(); ++k)
        CHECK(verify_member(m7, der.tuple_at(k)));

    // a random non-solution
    MapTuple bad = constant_tuple(LinearMap::identity(7), 2);
    CHECK_FALSE(verify_member(m7, bad));

    MapTuple mismatched = constant_tuple(LinearMap::identity(6), 2);
    CHECK_THROWS_AS(verify_member(m7, mismatched), std::invalid_argument);
}

TEST_CASE("solution spaces are sound and complete") {
    const NaryAlgebra m7 = make_m7();
    const NaryAlgebra sl2 = make_sl2();
    struct Case {
        const NaryAlgebra* a;
        ConstraintProfile profile;
    };
    const std::vector<Case> cases = {
        {&m7, ConstraintProfile::derivation(2)},
        {&m7, ConstraintProfile::delta(2, Rational(1, 2))},
        {&m7, ConstraintProfile::quasi(2)},
        {&m7, ConstraintProfile::unconstrained(2)},
        {&sl2, ConstraintProfile::delta(2, Rational(-1))},
        {&sl2, ConstraintProfile::unconstrained(2)},
    };
    for (const Case& c : cases) {
        const TupleSpace ts = solve_profile(*c.a, c.profile);
        for (std::size_t k = 0; k < ts.dim(); ++k)
            CHECK(verify_member(*c.a, ts.tuple_at(k)));
        const Matrix sys = assemble_system(*c.a, c.profile);
        CHECK(rank(sys) + ts.class_basis.dim() == sys.cols());
    }
}

TEST_CASE("space dimensions are invariant under tensor rescaling") {
    const NaryAlgebra m7 = make_m7();
    const NaryAlgebra scaled = scale_algebra(m7, Rational(3));
    CHECK(derivation_space(scaled).dim() == derivation_space(m7).dim());
    CHECK(nary_derivation_space(scaled).dim() == nary_derivation_space(m7).dim());
    CHECK(quasiderivation_space(scaled).dim() == quasiderivation_space(m7).dim());
    CHECK(centroid(scaled).dim() == centroid(m7).dim());
    CHECK(delta_derivation_space(scaled, Rational(1, 2)).dim() ==
          delta_derivation_space(m7, Rational(1, 2)).dim());
}

TEST_CASE("chain of inclusions on M7") {
    const NaryAlgebra m7 = make_m7();
    const TupleSpace der = derivation_space(m7);
    const TupleSpace delta_half = delta_derivation_space(m7, Rational(1, 2));
    const TupleSpace qder = quasiderivation_space(m7);
    const TupleSpace nary = nary_derivation_space(m7);
    CHECK(qder.tuple_basis.contains_all(der.tuple_basis));
    CHECK(qder.tuple_basis.contains_all(delta_half.tuple_basis));
    CHECK(nary.tuple_basis.contains_all(qder.tuple_basis));
    // strictness of the first inclusion: the identity map separates
    CHECK(delta_half.class_basis.contains(LinearMap::identity(7).flatten()));
    CHECK_FALSE(der.class_basis.contains(LinearMap::identity(7).flatten()));
}
