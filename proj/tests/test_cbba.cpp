#include <doctest.h>

#include "fixtures.hpp"

using namespace bct;

TEST_CASE("polynomial algebra on one even generator") {
    TruncatedCbba a = fixtures::poly_x(6);
    // basis {1, x, x^2, x^3}
    CHECK(a.dim({0, 0}) == 1);
    CHECK(a.dim({1, 1}) == 1);
    CHECK(a.dim({2, 2}) == 1);
    CHECK(a.dim({3, 3}) == 1);
    int total = 0;
    for (auto& [bd, d] : a.dims()) total += d;
    CHECK(total == 4);
    CHECK(a.validate().ok());
    // x^3 · x = 0 by truncation
    AlgebraElement x = a.gen_elem(0);
    AlgebraElement x3 = a.mul(a.mul(x, x), x);
    CHECK(!x3.is_zero());
    CHECK(a.mul(x3, x).is_zero());
}

TEST_CASE("odd generator squares to zero") {
    TruncatedCbba a({{"y", {1, 0}}}, 4);
    AlgebraElement y = a.gen_elem(0);
    CHECK(a.mul(y, y).is_zero());
    CHECK(a.dim({2, 0}) == 0);
}

TEST_CASE("graded commutativity signs") {
    TruncatedCbba a({{"u", {1, 0}}, {"w", {0, 1}}}, 4);
    AlgebraElement u = a.gen_elem(a.gen_index("u"));
    AlgebraElement w = a.gen_elem(a.gen_index("w"));
    // both odd: uw = -wu
    CHECK(a.mul(u, w) == Rational(-1) * a.mul(w, u));
    TruncatedCbba b({{"x", {1, 1}}, {"y", {1, 0}}}, 6);
    AlgebraElement x = b.gen_elem(b.gen_index("x"));
    AlgebraElement y = b.gen_elem(b.gen_index("y"));
    CHECK(b.mul(x, y) == b.mul(y, x));  // even times odd commutes
}

TEST_CASE("projective-plane fixture validates with the forced sign") {
    // Λ(x, y, ∂y, ∂̄y) with ∂∂̄y = x^3: encode ∂y, ∂̄y as generators Dy, Dby
    // with ∂(Dby) = x^3 and anticommutation forcing ∂̄(Dy) = −x^3.
    TruncatedCbba a({{"x", {1, 1}}, {"y", {2, 2}}, {"Dy", {3, 2}}, {"Dby", {2, 3}}}, 6);
    AlgebraElement x = a.gen_elem(a.gen_index("x"));
    AlgebraElement x3 = a.mul(a.mul(x, x), x);
    a.set_del_gen(a.gen_index("y"), a.gen_elem(a.gen_index("Dy")));
    a.set_delbar_gen(a.gen_index("y"), a.gen_elem(a.gen_index("Dby")));
    a.set_del_gen(a.gen_index("Dby"), x3);
    a.set_delbar_gen(a.gen_index("Dy"), Rational(-1) * x3);
    CHECK(a.validate().ok());

    // flipping the forced sign breaks anticommutation on y
    a.set_delbar_gen(a.gen_index("Dy"), x3);
    Diagnostics d = a.validate();
    REQUIRE(!d.ok());
    CHECK(d.str().find("anticommutation fails on y") != std::string::npos);
}

TEST_CASE("derivations satisfy the Leibniz rule") {
    TruncatedCbba a({{"x", {1, 1}}, {"y", {1, 0}}, {"z", {0, 1}}}, 6);
    a.set_del_gen(a.gen_index("z"), a.gen_elem(a.gen_index("x")));
    a.set_delbar_gen(a.gen_index("y"), Rational(-1) * a.gen_elem(a.gen_index("x")));
    REQUIRE(a.validate().ok());
    AlgebraElement y = a.gen_elem(a.gen_index("y"));
    AlgebraElement z = a.gen_elem(a.gen_index("z"));
    AlgebraElement yz = a.mul(y, z);
    // ∂(yz) = ∂y z − y ∂z = −y x
    CHECK(a.del(yz) == Rational(-1) * a.mul(y, a.gen_elem(a.gen_index("x"))));
    // ∂̄(yz) = ∂̄y z − y ∂̄z = −x z
    CHECK(a.delbar(yz) == Rational(-1) * a.mul(a.gen_elem(a.gen_index("x")), z));
}

TEST_CASE("to_bicomplex is a valid truncated bicomplex") {
    TruncatedCbba a({{"x", {1, 1}}, {"y", {2, 2}}, {"Dy", {3, 2}}, {"Dby", {2, 3}}}, 6);
    AlgebraElement x = a.gen_elem(a.gen_index("x"));
    AlgebraElement x3 = a.mul(a.mul(x, x), x);
    a.set_del_gen(a.gen_index("y"), a.gen_elem(a.gen_index("Dy")));
    a.set_delbar_gen(a.gen_index("y"), a.gen_elem(a.gen_index("Dby")));
    a.set_del_gen(a.gen_index("Dby"), x3);
    a.set_delbar_gen(a.gen_index("Dy"), Rational(-1) * x3);
    Bicomplex b = a.to_bicomplex();
    CHECK(b.validate().ok());
    CHECK(b.total_dim() > 0);
    for (const auto& [bd, d] : a.dims()) CHECK(b.dim(bd) == d);
}

TEST_CASE("wedge degree bound holds combinatorially") {
    TruncatedCbba a({{"x", {1, 1}}, {"w", {2, 1}}}, 8);
    CHECK(a.wedge_degrees_ok());
    TruncatedCbba b({{"u", {1, 0}}, {"v", {0, 1}}, {"x", {1, 1}}}, 7);
    CHECK(b.wedge_degrees_ok());
}

TEST_CASE("unverifiable identities are reported above the cutoff") {
    TruncatedCbba a = fixtures::poly_x(6);
    auto notes = a.unverifiable_identities();
    // x^3 has degree 6 > 6−2: unverifiable
    CHECK(!notes.empty());
}

TEST_CASE("generator constraints") {
    CHECK_THROWS_AS(TruncatedCbba({{"x", {-1, 1}}}, 6), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedCbba({{"x", {0, 0}}}, 6), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedCbba({{"x", {1, 1}}, {"x", {1, 1}}}, 6), std::invalid_argument);
}
