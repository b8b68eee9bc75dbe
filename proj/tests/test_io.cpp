#include <doctest.h>

#include <sstream>

#include "bct/cone.hpp"
#include "bct/io.hpp"
#include "bct/random_gen.hpp"
#include "bct/zigzag.hpp"

using namespace bct;

namespace {

Bicomplex reparse(const Bicomplex& b) {
    std::istringstream is(serialize_bicomplex(b));
    return parse_bicomplex(is, "<memory>");
}

}  // namespace

TEST_CASE("square fixture file parses") {
    std::istringstream is(
        "bcx 1\n"
        "# the free square on x\n"
        "block 0 0 1\nblock 1 0 1\nblock 0 1 1\nblock 1 1 1\n"
        "del 0 0\n1\n"
        "del 0 1\n1\n"
        "delbar 0 0\n1\n"
        "delbar 1 0\n-1\n");
    Bicomplex b = parse_bicomplex(is, "<memory>");
    CHECK(b == Bicomplex::square_at({0, 0}));
}

TEST_CASE("empty block list parses to the zero bicomplex") {
    std::istringstream is("bcx 1\n");
    CHECK(parse_bicomplex(is, "<memory>").is_zero());
}

TEST_CASE("shape errors carry the bidegree") {
    std::istringstream is(
        "bcx 1\nblock 0 0 2\nblock 1 0 1\n"
        "del 0 0\n1\n");  // should be a 1x2 matrix
    CHECK_THROWS_WITH_AS(parse_bicomplex(is, "<memory>"),
                         doctest::Contains("expected 2 entries"), std::runtime_error);
}

TEST_CASE("malformed rationals are rejected with context") {
    std::istringstream is("bcx 1\nblock 0 0 1\nblock 1 0 1\ndel 0 0\n1/0\n");
    CHECK_THROWS_WITH_AS(parse_bicomplex(is, "<memory>"), doctest::Contains("denominator"),
                         std::runtime_error);
}

TEST_CASE("duplicate blocks are rejected") {
    std::istringstream is("bcx 1\nblock 0 0 1\nblock 0 0 2\n");
    CHECK_THROWS_WITH_AS(parse_bicomplex(is, "<memory>"), doctest::Contains("declared twice"),
                         std::runtime_error);
}

TEST_CASE("round trip is the identity on random bicomplexes") {
    Rng rng(167);
    for (int trial = 0; trial < 40; ++trial) {
        Bicomplex b = random_bicomplex(rng, 14);
        CHECK(reparse(b) == b);
    }
    CHECK(reparse(make_zigzag({ZigZagFamily::C, 3, {-2, 5}})) ==
          make_zigzag({ZigZagFamily::C, 3, {-2, 5}}));
}

TEST_CASE("serialization is deterministic") {
    Rng rng(173);
    Bicomplex b = random_bicomplex(rng, 12);
    CHECK(serialize_bicomplex(b) == serialize_bicomplex(b));
    Bicomplex c = reparse(b);
    CHECK(serialize_bicomplex(c) == serialize_bicomplex(b));
}

TEST_CASE("cbba file round trip") {
    std::string text =
        "cbba 1\n"
        "truncate 6\n"
        "gen x 1 1\ngen y 2 2\ngen Dy 3 2\ngen Dby 2 3\n"
        "del y = Dy\n"
        "delbar y = Dby\n"
        "del Dby = x^3\n"
        "delbar Dy = - x^3\n";
    std::istringstream is(text);
    TruncatedCbba a = parse_cbba(is, "<memory>");
    CHECK(a.truncation() == 6);
    CHECK(a.validate().ok());
    std::istringstream is2(serialize_cbba(a));
    TruncatedCbba b = parse_cbba(is2, "<memory>");
    CHECK(a.same_presentation(b));
}

TEST_CASE("shipped fixture files load and behave as expected") {
    const std::string dir = BCT_FIXTURE_DIR "/";
    CHECK(load_bicomplex(dir + "square.bcx") == Bicomplex::square_at({0, 0}));
    CHECK(load_bicomplex(dir + "dot.bcx") == Bicomplex::dot({0, 0}));
    CHECK(load_bicomplex(dir + "a1.bcx") == make_zigzag({ZigZagFamily::A, 1, {0, 0}}));
    CHECK(load_bicomplex(dir + "b2.bcx") == make_zigzag({ZigZagFamily::B, 2, {0, 0}}));
    TruncatedCbba cp2 = load_cbba(dir + "cp2.cbba");
    CHECK(cp2.validate().ok());
    HirschExtension e = load_hirsch_extension(dir + "cp2.hext");
    CHECK(e.v.total_dim() == 3);
    BicomplexMap f = load_bicomplex_map(dir + "corner_incl.bmap");
    CHECK(validate_map(f).ok());
    ReducedConeInput rc = load_reduced_cone(dir + "a1.rmap");
    CHECK(reduced_cone(rc.v, rc.w, rc.phi, rc.phibar) ==
          make_zigzag({ZigZagFamily::A, 1, {0, 0}}));

    // the scrambled fixture decomposes to exactly one square, one A1, one B2
    Bicomplex scr = load_bicomplex(dir + "scrambled.bcx");
    Decomposition dec = full_decompose(scr);
    CHECK(dec.square_counts() == std::map<Bidegree, int>{{{0, 0}, 1}});
    std::map<ZigZagDescriptor, int> want{{{ZigZagFamily::A, 1, {0, 0}}, 1},
                                         {{ZigZagFamily::B, 2, {0, 0}}, 1}};
    CHECK(dec.zigzag_counts() == want);
}

TEST_CASE("algebra expression parser") {
    TruncatedCbba a({{"x", {1, 1}}, {"y", {1, 0}}}, 6);
    AlgebraElement e = parse_algebra_expr(a, "3/2 x^2 - y + 1", "<test>");
    AlgebraElement x = a.gen_elem(a.gen_index("x"));
    AlgebraElement want =
        Rational(3, 2) * a.mul(x, x) + Rational(-1) * a.gen_elem(a.gen_index("y")) + a.one();
    CHECK(e == want);
    CHECK_THROWS_AS(parse_algebra_expr(a, "z", "<test>"), std::runtime_error);
    CHECK_THROWS_AS(parse_algebra_expr(a, "y^2", "<test>"), std::runtime_error);
    CHECK_THROWS_AS(parse_algebra_expr(a, "x^4", "<test>"), std::runtime_error);
    // round trip through the printer
    AlgebraElement back = parse_algebra_expr(a, algebra_expr_str(a, e), "<test>");
    CHECK(back == e);
}
