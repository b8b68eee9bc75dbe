#include <doctest.h>

#include "bct/cohomology.hpp"
#include "bct/zigzag.hpp"

using namespace bct;

namespace {

int total(const std::map<Bidegree, int>& dims) {
    int t = 0;
    for (auto& [bd, d] : dims) t += d;
    return t;
}

}  // namespace

TEST_CASE("shapes and dot counts") {
    CHECK(make_zigzag({ZigZagFamily::A, 0, {0, 0}}) == Bicomplex::dot({0, 0}));
    for (int n = -4; n <= 4; ++n) {
        ZigZagDescriptor d{ZigZagFamily::A, n, {1, -1}};
        Bicomplex z = make_zigzag(d);
        CHECK(z.validate().ok());
        CHECK(z.total_dim() == d.dot_count());
        CHECK(z.is_minimal());
    }
    for (int n = 1; n <= 4; ++n)
        for (ZigZagFamily f : {ZigZagFamily::B, ZigZagFamily::C}) {
            ZigZagDescriptor d{f, n, {0, 2}};
            Bicomplex z = make_zigzag(d);
            CHECK(z.validate().ok());
            CHECK(z.total_dim() == 2 * n);
            CHECK(z.is_minimal());
        }
    CHECK_THROWS_AS(make_zigzag({ZigZagFamily::B, 0, {0, 0}}), std::invalid_argument);
}

TEST_CASE("B1 is the vertical pair and C2 the 4-dot staircase") {
    Bicomplex b1 = make_zigzag({ZigZagFamily::B, 1, {0, 0}});
    CHECK(b1.dim({0, 0}) == 1);
    CHECK(b1.dim({0, 1}) == 1);
    CHECK(b1.total_dim() == 2);
    CHECK(!b1.delbar_block({0, 0}).is_zero());

    Bicomplex c2 = make_zigzag({ZigZagFamily::C, 2, {0, 0}});
    CHECK(c2.total_dim() == 4);
    CHECK(total(cohomology_dims(c2, CohKind::Dol_del)) == 0);
    CHECK(total(cohomology_dims(c2, CohKind::Dol_delbar)) == 2);
}

TEST_CASE("Dolbeault signatures across the families") {
    for (int n = -4; n <= 4; ++n) {
        Bicomplex z = make_zigzag({ZigZagFamily::A, n, {0, 0}});
        CHECK(total(cohomology_dims(z, CohKind::Dol_del)) == 1);
        CHECK(total(cohomology_dims(z, CohKind::Dol_delbar)) == 1);
    }
    for (int n = 1; n <= 4; ++n) {
        Bicomplex b = make_zigzag({ZigZagFamily::B, n, {0, 0}});
        CHECK(total(cohomology_dims(b, CohKind::Dol_del)) == 2);
        CHECK(total(cohomology_dims(b, CohKind::Dol_delbar)) == 0);
        Bicomplex c = make_zigzag({ZigZagFamily::C, n, {0, 0}});
        CHECK(total(cohomology_dims(c, CohKind::Dol_del)) == 0);
        CHECK(total(cohomology_dims(c, CohKind::Dol_delbar)) == 2);
    }
}

TEST_CASE("classification round-trips make_zigzag") {
    CHECK(classify_zigzag(Bicomplex::dot({2, -1})) ==
          ZigZagDescriptor{ZigZagFamily::A, 0, {2, -1}});
    for (int n = -4; n <= 4; ++n) {
        ZigZagDescriptor d{ZigZagFamily::A, n, {n % 2, -(n % 3)}};
        CHECK(classify_zigzag(make_zigzag(d)) == d);
    }
    for (int n = 1; n <= 4; ++n)
        for (ZigZagFamily f : {ZigZagFamily::B, ZigZagFamily::C}) {
            ZigZagDescriptor d{f, n, {-1, n % 2}};
            CHECK(classify_zigzag(make_zigzag(d)) == d);
        }
    CHECK_THROWS_AS(classify_zigzag(Bicomplex::square_at({0, 0})), std::invalid_argument);
    // decomposable input: a pair of dots
    CHECK_THROWS_AS(
        classify_zigzag(direct_sum(Bicomplex::dot({0, 0}), Bicomplex::dot({5, 5}))),
        std::invalid_argument);
}

TEST_CASE("combinatorial signature tables match the cohomology machinery") {
    std::vector<ZigZagDescriptor> all;
    for (int n = -4; n <= 4; ++n) all.push_back({ZigZagFamily::A, n, {1, 1}});
    for (int n = 1; n <= 4; ++n) all.push_back({ZigZagFamily::B, n, {-2, 1}});
    for (int n = 1; n <= 4; ++n) all.push_back({ZigZagFamily::C, n, {0, -3}});
    for (const auto& d : all) {
        Bicomplex z = make_zigzag(d);
        for (CohKind k : kAllCohKinds) {
            CAPTURE(d.str());
            CAPTURE(coh_kind_name(k));
            CHECK(zigzag_coh_dims(d, k) == cohomology_dims(z, k));
        }
    }
}
