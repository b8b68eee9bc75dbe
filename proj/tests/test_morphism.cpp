#include <doctest.h>

#include "bct/cone.hpp"
#include "bct/decomp.hpp"
#include "bct/random_gen.hpp"

using namespace bct;

namespace {

RatMatrix ones(int r, int c) {
    RatMatrix m(r, c);
    for (int i = 0; i < r && i < c; ++i) m.at(i, i) = 1;
    return m;
}

bool same_zigzag_part(const Bicomplex& a, const Bicomplex& b) {
    return full_decompose(a).zigzag_counts() == full_decompose(b).zigzag_counts();
}

}  // namespace

TEST_CASE("validate_map") {
    Bicomplex sq = Bicomplex::square_at({0, 0});
    CHECK(validate_map(identity_map(sq)).ok());
    CHECK(validate_map(zero_map(sq, sq)).ok());

    // dot -> dot across bidegrees: any nonzero block has the wrong shape
    BicomplexMap f;
    f.source = Bicomplex::dot({0, 0});
    f.target = Bicomplex::dot({1, 0});
    f.set_block({0, 0}, ones(1, 1));
    CHECK(!validate_map(f).ok());
}

TEST_CASE("induced maps") {
    Bicomplex sq = Bicomplex::square_at({0, 0});
    InducedMap id_bc = induced_map(identity_map(Bicomplex::dot({0, 0})), CohKind::BC);
    CHECK(id_bc.bijective_at({0, 0}));

    // inclusion of the dot onto the closed corner ∂∂̄x of the square (the
    // generator corner is not closed, so the only dot mapping lands there):
    // the induced map on H_BC is zero because the target vanishes
    BicomplexMap inc;
    inc.source = Bicomplex::dot({1, 1});
    inc.target = sq;
    RatMatrix blk(1, 1);
    blk.at(0, 0) = 1;
    inc.set_block({1, 1}, blk);
    REQUIRE(validate_map(inc).ok());
    InducedMap m = induced_map(inc, CohKind::BC);
    CHECK(m.rank_at({1, 1}) == 0);

    // the map hitting the tensor of the corners is a quasi-isomorphism:
    // dot -> lower ⊗ upper; the closed representative of the corner pair is
    // x⊗x' + ∂x⊗y + ∂̄x⊗z (computed by hand: both differentials cancel)
    TensorResult lu = tensor(Bicomplex::shape_lower(), Bicomplex::shape_upper());
    BicomplexMap corner;
    corner.source = Bicomplex::dot({0, 0});
    corner.target = lu.bc;
    int i_xx = lu.index_of({0, 0}, {-1, -1}, 0, {1, 1}, 0);
    int i_py = lu.index_of({0, 0}, {0, -1}, 0, {0, 1}, 0);
    int i_qz = lu.index_of({0, 0}, {-1, 0}, 0, {1, 0}, 0);
    REQUIRE(i_xx >= 0);
    REQUIRE(i_py >= 0);
    REQUIRE(i_qz >= 0);
    RatMatrix cb(lu.bc.dim({0, 0}), 1);
    cb.at(i_xx, 0) = 1;
    cb.at(i_py, 0) = 1;
    cb.at(i_qz, 0) = 1;
    corner.set_block({0, 0}, cb);
    REQUIRE(validate_map(corner).ok());
    CHECK(is_quasi_iso(corner));
}

TEST_CASE("is_quasi_iso basics") {
    Bicomplex sq = Bicomplex::square_at({0, 0});
    CHECK(is_quasi_iso(identity_map(sq)));
    CHECK(is_quasi_iso(zero_map(sq, Bicomplex::zero())));
    CHECK(!is_quasi_iso(zero_map(Bicomplex::dot({0, 0}), Bicomplex::zero())));
}

TEST_CASE("cone fixtures") {
    // cone of the identity on the dot: 4-dimensional and contractible
    ConeResult c1 = cone(identity_map(Bicomplex::dot({0, 0})));
    CHECK(c1.cone.total_dim() == 4);
    CHECK(is_contractible(c1.cone));

    // cone of V -> 0 is V[1]
    Bicomplex v = make_zigzag({ZigZagFamily::A, 1, {0, 0}});
    ConeResult c2 = cone(zero_map(v, Bicomplex::zero()));
    CHECK(c2.cone == shift(v, +1).bc);

    // cone of the closed-corner inclusion dot -> square: dimension bookkeeping
    BicomplexMap inc;
    inc.source = Bicomplex::dot({1, 1});
    inc.target = Bicomplex::square_at({0, 0});
    RatMatrix blk(1, 1);
    blk.at(0, 0) = 1;
    inc.set_block({1, 1}, blk);
    ConeResult c3 = cone(inc);
    CHECK(c3.cone.total_dim() == 4 + 3);
    for (const auto& [bd, d] : c3.cone.dims()) {
        int expect = inc.target.dim(bd) + shift(inc.source, +1).bc.dim(bd);
        CHECK(d == expect);
    }
    CHECK(validate_map(c3.inclusion).ok());
    CHECK(validate_map(c3.projection).ok());
}

TEST_CASE("cone projection and inclusion are chain maps on random data") {
    Rng rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        Bicomplex v = random_bicomplex(rng, 8);
        Bicomplex w = random_bicomplex(rng, 8);
        BicomplexMap f = random_chain_map(rng, v, w);
        REQUIRE(validate_map(f).ok());
        ConeResult c = cone(f);
        CHECK(c.cone.validate().ok());
        CHECK(validate_map(c.inclusion).ok());
        CHECK(validate_map(c.projection).ok());
        for (const auto& [bd, d] : c.cone.dims())
            CHECK(d == w.dim(bd) + c.shifted.dim(bd));
    }
}

TEST_CASE("explicit cone matches the cokernel construction up to quasi-iso") {
    Rng rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        Bicomplex v = random_bicomplex(rng, 7);
        Bicomplex w = random_bicomplex(rng, 7);
        BicomplexMap f = random_chain_map(rng, v, w);
        ConeResult c = cone(f);
        Bicomplex k = cone_via_cokernel(f);
        CHECK(same_zigzag_part(c.cone, k));
    }
}

TEST_CASE("reduced cone") {
    // φ = φ̄ = 0: plain direct sum
    Bicomplex v = Bicomplex::dot({0, 0});
    Bicomplex w = Bicomplex::dot({2, 2});
    CHECK(reduced_cone(v, w, {}, {}) == direct_sum(w, v));

    // dots at (1,0) and (0,1) over the dot with unit maps: the A1 zig-zag
    Bicomplex w2 = direct_sum(Bicomplex::dot({1, 0}), Bicomplex::dot({0, 1}));
    RatMatrix phi_blk(1, 1), phibar_blk(1, 1);
    phi_blk.at(0, 0) = 1;
    phibar_blk.at(0, 0) = 1;
    std::map<Bidegree, RatMatrix> phi{{{0, 0}, RatMatrix(1, 1)}};
    phi[{0, 0}].at(0, 0) = 1;
    std::map<Bidegree, RatMatrix> phibar{{{0, 0}, RatMatrix(1, 1)}};
    phibar[{0, 0}].at(0, 0) = 1;
    // target slots: phi lands in W^{1,0}, phibar in W^{0,1}
    Bicomplex rc = reduced_cone(v, w2, phi, phibar);
    ZigZagDescriptor d = classify_zigzag(rc);
    CHECK(d.family == ZigZagFamily::A);
    CHECK(d.param == 1);
    CHECK(d.anchor == Bidegree{0, 0});

    // identity violation is reported by name
    Bicomplex w3 = Bicomplex::square_at({1, 0});
    std::map<Bidegree, RatMatrix> bad{{{0, 0}, RatMatrix(1, 1)}};
    bad[{0, 0}].at(0, 0) = 1;
    CHECK_THROWS_WITH_AS(reduced_cone(v, w3, bad, {}),
                         doctest::Contains("identity del_W phi + phi del_V"),
                         std::invalid_argument);
}

TEST_CASE("reduced cone is quasi-isomorphic to the cone of its map") {
    Rng rng(73);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 25; ++trial) {
        Bicomplex v = random_bicomplex(rng, 6);
        Bicomplex w = random_bicomplex(rng, 6);
        if (v.is_zero() && w.is_zero()) continue;
        // sample (φ, φ̄) from the kernel of the reduced-cone identities by
        // brute force: random blocks, keep consistent ones
        std::map<Bidegree, RatMatrix> phi, phibar;
        for (const auto& [bd, d] : v.dims()) {
            if (w.dim(dp(bd)) > 0 && rng.chance(70))
                phi[bd] = random_matrix(rng, w.dim(dp(bd)), d);
            if (w.dim(dq(bd)) > 0 && rng.chance(70))
                phibar[bd] = random_matrix(rng, w.dim(dq(bd)), d);
        }
        Bicomplex rc;
        try {
            rc = reduced_cone(v, w, phi, phibar);
        } catch (const std::invalid_argument&) {
            continue;  // identities failed for the random draw
        }
        ++done;
        BicomplexMap big = reduced_cone_map(v, w, phi, phibar);
        ConeResult full = cone(big);
        CHECK(same_zigzag_part(rc, full.cone));
    }
    CHECK(done > 0);
}

TEST_CASE("map connectivity") {
    Bicomplex dot = Bicomplex::dot({0, 0});
    CHECK(!map_connectivity(identity_map(dot)).has_value());

    // zero map dot -> dot: cone = dot ⊕ dot[1]; connectivity by the oracle
    BicomplexMap z = zero_map(dot, dot);
    ConeResult c = cone(z);
    auto oracle = connectivity(c.cone);
    REQUIRE(oracle.has_value());
    auto mc = map_connectivity(z);
    REQUIRE(mc.has_value());
    CHECK(*mc == *oracle + 1);

    // quasi-isomorphisms have infinite connectivity
    Bicomplex sq = Bicomplex::square_at({0, 0});
    CHECK(!map_connectivity(zero_map(sq, Bicomplex::zero())).has_value());
}

TEST_CASE("map connectivity characterizations agree on random maps") {
    Rng rng(79);
    for (int trial = 0; trial < 60; ++trial) {
        Bicomplex v = random_bicomplex(rng, 8);
        Bicomplex w = random_bicomplex(rng, 8);
        BicomplexMap f = random_chain_map(rng, v, w);
        CHECK_NOTHROW(map_connectivity(f));  // throws precisely on disagreement
    }
}

TEST_CASE("long exact sequence dimension identities") {
    Rng rng(83);
    for (int trial = 0; trial < 500; ++trial) {
        Bicomplex v = random_bicomplex(rng, 8);
        Bicomplex w = random_bicomplex(rng, 8);
        BicomplexMap f = random_chain_map(rng, v, w);
        ConeResult c = cone(f);
        InducedMap fa = induced_map(f, CohKind::A);
        InducedMap ga = induced_map(c.inclusion, CohKind::A);
        // exactness at H_A(W): the composite vanishes and ranks add up
        InducedMap comp = induced_map(compose(c.inclusion, f), CohKind::A);
        for (const auto& [bd, d] : fa.tgt_dims) {
            CHECK(comp.rank_at(bd) == 0);
            CHECK(fa.rank_at(bd) + ga.rank_at(bd) == d);
        }
    }
}

TEST_CASE("composite triangle dimension bounds") {
    Rng rng(89);
    for (int trial = 0; trial < 100; ++trial) {
        Bicomplex u = random_bicomplex(rng, 6);
        Bicomplex v = random_bicomplex(rng, 6);
        Bicomplex w = random_bicomplex(rng, 6);
        BicomplexMap f = random_chain_map(rng, u, v);
        BicomplexMap g = random_chain_map(rng, v, w);
        Bicomplex cf = cone(f).cone, cg = cone(g).cone, cgf = cone(compose(g, f)).cone;
        for (CohKind kind : {CohKind::A, CohKind::BC}) {
            auto df = cohomology(cf, kind);
            auto dg = cohomology(cg, kind);
            auto dgf = cohomology(cgf, kind);
            if (cgf.is_zero()) continue;
            for (int i = cgf.min_total(); i <= cgf.max_total(); ++i)
                CHECK(dgf.dim_in_degree(i) <= df.dim_in_degree(i) + dg.dim_in_degree(i));
        }
    }
}
