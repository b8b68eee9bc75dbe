#include <doctest.h>

#include "bct/random_gen.hpp"
#include "fixtures.hpp"

using namespace bct;

TEST_CASE("twisted hom with trivial base and dot coefficients") {
    // Hom(V[−1], Q) is the 3-dot corner shape; brute-force dims frozen from
    // the three-term complex.
    TruncatedCbba unit({}, 2);
    Bicomplex dot = Bicomplex::dot({0, 0});
    TwistedHom th(unit, dot, zero_system(1));
    CHECK(th.validate_system().ok());
    CHECK(th.triple().total_dim() == 3);
    CHECK(th.triple().dim({0, -1}) == 1);
    CHECK(th.triple().dim({-1, -1}) == 1);
    CHECK(th.triple().dim({-1, 0}) == 1);
    auto hom = th.homotopy();
    CHECK(hom.dim_at({0, -1}) == 1);
    CHECK(hom.dim_at({-1, 0}) == 1);
    CHECK(hom.dim_at({-1, -1}) == 0);
}

TEST_CASE("single-entry twisting on a 1-dim coefficient space") {
    // Θ with one entry a·θ on a 1-dim V: expanding the three equations
    // symbolically, the only quadratic Maurer-Cartan term is ∝ a², and a is
    // odd of bidegree (1,0), so the term vanishes and the system is valid.
    Bicomplex dot = Bicomplex::dot({1, 1});
    TruncatedCbba base({{"a", {1, 0}}}, 6);
    LocalSystemPair sys = zero_system(1);
    sys.theta[0][0] = base.gen_elem(0);
    TwistedHom th(base, dot, sys);
    CHECK(th.validate_system().ok());
}

TEST_CASE("non-commuting pair fails the twisted anticommutation") {
    // Θ = a⊗M, Θ̄ = b⊗M̄ with [M, M̄] ≠ 0: the mixed equation picks up
    // ab·[M, M̄] and must be diagnosed.
    TruncatedCbba base({{"a", {1, 0}}, {"b", {0, 1}}}, 6);
    Bicomplex v;
    v.set_dim({1, 1}, 2);
    LocalSystemPair sys = zero_system(2);
    sys.theta[0][1] = base.gen_elem(base.gen_index("a"));     // M = E_{01}
    sys.thetabar[1][0] = base.gen_elem(base.gen_index("b"));  // M̄ = E_{10}
    TwistedHom th(base, v, sys);
    Diagnostics d = th.validate_system();
    REQUIRE(!d.ok());
    CHECK(d.str().find("anticommutation") != std::string::npos);
}

TEST_CASE("broken sign in a commuting pair is diagnosed") {
    Rng rng(113);
    HirschExtension e;
    for (int trial = 0; trial < 50; ++trial) {
        e = random_extension(rng, 3, true);
        bool any = false;
        for (auto& row : e.sys.theta)
            for (auto& v : row) any = any || !v.is_zero();
        if (any) break;
    }
    TwistedHom good(e.base, e.v, e.sys);
    REQUIRE(good.validate_system().ok());
    // flip the sign of one thetabar entry carrying data; if the pair really
    // commuted only by cancellation this breaks anticommutation
    LocalSystemPair broken = e.sys;
    bool flipped = false;
    for (auto& row : broken.thetabar)
        for (auto& v : row)
            if (!v.is_zero() && !flipped) {
                v = Rational(-1) * v;
                flipped = true;
            }
    if (flipped) {
        TwistedHom th(e.base, e.v, broken);
        Diagnostics d = th.validate_system();
        // either still commuting (diagonal data) or the diagnostic names
        // the anticommutation failure
        if (!d.ok())
            CHECK(d.str().find("anticommutation") != std::string::npos);
    }
}

TEST_CASE("twisted hom reduces to the untwisted complex at zero twisting") {
    Rng rng(127);
    for (int trial = 0; trial < 10; ++trial) {
        HirschExtension e = random_extension(rng, 3, false);
        TwistedHom th(e.base, e.v, e.sys);
        Bicomplex independent = untwisted_hom_triple(e.base, e.v);
        CHECK(th.triple() == independent);
        CHECK(th.triple().validate().ok());
    }
}

TEST_CASE("twisted hom triple validates for random twisted systems") {
    Rng rng(131);
    for (int trial = 0; trial < 15; ++trial) {
        HirschExtension e = random_extension(rng, 3, true);
        TwistedHom th(e.base, e.v, e.sys);
        REQUIRE(th.validate_system().ok());
        CHECK(th.triple().validate().ok());
    }
}

TEST_CASE("twisted hom over the projective base with square coefficients") {
    // 4-dimensional coefficient bicomplex (the free square at (2,2)) over
    // Λ(x): the twisted Hom triple is a finite valid bicomplex.
    HirschExtension cp2 = fixtures::projective_extension(2);
    Bicomplex vsq = Bicomplex::square_at({2, 2});
    TwistedHom th(cp2.base, vsq, zero_system(4));
    CHECK(th.validate_system().ok());
    CHECK(th.triple().total_dim() > 0);
    CHECK(th.triple().validate().ok());
}

TEST_CASE("identity on the base of the trivial extension extends with H = 0") {
    HirschExtension e = fixtures::trivial_like(fixtures::projective_extension(2));
    CbbaMap f;
    f.source = &e.base;
    f.target = &e.base;
    for (size_t i = 0; i < e.base.generators().size(); ++i)
        f.images.push_back(e.base.gen_elem(static_cast<int>(i)));
    ObstructionResult r = obstruction_extend(f, e);
    REQUIRE(r.extends);
    for (const auto& x : r.witness) CHECK(x.is_zero());
}

TEST_CASE("projective fixtures validate and carry nonzero k-invariants") {
    for (int n = 1; n <= 3; ++n) {
        HirschExtension e = fixtures::projective_extension(n);
        CAPTURE(n);
        CHECK(validate_extension(e).ok());
        KInvariant k = k_invariant(e);
        CHECK(!k.zero);
        // the corner component hits x^{n+1}: h = ∂_Θ φ̄ evaluated on y
        TwistedHom th(e.base, e.v, e.sys);
        HomValue h = th.apply_dtheta({0, 1}, e.phibar);
        CHECK(!h[0].is_zero());
        // not isomorphic to the trivial extension
        HirschExtension triv = fixtures::trivial_like(e);
        CHECK(validate_extension(triv).ok());
        IsoResult iso = extensions_isomorphic(e, triv);
        CHECK(!iso.isomorphic);
        // trivial extension has zero class
        CHECK(k_invariant(triv).zero);
    }
}

TEST_CASE("structure equations match d^2 on random extensions") {
    Rng rng(137);
    for (int trial = 0; trial < 25; ++trial) {
        HirschExtension e = random_extension(rng, 3, trial % 2 == 1);
        // valid by construction; validate_extension throws if the two
        // routes ever disagree
        CHECK(validate_extension(e).ok());
    }
}

TEST_CASE("breaking phi breaks both validation routes coherently") {
    Rng rng(139);
    HirschExtension e = random_extension(rng, 2, false);
    // sabotage: set φ on the first vector to a closed-degree-wrong... use a
    // legal bidegree but violate the cocycle equation: x·(something) with a
    // nonzero delbar image.
    TwistedHom th(e.base, e.v, e.sys);
    int ai = e.base.gen_index("a"), bi = e.base.gen_index("b");
    // φ(v0) += a·x-ish term of the right bidegree if one exists
    Bidegree want = dp(th.v_bidegree(0));
    for (const auto& m : e.base.basis(want)) {
        AlgebraElement cand;
        cand.terms.emplace(m, Rational(1));
        HirschExtension broken = e;
        broken.phi[0] = broken.phi[0] + cand;
        Diagnostics d1 = e.base.validate();
        REQUIRE(d1.ok());
        // both routes agree (validate_extension throws on disagreement)
        Diagnostics d = validate_extension(broken);
        (void)d;
    }
    (void)ai;
    (void)bi;
}

TEST_CASE("conjugation preserves the k-invariant class") {
    Rng rng(149);
    for (int trial = 0; trial < 20; ++trial) {
        HirschExtension e = random_extension(rng, 3, trial % 2 == 0);
        TwistedHom th(e.base, e.v, e.sys);
        HomValue h = random_hom_value(rng, th);
        HirschExtension conj = conjugate_extension(e, h);
        CHECK(validate_extension(conj).ok());
        KInvariant k1 = k_invariant(e), k2 = k_invariant(conj);
        CHECK(k1.cls == k2.cls);
        // and extensions_isomorphic recovers a valid witness
        IsoResult iso = extensions_isomorphic(e, conj);
        CHECK(iso.isomorphic);
        HirschExtension back = conjugate_extension(e, iso.witness);
        for (size_t u = 0; u < back.phi.size(); ++u) {
            CHECK(back.phi[u] == conj.phi[u]);
            CHECK(back.phibar[u] == conj.phibar[u]);
        }
    }
}

TEST_CASE("extension against itself is isomorphic with zero witness") {
    Rng rng(151);
    HirschExtension e = random_extension(rng, 2, true);
    IsoResult iso = extensions_isomorphic(e, e);
    REQUIRE(iso.isomorphic);
    for (const auto& x : iso.witness) CHECK(x.is_zero());
}

TEST_CASE("obstruction: identity map extends tautologically") {
    for (int n = 1; n <= 2; ++n) {
        HirschExtension e = fixtures::projective_extension(n);
        TruncatedCbba big = combined_cbba(e);
        CbbaMap f;
        f.source = &e.base;
        f.target = &big;
        for (const auto& g : e.base.generators())
            f.images.push_back(big.gen_elem(big.gen_index(g.name)));
        REQUIRE(validate_cbba_map(f).ok());
        ObstructionResult r = obstruction_extend(f, e);
        CHECK(r.extends);
    }
}

TEST_CASE("obstruction: projective extension is obstructed over its own base") {
    for (int n = 1; n <= 3; ++n) {
        HirschExtension e = fixtures::projective_extension(n);
        CbbaMap f;
        f.source = &e.base;
        f.target = &e.base;
        for (size_t i = 0; i < e.base.generators().size(); ++i)
            f.images.push_back(e.base.gen_elem(static_cast<int>(i)));
        REQUIRE(validate_cbba_map(f).ok());
        ObstructionResult r = obstruction_extend(f, e);
        CHECK(!r.extends);
        CHECK(!is_zero_vec(r.obstruction));
    }
}

TEST_CASE("obstruction: augmentation kills everything") {
    Rng rng(157);
    HirschExtension e = random_extension(rng, 2, false);
    TruncatedCbba unit({}, e.base.truncation());
    CbbaMap f;
    f.source = &e.base;
    f.target = &unit;
    f.images.assign(e.base.generators().size(), AlgebraElement{});
    REQUIRE(validate_cbba_map(f).ok());
    ObstructionResult r = obstruction_extend(f, e);
    CHECK(r.extends);
}

TEST_CASE("obstruction round-trip on random extensions") {
    Rng rng(163);
    for (int trial = 0; trial < 10; ++trial) {
        HirschExtension e = random_extension(rng, 2, trial % 2 == 0);
        TruncatedCbba big = combined_cbba(e);
        CbbaMap f;
        f.source = &e.base;
        f.target = &big;
        for (const auto& g : e.base.generators())
            f.images.push_back(big.gen_elem(big.gen_index(g.name)));
        ObstructionResult r = obstruction_extend(f, e);
        CHECK(r.extends);  // witness identities are verified inside
    }
}

TEST_CASE("twisting over coefficients with internal differentials") {
    // Scalar twists commute with ∂_V, so the corner-shaped V at (1,1) admits
    // Θ = a⊗I, Θ̄ = 2b⊗I; the twisted operators then mix the ψ∂_V and Θ
    // terms in every degree.
    Rng rng(179);
    TruncatedCbba base({{"a", {1, 0}}, {"b", {0, 1}}, {"x", {1, 1}}}, 8);
    Bicomplex v;
    Bidegree y{1, 1};
    v.set_dim(y, 1);
    v.set_dim(dp(y), 1);
    v.set_dim(dq(y), 1);
    RatMatrix one(1, 1);
    one.at(0, 0) = 1;
    v.set_del(y, one);
    v.set_delbar(y, one);
    v.normalize();

    HirschExtension e;
    e.base = base;
    e.v = v;
    e.sys = zero_system(3);
    int ai = base.gen_index("a"), bi = base.gen_index("b");
    for (int i = 0; i < 3; ++i) {
        e.sys.theta[i][i] = base.gen_elem(ai);
        e.sys.thetabar[i][i] = Rational(2) * base.gen_elem(bi);
    }
    TwistedHom th(base, v, e.sys);
    REQUIRE(th.validate_system().ok());
    CHECK(th.triple().validate().ok());

    // sample a cocycle (φ, φ̄) exactly and run the whole classification
    int d00 = th.triple().dim({0, 0});
    REQUIRE(d00 > 0);
    RatMatrix both = vstack(th.triple().del_block({0, 0}), th.triple().delbar_block({0, 0}));
    RatMatrix ker = kernel_basis(both);
    bool found = false;
    for (int trial = 0; trial < 20 && !found; ++trial) {
        RatVector xv(d00);
        for (int k = 0; k < ker.cols(); ++k) {
            Rational c = rng.small_rational();
            for (int i = 0; i < d00; ++i) xv[i] += c * ker.at(i, k);
        }
        if (is_zero_vec(xv)) continue;
        found = true;
        HomValue f, h, g;
        th.split_triple({0, 0}, xv, f, h, g);
        e.phibar = f;
        e.phi = g;
    }
    REQUIRE(found);
    CHECK(validate_extension(e).ok());

    HomValue hv = random_hom_value(rng, th);
    HirschExtension conj = conjugate_extension(e, hv);
    CHECK(validate_extension(conj).ok());
    CHECK(k_invariant(e).cls == k_invariant(conj).cls);
    IsoResult iso = extensions_isomorphic(e, conj);
    CHECK(iso.isomorphic);

    TruncatedCbba big = combined_cbba(e);
    CbbaMap incl;
    incl.source = &e.base;
    incl.target = &big;
    for (const auto& gn : e.base.generators())
        incl.images.push_back(big.gen_elem(big.gen_index(gn.name)));
    CHECK(obstruction_extend(incl, e).extends);
}

TEST_CASE("wedge connectivity bound for free algebras") {
    // generators all of total degree ≥ k: Λ^n V vanishes below nk
    TruncatedCbba a({{"x", {1, 1}}, {"w", {2, 1}}, {"u", {1, 2}}}, 8);
    CHECK(a.wedge_degrees_ok());
}
