#pragma once

#include "bct/hirsch.hpp"

namespace bct::fixtures {

// Free cbba Λ(x) with x closed at (1,1), truncated at N.
inline TruncatedCbba poly_x(int n_trunc) {
    return TruncatedCbba({{"x", {1, 1}}}, n_trunc);
}

// The projective-space extension: base Λ(x), V the 3-dimensional corner
// bicomplex on y at (n,n) with ∂_V y, ∂̄_V y slots, zero twisting, and
// φ(∂̄y-slot) = x^{n+1}, φ̄(∂y-slot) = −x^{n+1}.
inline HirschExtension projective_extension(int n) {
    HirschExtension e;
    e.base = poly_x(2 * n + 2);
    Bidegree ybd{n, n};
    e.v.set_dim(ybd, 1);
    e.v.set_dim(dp(ybd), 1);  // ∂y slot
    e.v.set_dim(dq(ybd), 1);  // ∂̄y slot
    RatMatrix one(1, 1);
    one.at(0, 0) = 1;
    e.v.set_del(ybd, one);
    e.v.set_delbar(ybd, one);
    e.v.normalize();

    e.sys = zero_system(3);
    e.phi.assign(3, {});
    e.phibar.assign(3, {});
    // flattened V order: (n,n) < (n,n+1) < (n+1,n): y, ∂̄y-slot, ∂y-slot
    AlgebraElement xpow;
    {
        Monomial m(1, 0);
        m[0] = n + 1;
        xpow.terms.emplace(m, Rational(1));
    }
    e.phi[1] = xpow;                   // φ(∂̄y) = x^{n+1}
    e.phibar[2] = Rational(-1) * xpow; // φ̄(∂y) = −x^{n+1}
    return e;
}

// Trivial extension with the same base and coefficients.
inline HirschExtension trivial_like(const HirschExtension& e) {
    HirschExtension t = e;
    for (auto& x : t.phi) x = AlgebraElement{};
    for (auto& x : t.phibar) x = AlgebraElement{};
    for (auto& row : t.sys.theta)
        for (auto& v : row) v = AlgebraElement{};
    for (auto& row : t.sys.thetabar)
        for (auto& v : row) v = AlgebraElement{};
    return t;
}

}  // namespace bct::fixtures
