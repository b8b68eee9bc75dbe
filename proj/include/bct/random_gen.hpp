#pragma once

#include <random>

#include "bct/decomp.hpp"
#include "bct/hirsch.hpp"
#include "bct/map.hpp"

namespace bct {

// Deterministic random source. Draws avoid std::uniform_int_distribution so
// that sequences are identical across standard libraries.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    int uniform(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng() % static_cast<uint64_t>(hi - lo + 1));
    }
    Rational small_rational(bool allow_zero = true) {
        int num = uniform(allow_zero ? -3 : 1, 3);
        if (!allow_zero && num == 0) num = 1;
        int den = uniform(1, 3);
        return Rational(num, den);
    }
    bool chance(int percent) { return uniform(1, 100) <= percent; }
};

RatMatrix random_matrix(Rng& rng, int rows, int cols);
RatMatrix random_invertible(Rng& rng, int n);

// Known direct sum of squares and zig-zags scrambled by a random basis
// change at every bidegree.
struct ScrambledSum {
    Bicomplex bc;
    std::map<Bidegree, int> squares;
    std::map<ZigZagDescriptor, int> zigzags;
};

ScrambledSum random_scrambled_sum(Rng& rng, int max_total_dim);

// Random valid bicomplex (a scrambled sum; every finite bicomplex is one).
Bicomplex random_bicomplex(Rng& rng, int max_total_dim);

// Random chain map sampled exactly from the kernel of the chain-map
// constraints.
BicomplexMap random_chain_map(Rng& rng, const Bicomplex& v, const Bicomplex& w);

// Random Hirsch extension over a small closed-generator base with commuting
// single-odd-generator twisting and an exactly sampled cocycle (φ, φ̄).
HirschExtension random_extension(Rng& rng, int max_vdim, bool with_twist);

// Random degree-(0,0) map V → 𝒜 for conjugation tests.
HomValue random_hom_value(Rng& rng, const TwistedHom& th);

}  // namespace bct
