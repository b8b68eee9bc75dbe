#pragma once

#include "bct/cohomology.hpp"

namespace bct {

// Bidegree-(0,0) map of bicomplexes commuting with both differentials.
struct BicomplexMap {
    Bicomplex source;
    Bicomplex target;
    std::map<Bidegree, RatMatrix> blocks;  // absent blocks are zero

    RatMatrix block(Bidegree bd) const {
        auto it = blocks.find(bd);
        if (it != blocks.end()) return it->second;
        return RatMatrix(target.dim(bd), source.dim(bd));
    }
    void set_block(Bidegree bd, RatMatrix m) { blocks[bd] = std::move(m); }
    void normalize();
};

Diagnostics validate_map(const BicomplexMap& f);

BicomplexMap identity_map(const Bicomplex& b);
BicomplexMap zero_map(const Bicomplex& src, const Bicomplex& tgt);
BicomplexMap compose(const BicomplexMap& g, const BicomplexMap& f);

// Map induced on a cohomology table. Representative-independence is asserted:
// the map must send the source denominator into the target denominator.
struct InducedMap {
    CohKind kind;
    std::map<Bidegree, RatMatrix> blocks;  // tgt_dim × src_dim at every bidegree
    std::map<Bidegree, int> src_dims, tgt_dims;

    int rank_at(Bidegree bd) const;
    bool surjective_at(Bidegree bd) const;
    bool injective_at(Bidegree bd) const;
    bool bijective_at(Bidegree bd) const;
    // Surjectivity/injectivity of the full map in one total degree.
    bool surjective_in_degree(int total) const;
    bool injective_in_degree(int total) const;
};

InducedMap induced_map(const BicomplexMap& f, CohKind kind);

// Isomorphism on both Bott-Chern and Aeppli cohomology at every bidegree.
bool is_quasi_iso(const BicomplexMap& f);

// Quotient of the target by the image of an injective map, with the
// projection. Throws if f is not blockwise injective.
struct CokernelResult {
    Bicomplex coker;
    BicomplexMap projection;  // target -> coker
};
CokernelResult cokernel(const BicomplexMap& f);

}  // namespace bct
