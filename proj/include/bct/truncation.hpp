#pragma once

#include "bct/map.hpp"

namespace bct {

// Truncations slice along total degree k:
//   τ≤k : full below k, (ker∂∂̄)^k, (ker∂ ∩ ker∂̄ ∩ (im∂+im∂̄))^{k+1}, zero above;
//   τ≥k : zero below k, V^k/(im∂+im∂̄)^k, V^{k+1}/(im∂∂̄)^{k+1}, full above.
// Each comes with its canonical map (inclusion resp. projection).

struct TruncationBelow {
    Bicomplex bc;
    BicomplexMap inclusion;  // τ≤k V → V
};

struct TruncationAbove {
    Bicomplex bc;
    BicomplexMap projection;  // V → τ≥k V
};

TruncationBelow truncate_below(const Bicomplex& b, int k);
TruncationAbove truncate_above(const Bicomplex& b, int k);

// k-th cohomology bicomplex H^k = τ≤k τ≥k, concentrated in degrees k, k+1.
Bicomplex cohomology_bicomplex(const Bicomplex& b, int k);

// ⊕_k H^k over the support range; minimal and quasi-isomorphic to b.
Bicomplex minimal_model(const Bicomplex& b);

}  // namespace bct
