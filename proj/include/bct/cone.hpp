#pragma once

#include "bct/truncation.hpp"

namespace bct {

// Mapping cone of f: V → W in slot coordinates. Per cone bidegree (s,t) the
// basis is ordered [W^{s,t} | a: V^{s+1,t+1} | c: V^{s+1,t} | b: V^{s,t+1}],
// matching the basis order of shift(V, +1), so that `projection` is the
// literal coordinate projection Cone(f) → V[1].
struct ConeResult {
    Bicomplex cone;
    BicomplexMap inclusion;   // W → Cone(f)
    BicomplexMap projection;  // Cone(f) → V[1]
    Bicomplex shifted;        // V[1]
};

ConeResult cone(const BicomplexMap& f);

// Independent construction coker(V → W ⊕ □⊗V); cross-check oracle for the
// explicit formulas.
Bicomplex cone_via_cokernel(const BicomplexMap& f);

// W ⊕ V with ∂(w ⊕ v) = (∂w + φv) ⊕ ∂v and likewise ∂̄ with φ̄. The three
// identities making this a bicomplex are checked and named on failure.
Bicomplex reduced_cone(const Bicomplex& v, const Bicomplex& w,
                       const std::map<Bidegree, RatMatrix>& phi,
                       const std::map<Bidegree, RatMatrix>& phibar);

// The bicomplex map V[−1] → W determined by reduced-cone data, for the
// quasi-isomorphism cross-check of the two cone constructions.
BicomplexMap reduced_cone_map(const Bicomplex& v, const Bicomplex& w,
                              const std::map<Bidegree, RatMatrix>& phi,
                              const std::map<Bidegree, RatMatrix>& phibar);

// connectivity(Cone(f)) + 1, cross-checked against the surjectivity/
// injectivity characterization (H_A^{≤k−1}(f) surjective, H_BC^{≤k+1}(f)
// injective); throws std::logic_error if the two disagree.
std::optional<int> map_connectivity(const BicomplexMap& f);

struct TriangleReport {
    bool pass = false;
    std::string detail;
};

// Checks that τ≤k B → B → τ≥k+1 B is distinguished: the canonical map
// Cone(incl) → τ≥k+1 B must be a quasi-isomorphism.
TriangleReport triangle_checks(const Bicomplex& b, int k);

}  // namespace bct
