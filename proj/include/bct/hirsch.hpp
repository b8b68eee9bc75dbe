#pragma once

#include "bct/cbba.hpp"
#include "bct/cohomology.hpp"

namespace bct {

// Hom(V,𝒜)-valued data: index j runs over a fixed flattening of V's basis.
using HomValue = std::vector<AlgebraElement>;

// Twisting coefficients Θ, Θ̄ : V → 𝒜⁺ ⊗ V as matrices of algebra elements;
// entry (i, j) is the coefficient of v_i in the image of v_j.
struct LocalSystemPair {
    std::vector<std::vector<AlgebraElement>> theta, thetabar;
};

LocalSystemPair zero_system(int vdim);

// Linear Hirsch extension data over a fixed base and coefficient bicomplex.
struct HirschExtension {
    TruncatedCbba base;
    Bicomplex v;  // first quadrant
    LocalSystemPair sys;
    HomValue phi, phibar;  // degree (1,0) resp. (0,1) maps V → 𝒜
};

// The twisted Hom machinery: grading of Hom(V,𝒜), the operators ∂_Θ, ∂̄_Θ̄,
// and the triple bicomplex presenting Hom(V[−1],𝒜) in corner coordinates.
// Per triple bidegree (s,t) the basis splits [f | h | g] with
// f ∈ Hom^{(s,t+1)}, h ∈ Hom^{(s+1,t+1)}, g ∈ Hom^{(s+1,t)}.
class TwistedHom {
public:
    TwistedHom(const TruncatedCbba& base, const Bicomplex& v, const LocalSystemPair& sys);

    const TruncatedCbba& base() const { return *base_; }
    const Bicomplex& coeff() const { return v_; }

    int vdim() const { return static_cast<int>(v_bd_.size()); }
    Bidegree v_bidegree(int j) const { return v_bd_[j]; }
    int v_index(Bidegree bd, int k) const;

    // Hom grading: basis of Hom^{(s,t)} as (v index, 𝒜 monomial) pairs.
    struct HomKey {
        int vidx;
        Monomial mono;
    };
    const std::vector<HomKey>& hom_basis(Bidegree st) const;
    int hom_dim(Bidegree st) const;

    // Checks ∂_Θ² = ∂̄_Θ̄² = ∂_Θ∂̄_Θ̄ + ∂̄_Θ̄∂_Θ = 0 on every graded piece below
    // the truncation cutoff, plus shape/degree constraints on the entries.
    Diagnostics validate_system() const;

    // Operators on function representatives (st = the degree of psi).
    HomValue apply_dtheta(Bidegree st, const HomValue& psi) const;
    HomValue apply_dthetabar(Bidegree st, const HomValue& psi) const;

    RatVector hom_coords(Bidegree st, const HomValue& psi) const;
    HomValue hom_from_coords(Bidegree st, const RatVector& x) const;

    // The triple bicomplex and its layout.
    const Bicomplex& triple() const { return triple_; }
    int f_dim(Bidegree st) const { return hom_dim({st.p, st.q + 1}); }
    int h_dim(Bidegree st) const { return hom_dim({st.p + 1, st.q + 1}); }
    int g_dim(Bidegree st) const { return hom_dim({st.p + 1, st.q}); }
    RatVector triple_coords(Bidegree st, const HomValue& f, const HomValue& h,
                            const HomValue& g) const;
    void split_triple(Bidegree st, const RatVector& x, HomValue& f, HomValue& h,
                      HomValue& g) const;

    // Bott-Chern cohomology of the triple complex = twisted homotopy.
    CohomologyTable homotopy() const;

private:
    const TruncatedCbba* base_;
    Bicomplex v_;
    LocalSystemPair sys_;
    std::vector<Bidegree> v_bd_;
    std::map<Bidegree, std::vector<HomKey>> hom_;
    std::map<Bidegree, RatMatrix> dtheta_, dthetabar_;  // keyed by source (s,t)
    Bicomplex triple_;
    std::vector<HomKey> empty_;

    RatMatrix dtheta_block(Bidegree st) const;
    RatMatrix dthetabar_block(Bidegree st) const;
    void build();
};

// Untwisted Hom bicomplex built by an independent code path (no Θ plumbing);
// comparison target for zero twisting.
Bicomplex untwisted_hom_triple(const TruncatedCbba& base, const Bicomplex& v);

// Structure-equation validation: the commuting-pair equations, the three φ
// equations, and the d² = 0 check on the combined algebra 𝒜 ⊗ ΛV; the two
// routes must agree (a disagreement throws std::logic_error).
Diagnostics validate_extension(const HirschExtension& e);

// 𝒜 ⊗ ΛV as a truncated cbba (V basis vectors become generators).
TruncatedCbba combined_cbba(const HirschExtension& e);

struct KInvariant {
    RatVector cocycle;  // triple coordinates at (0,0)
    RatVector cls;      // class in twisted homotopy at (0,0)
    bool zero = true;
};

KInvariant k_invariant(const HirschExtension& e);

// Conjugation by the relative automorphism v ↦ v + H(v), H : V → 𝒜 of
// bidegree (0,0): φ ↦ φ + ∂_Θ H, φ̄ ↦ φ̄ + ∂̄_Θ̄ H.
HirschExtension conjugate_extension(const HirschExtension& e, const HomValue& h);

struct IsoResult {
    bool isomorphic = false;
    HomValue witness;  // H with conjugate_extension(e1, H) == e2
};

// Same base, coefficients, and systems required; decides whether the
// k-invariant cocycles differ by ∂_Θ∂̄_Θ̄ and reconstructs the automorphism.
IsoResult extensions_isomorphic(const HirschExtension& e1, const HirschExtension& e2);

// Algebra map determined by generator images; must commute with both
// differentials (checked on generators up to the cutoff).
struct CbbaMap {
    const TruncatedCbba* source = nullptr;
    const TruncatedCbba* target = nullptr;
    std::vector<AlgebraElement> images;  // per source generator

    AlgebraElement apply(const AlgebraElement& a) const;
};

Diagnostics validate_cbba_map(const CbbaMap& f);

struct ObstructionResult {
    bool extends = false;
    HomValue witness;          // H with fφ = ∂_Θ H, fφ̄ = ∂̄_Θ̄ H
    RatVector obstruction;     // class of fΦ when obstructed
};

// Pushes the extension data along f: base → C and decides null-homotopy of
// fΦ with respect to the pushed systems.
ObstructionResult obstruction_extend(const CbbaMap& f, const HirschExtension& e);

}  // namespace bct
