#pragma once

#include <optional>

#include "bct/bicomplex.hpp"
#include "bct/subspace.hpp"

namespace bct {

// The six cohomologies of a bicomplex plus the dot part:
//   BC       = ker∂ ∩ ker∂̄ / im∂∂̄
//   BC_red   = ker∂ ∩ ker∂̄ ∩ (im∂ + im∂̄) / im∂∂̄
//   Dot      = ker∂ ∩ ker∂̄ / ker∂ ∩ ker∂̄ ∩ (im∂ + im∂̄)
//   A        = ker∂∂̄ / (im∂ + im∂̄)
//   A_red    = ker∂∂̄ / (ker∂ ∩ ker∂̄ + im∂ + im∂̄)
//   Dol_del  = ker∂ / im∂,  Dol_delbar = ker∂̄ / im∂̄
enum class CohKind { BC, BC_red, Dot, A, A_red, Dol_del, Dol_delbar };

extern const CohKind kAllCohKinds[7];
std::string coh_kind_name(CohKind k);
std::optional<CohKind> coh_kind_from_name(const std::string& s);

struct CohomologyTable {
    CohKind kind;
    std::map<Bidegree, QuotientPresentation> entries;

    int dim_at(Bidegree bd) const;
    std::map<Bidegree, int> dims() const;  // nonzero entries only
    int total_dim() const;
    int dim_in_degree(int total) const;
};

CohomologyTable cohomology(const Bicomplex& b, CohKind kind);
std::map<Bidegree, int> cohomology_dims(const Bicomplex& b, CohKind kind);

// Largest k with H_A^{≤k} = 0; nullopt means contractible (+∞).
std::optional<int> connectivity(const Bicomplex& b);

// H_BC = 0 and H_A = 0 everywhere.
bool is_contractible(const Bicomplex& b);

}  // namespace bct
