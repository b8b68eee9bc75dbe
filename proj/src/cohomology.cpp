#include "bct/cohomology.hpp"

namespace bct {

const CohKind kAllCohKinds[7] = {CohKind::BC,    CohKind::BC_red, CohKind::Dot,
                                 CohKind::A,     CohKind::A_red,  CohKind::Dol_del,
                                 CohKind::Dol_delbar};

std::string coh_kind_name(CohKind k) {
    switch (k) {
        case CohKind::BC: return "BC";
        case CohKind::BC_red: return "BC_red";
        case CohKind::Dot: return "dot";
        case CohKind::A: return "A";
        case CohKind::A_red: return "A_red";
        case CohKind::Dol_del: return "Dol_del";
        case CohKind::Dol_delbar: return "Dol_delbar";
    }
    return "?";
}

std::optional<CohKind> coh_kind_from_name(const std::string& s) {
    for (CohKind k : kAllCohKinds)
        if (coh_kind_name(k) == s) return k;
    return std::nullopt;
}

int CohomologyTable::dim_at(Bidegree bd) const {
    auto it = entries.find(bd);
    return it == entries.end() ? 0 : it->second.dim();
}

std::map<Bidegree, int> CohomologyTable::dims() const {
    std::map<Bidegree, int> d;
    for (const auto& [bd, pres] : entries)
        if (pres.dim() > 0) d[bd] = pres.dim();
    return d;
}

int CohomologyTable::total_dim() const {
    int t = 0;
    for (const auto& [bd, pres] : entries) t += pres.dim();
    return t;
}

int CohomologyTable::dim_in_degree(int total) const {
    int t = 0;
    for (const auto& [bd, pres] : entries)
        if (bd.total() == total) t += pres.dim();
    return t;
}

CohomologyTable cohomology(const Bicomplex& b, CohKind kind) {
    CohomologyTable table;
    table.kind = kind;
    for (const auto& [bd, d] : b.dims()) {
        Bidegree prev_p{bd.p - 1, bd.q}, prev_q{bd.p, bd.q - 1}, prev_pq{bd.p - 1, bd.q - 1};
        Subspace kerd = kernel(b.del_block(bd));
        Subspace kerdb = kernel(b.delbar_block(bd));
        Subspace kerdd = kernel(b.deldelbar_block(bd));
        Subspace imd = image(b.del_block(prev_p));
        Subspace imdb = image(b.delbar_block(prev_q));
        // im ∂∂̄ into bd comes from (p−1,q−1) through (p−1,q).
        Subspace imdd = image(b.del_block(prev_p) * b.delbar_block(prev_pq));

        QuotientPresentation pres;
        switch (kind) {
            case CohKind::BC: {
                Subspace kk = intersection(kerd, kerdb);
                pres = quotient_present(kk, imdd);
                break;
            }
            case CohKind::BC_red: {
                Subspace kk = intersection(kerd, kerdb);
                Subspace num = intersection(kk, sum(imd, imdb));
                pres = quotient_present(num, imdd);
                break;
            }
            case CohKind::Dot: {
                Subspace kk = intersection(kerd, kerdb);
                Subspace den = intersection(kk, sum(imd, imdb));
                pres = quotient_present(kk, den);
                break;
            }
            case CohKind::A: {
                pres = quotient_present(kerdd, sum(imd, imdb));
                break;
            }
            case CohKind::A_red: {
                Subspace kk = intersection(kerd, kerdb);
                pres = quotient_present(kerdd, sum(kk, sum(imd, imdb)));
                break;
            }
            case CohKind::Dol_del: {
                pres = quotient_present(kerd, imd);
                break;
            }
            case CohKind::Dol_delbar: {
                pres = quotient_present(kerdb, imdb);
                break;
            }
        }
        table.entries.emplace(bd, std::move(pres));
    }
    return table;
}

std::map<Bidegree, int> cohomology_dims(const Bicomplex& b, CohKind kind) {
    return cohomology(b, kind).dims();
}

std::optional<int> connectivity(const Bicomplex& b) {
    auto ha = cohomology_dims(b, CohKind::A);
    if (ha.empty()) return std::nullopt;
    int lowest = ha.begin()->first.total();
    for (const auto& [bd, d] : ha) lowest = std::min(lowest, bd.total());
    return lowest - 1;
}

bool is_contractible(const Bicomplex& b) {
    return cohomology_dims(b, CohKind::BC).empty() && cohomology_dims(b, CohKind::A).empty();
}

}  // namespace bct
