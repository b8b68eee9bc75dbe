#include "bct/map.hpp"

#include <stdexcept>

namespace bct {

void BicomplexMap::normalize() {
    for (auto it = blocks.begin(); it != blocks.end();) {
        if (it->second.is_zero())
            it = blocks.erase(it);
        else
            ++it;
    }
}

Diagnostics validate_map(const BicomplexMap& f) {
    Diagnostics diag;
    for (const auto& [bd, m] : f.blocks) {
        if (m.rows() != f.target.dim(bd) || m.cols() != f.source.dim(bd))
            diag.add("map block at " + bd.str() + " has shape " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ", expected " +
                     std::to_string(f.target.dim(bd)) + "x" + std::to_string(f.source.dim(bd)));
    }
    if (!diag.ok()) return diag;
    std::map<Bidegree, int> support;
    for (const auto& [bd, d] : f.source.dims()) support[bd] = 1;
    for (const auto& [bd, d] : f.target.dims()) support[bd] = 1;
    for (const auto& [bd, _] : support) {
        RatMatrix lhs = f.target.del_block(bd) * f.block(bd);
        RatMatrix rhs = f.block(dp(bd)) * f.source.del_block(bd);
        if (!(lhs == rhs)) diag.add("map does not commute with del out of " + bd.str());
        RatMatrix lhsb = f.target.delbar_block(bd) * f.block(bd);
        RatMatrix rhsb = f.block(dq(bd)) * f.source.delbar_block(bd);
        if (!(lhsb == rhsb)) diag.add("map does not commute with delbar out of " + bd.str());
    }
    return diag;
}

BicomplexMap identity_map(const Bicomplex& b) {
    BicomplexMap f;
    f.source = b;
    f.target = b;
    for (const auto& [bd, d] : b.dims()) f.set_block(bd, RatMatrix::identity(d));
    return f;
}

BicomplexMap zero_map(const Bicomplex& src, const Bicomplex& tgt) {
    BicomplexMap f;
    f.source = src;
    f.target = tgt;
    return f;
}

BicomplexMap compose(const BicomplexMap& g, const BicomplexMap& f) {
    BicomplexMap h;
    h.source = f.source;
    h.target = g.target;
    for (const auto& [bd, d] : f.source.dims()) {
        RatMatrix m = g.block(bd) * f.block(bd);
        if (!m.is_zero()) h.set_block(bd, std::move(m));
    }
    return h;
}

int InducedMap::rank_at(Bidegree bd) const {
    auto it = blocks.find(bd);
    return it == blocks.end() ? 0 : rank(it->second);
}

static int lookup(const std::map<Bidegree, int>& m, Bidegree bd) {
    auto it = m.find(bd);
    return it == m.end() ? 0 : it->second;
}

bool InducedMap::surjective_at(Bidegree bd) const { return rank_at(bd) == lookup(tgt_dims, bd); }
bool InducedMap::injective_at(Bidegree bd) const { return rank_at(bd) == lookup(src_dims, bd); }
bool InducedMap::bijective_at(Bidegree bd) const {
    return lookup(src_dims, bd) == lookup(tgt_dims, bd) && surjective_at(bd);
}

bool InducedMap::surjective_in_degree(int total) const {
    for (const auto& [bd, d] : tgt_dims)
        if (bd.total() == total && d > 0 && !surjective_at(bd)) return false;
    return true;
}

bool InducedMap::injective_in_degree(int total) const {
    for (const auto& [bd, d] : src_dims)
        if (bd.total() == total && d > 0 && !injective_at(bd)) return false;
    return true;
}

InducedMap induced_map(const BicomplexMap& f, CohKind kind) {
    CohomologyTable srct = cohomology(f.source, kind);
    CohomologyTable tgtt = cohomology(f.target, kind);
    InducedMap im;
    im.kind = kind;
    for (const auto& [bd, pres] : srct.entries) im.src_dims[bd] = pres.dim();
    for (const auto& [bd, pres] : tgtt.entries) im.tgt_dims[bd] = pres.dim();
    for (const auto& [bd, spres] : srct.entries) {
        auto tit = tgtt.entries.find(bd);
        int tdim = tit == tgtt.entries.end() ? 0 : tit->second.dim();
        if (spres.dim() == 0 || tdim == 0) continue;
        const QuotientPresentation& tpres = tit->second;
        RatMatrix fb = f.block(bd);
        // Representative independence: f must take denominator into denominator.
        const RatMatrix& den = spres.denominator().basis();
        for (int j = 0; j < den.cols(); ++j) {
            RatVector w = mat_vec(fb, den.col(j));
            if (!tpres.denominator().contains(w))
                throw std::logic_error("induced map not well-defined at " + bd.str());
        }
        RatMatrix m(tdim, spres.dim());
        for (int j = 0; j < spres.dim(); ++j) {
            RatVector rep = spres.representative(j);
            RatVector w = mat_vec(fb, rep);
            RatVector y = tpres.project_ambient(w);
            m.set_col(j, y);
        }
        im.blocks[bd] = std::move(m);
    }
    return im;
}

bool is_quasi_iso(const BicomplexMap& f) {
    for (CohKind kind : {CohKind::BC, CohKind::A}) {
        InducedMap im = induced_map(f, kind);
        std::map<Bidegree, int> support;
        for (const auto& [bd, d] : im.src_dims) support[bd] = 1;
        for (const auto& [bd, d] : im.tgt_dims) support[bd] = 1;
        for (const auto& [bd, _] : support)
            if (!im.bijective_at(bd)) return false;
    }
    return true;
}

CokernelResult cokernel(const BicomplexMap& f) {
    // Per bidegree: quotient of the full target by the image of the block.
    std::map<Bidegree, QuotientPresentation> pres;
    for (const auto& [bd, d] : f.target.dims()) {
        RatMatrix fb = f.block(bd);
        if (rank(fb) != f.source.dim(bd))
            throw std::invalid_argument("cokernel: map is not injective at " + bd.str());
        pres.emplace(bd, quotient_present(Subspace::full(d), image(fb)));
    }
    for (const auto& [bd, d] : f.source.dims())
        if (f.target.dim(bd) == 0 && d > 0)
            throw std::invalid_argument("cokernel: map is not injective at " + bd.str());

    CokernelResult res;
    for (const auto& [bd, p] : pres) res.coker.set_dim(bd, p.dim());
    auto induce = [&](Bidegree src, Bidegree tgt, const RatMatrix& blk) -> RatMatrix {
        const QuotientPresentation& ps = pres.at(src);
        const QuotientPresentation& pt = pres.at(tgt);
        // Well-definedness: the differential maps im f into im f (chain map).
        RatMatrix m = pt.projection() * blk * ps.section();
        RatMatrix chk = pt.projection() * blk * ps.denominator().basis();
        if (!chk.is_zero()) throw std::logic_error("cokernel differential not well-defined");
        return m;
    };
    for (const auto& [bd, p] : pres) {
        if (res.coker.dim(dp(bd)) > 0 && p.dim() > 0)
            res.coker.set_del(bd, induce(bd, dp(bd), f.target.del_block(bd)));
        if (res.coker.dim(dq(bd)) > 0 && p.dim() > 0)
            res.coker.set_delbar(bd, induce(bd, dq(bd), f.target.delbar_block(bd)));
    }
    res.coker.normalize();
    res.projection.source = f.target;
    res.projection.target = res.coker;
    for (const auto& [bd, p] : pres)
        if (p.dim() > 0) res.projection.set_block(bd, p.projection());
    res.projection.normalize();
    return res;
}

}  // namespace bct
