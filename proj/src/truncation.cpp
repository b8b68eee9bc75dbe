#include "bct/truncation.hpp"

#include <stdexcept>

namespace bct {

TruncationBelow truncate_below(const Bicomplex& b, int k) {
    // Per-bidegree subspaces of the antidiagonal slices.
    std::map<Bidegree, Subspace> sub;
    for (const auto& [bd, d] : b.dims()) {
        int t = bd.total();
        if (t <= k - 1) {
            sub.emplace(bd, Subspace::full(d));
        } else if (t == k) {
            sub.emplace(bd, kernel(b.deldelbar_block(bd)));
        } else if (t == k + 1) {
            Subspace kk = intersection(kernel(b.del_block(bd)), kernel(b.delbar_block(bd)));
            Subspace im = sum(image(b.del_block(Bidegree{bd.p - 1, bd.q})),
                              image(b.delbar_block(Bidegree{bd.p, bd.q - 1})));
            sub.emplace(bd, intersection(kk, im));
        }
    }
    TruncationBelow res;
    for (const auto& [bd, s] : sub) res.bc.set_dim(bd, s.dim());
    auto induce = [&](Bidegree src, Bidegree tgt, const RatMatrix& blk) {
        const Subspace& ss = sub.at(src);
        const Subspace& ts = sub.at(tgt);
        RatMatrix mapped = blk * ss.basis();
        auto coords = solve_matrix(ts.basis(), mapped);
        if (!coords) throw std::logic_error("truncate_below: differential leaves the subcomplex");
        return *coords;
    };
    for (const auto& [bd, s] : sub) {
        if (s.dim() == 0) continue;
        if (res.bc.dim(dp(bd)) > 0) res.bc.set_del(bd, induce(bd, dp(bd), b.del_block(bd)));
        if (res.bc.dim(dq(bd)) > 0) res.bc.set_delbar(bd, induce(bd, dq(bd), b.delbar_block(bd)));
    }
    res.bc.normalize();
    res.inclusion.source = res.bc;
    res.inclusion.target = b;
    for (const auto& [bd, s] : sub)
        if (s.dim() > 0) res.inclusion.set_block(bd, s.basis());
    res.inclusion.normalize();
    return res;
}

TruncationAbove truncate_above(const Bicomplex& b, int k) {
    std::map<Bidegree, QuotientPresentation> pres;
    for (const auto& [bd, d] : b.dims()) {
        int t = bd.total();
        Subspace den;
        if (t <= k - 1) {
            den = Subspace::full(d);
        } else if (t == k) {
            den = sum(image(b.del_block(Bidegree{bd.p - 1, bd.q})),
                      image(b.delbar_block(Bidegree{bd.p, bd.q - 1})));
        } else if (t == k + 1) {
            den = image(b.del_block(Bidegree{bd.p - 1, bd.q}) *
                        b.delbar_block(Bidegree{bd.p - 1, bd.q - 1}));
        } else {
            den = Subspace::zero_sub(d);
        }
        pres.emplace(bd, quotient_present(Subspace::full(d), den));
    }
    TruncationAbove res;
    for (const auto& [bd, p] : pres) res.bc.set_dim(bd, p.dim());
    auto induce = [&](Bidegree src, Bidegree tgt, const RatMatrix& blk) {
        const QuotientPresentation& ps = pres.at(src);
        const QuotientPresentation& pt = pres.at(tgt);
        RatMatrix chk = pt.projection() * blk * ps.denominator().basis();
        if (!chk.is_zero())
            throw std::logic_error("truncate_above: differential not defined on the quotient");
        return pt.projection() * blk * ps.section();
    };
    for (const auto& [bd, p] : pres) {
        if (p.dim() == 0) continue;
        if (res.bc.dim(dp(bd)) > 0) res.bc.set_del(bd, induce(bd, dp(bd), b.del_block(bd)));
        if (res.bc.dim(dq(bd)) > 0) res.bc.set_delbar(bd, induce(bd, dq(bd), b.delbar_block(bd)));
    }
    res.bc.normalize();
    res.projection.source = b;
    res.projection.target = res.bc;
    for (const auto& [bd, p] : pres)
        if (p.dim() > 0) res.projection.set_block(bd, p.projection());
    res.projection.normalize();
    return res;
}

Bicomplex cohomology_bicomplex(const Bicomplex& b, int k) {
    TruncationAbove upper = truncate_above(b, k);
    TruncationBelow both = truncate_below(upper.bc, k);
    return both.bc;
}

Bicomplex minimal_model(const Bicomplex& b) {
    Bicomplex m;
    if (b.is_zero()) return m;
    for (int k = b.min_total(); k <= b.max_total(); ++k)
        m = direct_sum(m, cohomology_bicomplex(b, k));
    return m;
}

}  // namespace bct
