#include "bct/cone.hpp"

#include <stdexcept>

namespace bct {

namespace {

struct SlotLayout {
    int dw = 0, da = 0, dc = 0, db = 0;
    int off_a() const { return dw; }
    int off_c() const { return dw + da; }
    int off_b() const { return dw + da + dc; }
    int total() const { return dw + da + dc + db; }
};

SlotLayout layout(const BicomplexMap& f, Bidegree bd) {
    SlotLayout s;
    s.dw = f.target.dim(bd);
    s.da = f.source.dim({bd.p + 1, bd.q + 1});
    s.dc = f.source.dim({bd.p + 1, bd.q});
    s.db = f.source.dim({bd.p, bd.q + 1});
    return s;
}

}  // namespace

ConeResult cone(const BicomplexMap& f) {
    const Bicomplex& V = f.source;
    const Bicomplex& W = f.target;

    std::map<Bidegree, int> support;
    for (const auto& [bd, d] : W.dims()) support[bd] = 1;
    for (const auto& [bd, d] : V.dims()) {
        support[{bd.p - 1, bd.q - 1}] = 1;  // a slot
        support[{bd.p - 1, bd.q}] = 1;      // c slot
        support[{bd.p, bd.q - 1}] = 1;      // b slot
    }

    ConeResult res;
    for (const auto& [bd, _] : support) {
        int d = layout(f, bd).total();
        if (d > 0) res.cone.set_dim(bd, d);
    }

    for (const auto& [bd, _] : support) {
        SlotLayout src = layout(f, bd);
        if (src.total() == 0) continue;
        Bidegree a_bd{bd.p + 1, bd.q + 1}, c_bd{bd.p + 1, bd.q}, b_bd{bd.p, bd.q + 1};

        // ∂ block into (p+1, q)
        {
            Bidegree tgt = dp(bd);
            SlotLayout t = layout(f, tgt);
            if (t.total() > 0) {
                RatMatrix m(t.total(), src.total());
                RatMatrix wd = W.del_block(bd);
                for (int i = 0; i < wd.rows(); ++i)
                    for (int j = 0; j < wd.cols(); ++j) m.at(i, j) = wd.at(i, j);
                // a(v) -> a(∂v) + b(v)
                RatMatrix vd = V.del_block(a_bd);
                for (int i = 0; i < vd.rows(); ++i)
                    for (int j = 0; j < vd.cols(); ++j)
                        m.at(t.off_a() + i, src.off_a() + j) = vd.at(i, j);
                for (int j = 0; j < src.da; ++j) m.at(t.off_b() + j, src.off_a() + j) = 1;
                // c(v) -> −c(∂v) − f(v)
                RatMatrix vdc = V.del_block(c_bd);
                for (int i = 0; i < vdc.rows(); ++i)
                    for (int j = 0; j < vdc.cols(); ++j)
                        m.at(t.off_c() + i, src.off_c() + j) = -vdc.at(i, j);
                RatMatrix fb = f.block(c_bd);
                for (int i = 0; i < fb.rows(); ++i)
                    for (int j = 0; j < fb.cols(); ++j)
                        m.at(i, src.off_c() + j) = -fb.at(i, j);
                // b(v) -> −b(∂v)
                RatMatrix vdb = V.del_block(b_bd);
                for (int i = 0; i < vdb.rows(); ++i)
                    for (int j = 0; j < vdb.cols(); ++j)
                        m.at(t.off_b() + i, src.off_b() + j) = -vdb.at(i, j);
                res.cone.set_del(bd, std::move(m));
            }
        }
        // ∂̄ block into (p, q+1)
        {
            Bidegree tgt = dq(bd);
            SlotLayout t = layout(f, tgt);
            if (t.total() > 0) {
                RatMatrix m(t.total(), src.total());
                RatMatrix wd = W.delbar_block(bd);
                for (int i = 0; i < wd.rows(); ++i)
                    for (int j = 0; j < wd.cols(); ++j) m.at(i, j) = wd.at(i, j);
                // a(v) -> a(∂̄v) + c(v)
                RatMatrix vd = V.delbar_block(a_bd);
                for (int i = 0; i < vd.rows(); ++i)
                    for (int j = 0; j < vd.cols(); ++j)
                        m.at(t.off_a() + i, src.off_a() + j) = vd.at(i, j);
                for (int j = 0; j < src.da; ++j) m.at(t.off_c() + j, src.off_a() + j) = 1;
                // c(v) -> −c(∂̄v)
                RatMatrix vdc = V.delbar_block(c_bd);
                for (int i = 0; i < vdc.rows(); ++i)
                    for (int j = 0; j < vdc.cols(); ++j)
                        m.at(t.off_c() + i, src.off_c() + j) = -vdc.at(i, j);
                // b(v) -> −b(∂̄v) + f(v)
                RatMatrix vdb = V.delbar_block(b_bd);
                for (int i = 0; i < vdb.rows(); ++i)
                    for (int j = 0; j < vdb.cols(); ++j)
                        m.at(t.off_b() + i, src.off_b() + j) = -vdb.at(i, j);
                RatMatrix fb = f.block(b_bd);
                for (int i = 0; i < fb.rows(); ++i)
                    for (int j = 0; j < fb.cols(); ++j)
                        m.at(i, src.off_b() + j) = fb.at(i, j);
                res.cone.set_delbar(bd, std::move(m));
            }
        }
    }
    res.cone.normalize();

    Diagnostics diag = res.cone.validate();
    if (!diag.ok()) throw std::logic_error("cone is not a valid bicomplex:\n" + diag.str());

    res.inclusion.source = W;
    res.inclusion.target = res.cone;
    for (const auto& [bd, d] : W.dims()) {
        SlotLayout t = layout(f, bd);
        RatMatrix m(t.total(), d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1;
        res.inclusion.set_block(bd, std::move(m));
    }
    res.inclusion.normalize();

    TensorResult sh = shift(V, +1);
    res.shifted = sh.bc;
    res.projection.source = res.cone;
    res.projection.target = res.shifted;
    for (const auto& [bd, d] : res.cone.dims()) {
        SlotLayout s = layout(f, bd);
        int sd = res.shifted.dim(bd);
        if (sd == 0) continue;
        // shift basis order is [a | c | b]; cone order is [W | a | c | b]
        RatMatrix m(sd, d);
        for (int i = 0; i < sd; ++i) m.at(i, s.dw + i) = 1;
        res.projection.set_block(bd, std::move(m));
    }
    res.projection.normalize();
    return res;
}

Bicomplex cone_via_cokernel(const BicomplexMap& f) {
    const Bicomplex& V = f.source;
    const Bicomplex& W = f.target;
    TensorResult sq = tensor(Bicomplex::square_at({-1, -1}), V);
    Bicomplex big = direct_sum(W, sq.bc);

    BicomplexMap g;
    g.source = V;
    g.target = big;
    for (const auto& [bd, d] : V.dims()) {
        RatMatrix m(big.dim(bd), d);
        RatMatrix fb = f.block(bd);
        for (int i = 0; i < fb.rows(); ++i)
            for (int j = 0; j < fb.cols(); ++j) m.at(i, j) = fb.at(i, j);
        for (int j = 0; j < d; ++j) {
            int idx = sq.index_of(bd, {0, 0}, 0, bd, j);
            if (idx < 0) throw std::logic_error("cone_via_cokernel: missing corner slot");
            m.at(W.dim(bd) + idx, j) = 1;
        }
        g.set_block(bd, std::move(m));
    }
    Diagnostics diag = validate_map(g);
    if (!diag.ok())
        throw std::logic_error("cone_via_cokernel: embedding is not a chain map:\n" + diag.str());
    return cokernel(g).coker;
}

Bicomplex reduced_cone(const Bicomplex& v, const Bicomplex& w,
                       const std::map<Bidegree, RatMatrix>& phi,
                       const std::map<Bidegree, RatMatrix>& phibar) {
    auto phi_at = [&](Bidegree bd) {
        auto it = phi.find(bd);
        if (it != phi.end()) return it->second;
        return RatMatrix(w.dim(dp(bd)), v.dim(bd));
    };
    auto phibar_at = [&](Bidegree bd) {
        auto it = phibar.find(bd);
        if (it != phibar.end()) return it->second;
        return RatMatrix(w.dim(dq(bd)), v.dim(bd));
    };
    for (const auto& [bd, m] : phi)
        if (m.rows() != w.dim(dp(bd)) || m.cols() != v.dim(bd))
            throw std::invalid_argument("reduced_cone: phi block shape mismatch at " + bd.str());
    for (const auto& [bd, m] : phibar)
        if (m.rows() != w.dim(dq(bd)) || m.cols() != v.dim(bd))
            throw std::invalid_argument("reduced_cone: phibar block shape mismatch at " + bd.str());

    std::map<Bidegree, int> support;
    for (const auto& [bd, d] : v.dims()) support[bd] = 1;
    for (const auto& [bd, d] : w.dims()) support[bd] = 1;
    for (const auto& [bd, _] : support) {
        RatMatrix i1 = w.del_block(dp(bd)) * phi_at(bd) + phi_at(dp(bd)) * v.del_block(bd);
        if (!i1.is_zero())
            throw std::invalid_argument(
                "reduced_cone: identity del_W phi + phi del_V = 0 fails out of " + bd.str());
        RatMatrix i2 =
            w.delbar_block(dq(bd)) * phibar_at(bd) + phibar_at(dq(bd)) * v.delbar_block(bd);
        if (!i2.is_zero())
            throw std::invalid_argument(
                "reduced_cone: identity delbar_W phibar + phibar delbar_V = 0 fails out of " +
                bd.str());
        RatMatrix i3 = phi_at(dq(bd)) * v.delbar_block(bd) +
                       w.del_block(dq(bd)) * phibar_at(bd) +
                       phibar_at(dp(bd)) * v.del_block(bd) +
                       w.delbar_block(dp(bd)) * phi_at(bd);
        if (!i3.is_zero())
            throw std::invalid_argument(
                "reduced_cone: mixed anticommutation identity fails out of " + bd.str());
    }

    Bicomplex rc;
    for (const auto& [bd, _] : support) {
        int d = w.dim(bd) + v.dim(bd);
        if (d > 0) rc.set_dim(bd, d);
    }
    for (const auto& [bd, _] : support) {
        int dsrc = w.dim(bd) + v.dim(bd);
        if (dsrc == 0) continue;
        if (rc.dim(dp(bd)) > 0) {
            RatMatrix m(rc.dim(dp(bd)), dsrc);
            RatMatrix wd = w.del_block(bd), vd = v.del_block(bd), ph = phi_at(bd);
            for (int i = 0; i < wd.rows(); ++i)
                for (int j = 0; j < wd.cols(); ++j) m.at(i, j) = wd.at(i, j);
            for (int i = 0; i < ph.rows(); ++i)
                for (int j = 0; j < ph.cols(); ++j) m.at(i, w.dim(bd) + j) = ph.at(i, j);
            for (int i = 0; i < vd.rows(); ++i)
                for (int j = 0; j < vd.cols(); ++j)
                    m.at(w.dim(dp(bd)) + i, w.dim(bd) + j) = vd.at(i, j);
            rc.set_del(bd, std::move(m));
        }
        if (rc.dim(dq(bd)) > 0) {
            RatMatrix m(rc.dim(dq(bd)), dsrc);
            RatMatrix wd = w.delbar_block(bd), vd = v.delbar_block(bd), ph = phibar_at(bd);
            for (int i = 0; i < wd.rows(); ++i)
                for (int j = 0; j < wd.cols(); ++j) m.at(i, j) = wd.at(i, j);
            for (int i = 0; i < ph.rows(); ++i)
                for (int j = 0; j < ph.cols(); ++j) m.at(i, w.dim(bd) + j) = ph.at(i, j);
            for (int i = 0; i < vd.rows(); ++i)
                for (int j = 0; j < vd.cols(); ++j)
                    m.at(w.dim(dq(bd)) + i, w.dim(bd) + j) = vd.at(i, j);
            rc.set_delbar(bd, std::move(m));
        }
    }
    rc.normalize();
    Diagnostics diag = rc.validate();
    if (!diag.ok()) throw std::logic_error("reduced_cone invalid:\n" + diag.str());
    return rc;
}

BicomplexMap reduced_cone_map(const Bicomplex& v, const Bicomplex& w,
                              const std::map<Bidegree, RatMatrix>& phi,
                              const std::map<Bidegree, RatMatrix>& phibar) {
    auto phi_at = [&](Bidegree bd) {
        auto it = phi.find(bd);
        if (it != phi.end()) return it->second;
        return RatMatrix(w.dim(dp(bd)), v.dim(bd));
    };
    auto phibar_at = [&](Bidegree bd) {
        auto it = phibar.find(bd);
        if (it != phibar.end()) return it->second;
        return RatMatrix(w.dim(dq(bd)), v.dim(bd));
    };
    TensorResult sh = shift(v, -1);
    BicomplexMap big;
    big.source = sh.bc;
    big.target = w;
    for (const auto& [bd, list] : sh.basis) {
        if (w.dim(bd) == 0 || list.empty()) continue;
        RatMatrix m(w.dim(bd), static_cast<int>(list.size()));
        bool nz = false;
        for (size_t j = 0; j < list.size(); ++j) {
            const TensorEntry& e = list[j];
            RatVector val;
            if (e.bda == Bidegree{0, 1}) {
                // y slot: φ̄(v)
                val = phibar_at(e.bdb).col(e.ib);
            } else if (e.bda == Bidegree{1, 0}) {
                // z slot: −φ(v)
                val = (Rational(-1) * phi_at(e.bdb)).col(e.ib);
            } else {
                // corner slot: ∂_W φ̄(v) + φ̄(∂_V v)
                Bidegree vb = e.bdb;
                RatVector t1 = mat_vec(w.del_block(dq(vb)), phibar_at(vb).col(e.ib));
                RatVector t2 = mat_vec(phibar_at(dp(vb)), v.del_block(vb).col(e.ib));
                val = t1 + t2;
            }
            for (int i = 0; i < w.dim(bd); ++i) {
                if (val[i] != 0) nz = true;
                m.at(i, static_cast<int>(j)) = val[i];
            }
        }
        if (nz) big.set_block(bd, std::move(m));
    }
    Diagnostics diag = validate_map(big);
    if (!diag.ok())
        throw std::logic_error("reduced_cone_map is not a chain map:\n" + diag.str());
    return big;
}

std::optional<int> map_connectivity(const BicomplexMap& f) {
    ConeResult cr = cone(f);
    std::optional<int> via_cone;
    {
        auto c = connectivity(cr.cone);
        if (c) via_cone = *c + 1;
    }

    InducedMap ia = induced_map(f, CohKind::A);
    InducedMap ibc = induced_map(f, CohKind::BC);
    int lo = 0, hi = 0;
    bool any = false;
    auto widen = [&](const std::map<Bidegree, int>& dims) {
        for (const auto& [bd, d] : dims) {
            if (!any) { lo = hi = bd.total(); any = true; }
            lo = std::min(lo, bd.total());
            hi = std::max(hi, bd.total());
        }
    };
    widen(ia.src_dims); widen(ia.tgt_dims); widen(ibc.src_dims); widen(ibc.tgt_dims);

    std::optional<int> s, t;  // first failures
    if (any) {
        for (int i = lo; i <= hi; ++i)
            if (!ia.surjective_in_degree(i)) { s = i; break; }
        for (int i = lo; i <= hi; ++i)
            if (!ibc.injective_in_degree(i)) { t = i; break; }
    }
    std::optional<int> via_lemma;
    if (s || t) {
        int k = s ? *s : (*t - 2);
        if (t && *t - 2 < k) k = *t - 2;
        via_lemma = k;
    }

    if (via_cone.has_value() != via_lemma.has_value() ||
        (via_cone && *via_cone != *via_lemma))
        throw std::logic_error("map_connectivity: cone and surjectivity/injectivity "
                               "characterizations disagree");
    return via_cone;
}

TriangleReport triangle_checks(const Bicomplex& b, int k) {
    TriangleReport rep;
    TruncationBelow tb = truncate_below(b, k);
    {
        Diagnostics d = validate_map(tb.inclusion);
        if (!d.ok()) { rep.detail = "inclusion invalid: " + d.str(); return rep; }
    }
    ConeResult cr = cone(tb.inclusion);
    TruncationAbove ta = truncate_above(b, k + 1);

    BicomplexMap g;
    g.source = cr.cone;
    g.target = ta.bc;
    for (const auto& [bd, d] : cr.cone.dims()) {
        int td = ta.bc.dim(bd);
        if (td == 0) continue;
        RatMatrix proj = ta.projection.block(bd);
        RatMatrix m(td, d);
        for (int i = 0; i < td; ++i)
            for (int j = 0; j < b.dim(bd); ++j) m.at(i, j) = proj.at(i, j);
        g.set_block(bd, std::move(m));
    }
    Diagnostics d = validate_map(g);
    if (!d.ok()) {
        rep.detail = "canonical map cone -> upper truncation is not a chain map: " + d.str();
        return rep;
    }
    rep.pass = is_quasi_iso(g);
    rep.detail = rep.pass ? "distinguished" : "cone -> upper truncation is not a quasi-iso";
    return rep;
}

}  // namespace bct
