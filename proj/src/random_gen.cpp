#include "bct/random_gen.hpp"

namespace bct {

RatMatrix random_matrix(Rng& rng, int rows, int cols) {
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (rng.chance(60)) m.at(i, j) = rng.small_rational();
    return m;
}

RatMatrix random_invertible(Rng& rng, int n) {
    while (true) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = Rational(rng.uniform(-2, 2));
        if (rank(m) == n) return m;
    }
}

ScrambledSum random_scrambled_sum(Rng& rng, int max_total_dim) {
    ScrambledSum out;
    Bicomplex sum;
    int dim = 0;
    while (dim < max_total_dim) {
        int kind = rng.uniform(0, 3);
        Bidegree anchor{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (kind == 0) {
            if (dim + 4 > max_total_dim) break;
            sum = direct_sum(sum, Bicomplex::square_at(anchor));
            out.squares[anchor] += 1;
            dim += 4;
        } else {
            ZigZagDescriptor d;
            d.anchor = anchor;
            if (kind == 1) {
                d.family = ZigZagFamily::A;
                d.param = rng.uniform(-2, 2);
            } else {
                d.family = kind == 2 ? ZigZagFamily::B : ZigZagFamily::C;
                d.param = rng.uniform(1, 2);
            }
            if (dim + d.dot_count() > max_total_dim) break;
            sum = direct_sum(sum, make_zigzag(d));
            out.zigzags[d] += 1;
            dim += d.dot_count();
        }
    }
    // scramble: conjugate by a random invertible change at every bidegree
    std::map<Bidegree, RatMatrix> t, tinv;
    for (const auto& [bd, d] : sum.dims()) {
        t[bd] = random_invertible(rng, d);
        tinv[bd] = *inverse(t[bd]);
    }
    Bicomplex scr;
    for (const auto& [bd, d] : sum.dims()) scr.set_dim(bd, d);
    for (const auto& [bd, d] : sum.dims()) {
        if (sum.dim(dp(bd)) > 0)
            scr.set_del(bd, tinv.at(dp(bd)) * sum.del_block(bd) * t.at(bd));
        if (sum.dim(dq(bd)) > 0)
            scr.set_delbar(bd, tinv.at(dq(bd)) * sum.delbar_block(bd) * t.at(bd));
    }
    scr.normalize();
    out.bc = std::move(scr);
    return out;
}

Bicomplex random_bicomplex(Rng& rng, int max_total_dim) {
    return random_scrambled_sum(rng, max_total_dim).bc;
}

BicomplexMap random_chain_map(Rng& rng, const Bicomplex& v, const Bicomplex& w) {
    // Unknowns: entries of all blocks, flattened bidegree by bidegree.
    struct Slot {
        Bidegree bd;
        int rows, cols, offset;
    };
    std::vector<Slot> slots;
    int nvars = 0;
    std::map<Bidegree, int> slot_of;
    std::map<Bidegree, int> support;
    for (const auto& [bd, d] : v.dims()) support[bd] = 1;
    for (const auto& [bd, d] : w.dims()) support[bd] = 1;
    for (const auto& [bd, _] : support) {
        int r = w.dim(bd), c = v.dim(bd);
        if (r == 0 || c == 0) continue;
        slot_of[bd] = static_cast<int>(slots.size());
        slots.push_back({bd, r, c, nvars});
        nvars += r * c;
    }
    if (nvars == 0) return zero_map(v, w);

    // Constraints: target∘f − f∘source = 0 for both differentials.
    std::vector<RatVector> rows;
    auto add_constraints = [&](bool bar) {
        for (const auto& [bd, _] : support) {
            Bidegree tgt = bar ? dq(bd) : dp(bd);
            int nr = w.dim(tgt), nc = v.dim(bd);
            if (nr == 0 || nc == 0) continue;
            RatMatrix dw = bar ? w.delbar_block(bd) : w.del_block(bd);
            RatMatrix dv = bar ? v.delbar_block(bd) : v.del_block(bd);
            for (int i = 0; i < nr; ++i)
                for (int j = 0; j < nc; ++j) {
                    RatVector row(nvars);
                    bool nz = false;
                    if (auto it = slot_of.find(bd); it != slot_of.end()) {
                        const Slot& s = slots[it->second];
                        for (int k = 0; k < s.rows; ++k)
                            if (dw.at(i, k) != 0) {
                                row[s.offset + k * s.cols + j] += dw.at(i, k);
                                nz = true;
                            }
                    }
                    if (auto it = slot_of.find(tgt); it != slot_of.end()) {
                        const Slot& s = slots[it->second];
                        for (int k = 0; k < v.dim(tgt); ++k)
                            if (dv.at(k, j) != 0) {
                                row[s.offset + i * s.cols + k] -= dv.at(k, j);
                                nz = true;
                            }
                    }
                    if (nz) rows.push_back(std::move(row));
                }
        }
    };
    add_constraints(false);
    add_constraints(true);

    RatMatrix constraint(static_cast<int>(rows.size()), nvars);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < nvars; ++j) constraint.at(static_cast<int>(i), j) = rows[i][j];
    RatMatrix ker = kernel_basis(constraint);

    RatVector x(nvars);
    for (int k = 0; k < ker.cols(); ++k) {
        Rational c = rng.small_rational();
        if (c == 0) continue;
        for (int i = 0; i < nvars; ++i) x[i] += c * ker.at(i, k);
    }
    BicomplexMap f;
    f.source = v;
    f.target = w;
    for (const Slot& s : slots) {
        RatMatrix m(s.rows, s.cols);
        for (int i = 0; i < s.rows; ++i)
            for (int j = 0; j < s.cols; ++j) m.at(i, j) = x[s.offset + i * s.cols + j];
        if (!m.is_zero()) f.set_block(s.bd, std::move(m));
    }
    return f;
}

HirschExtension random_extension(Rng& rng, int max_vdim, bool with_twist) {
    HirschExtension e;
    // Base: closed odd generators a (1,0), b (0,1) and a closed even x (1,1).
    std::vector<Generator> gens = {{"a", {1, 0}}, {"b", {0, 1}}, {"x", {1, 1}}};
    e.base = TruncatedCbba(gens, 6);

    // V concentrated in total degree 2 with zero differentials.
    int n = rng.uniform(1, max_vdim);
    std::vector<Bidegree> spots = {{1, 1}, {2, 0}, {0, 2}};
    std::map<Bidegree, int> vdims;
    for (int i = 0; i < n; ++i) vdims[spots[rng.uniform(0, 2)]] += 1;
    for (const auto& [bd, d] : vdims) e.v.set_dim(bd, d);

    e.sys = zero_system(n);
    TwistedHom probe(e.base, e.v, e.sys);
    if (with_twist) {
        // Θ = a ⊗ M, Θ̄ = b ⊗ M̄ with commuting scalar matrices M, M̄ (M̄ a
        // polynomial in M); single odd closed coefficients square to zero, so
        // the Maurer-Cartan terms vanish and the pair commutes. Entries of a
        // degree-(1,0) twisting are only legal between basis vectors of the
        // same bidegree, so M is built block-diagonal by bidegree, which the
        // polynomial M̄ inherits.
        RatMatrix m1(n, n), m2(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (probe.v_bidegree(i) == probe.v_bidegree(j) && rng.chance(50))
                    m1.at(i, j) = Rational(rng.uniform(-2, 2));
        Rational c0(rng.uniform(-2, 2)), c1(rng.uniform(-2, 2));
        RatMatrix m1sq = m1 * m1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m2.at(i, j) = c0 * m1.at(i, j) + c1 * m1sq.at(i, j);
        int ai = e.base.gen_index("a"), bi = e.base.gen_index("b");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (m1.at(i, j) != 0) e.sys.theta[i][j] = m1.at(i, j) * e.base.gen_elem(ai);
                if (m2.at(i, j) != 0)
                    e.sys.thetabar[i][j] = m2.at(i, j) * e.base.gen_elem(bi);
            }
    }

    // Sample (φ, φ̄) exactly: cocycle triples at (0,0) have the form
    // (φ̄, ∂_Θ φ̄, φ); take a random kernel element of the two triple blocks.
    TwistedHom th(e.base, e.v, e.sys);
    Diagnostics sd = th.validate_system();
    if (!sd.ok()) throw std::logic_error("random_extension produced an invalid system");
    int d00 = th.triple().dim({0, 0});
    e.phi.assign(n, {});
    e.phibar.assign(n, {});
    if (d00 > 0) {
        RatMatrix both = vstack(th.triple().del_block({0, 0}), th.triple().delbar_block({0, 0}));
        RatMatrix ker = kernel_basis(both);
        RatVector x(d00);
        for (int k = 0; k < ker.cols(); ++k) {
            Rational c = rng.small_rational();
            if (c == 0) continue;
            for (int i = 0; i < d00; ++i) x[i] += c * ker.at(i, k);
        }
        HomValue f, h, g;
        th.split_triple({0, 0}, x, f, h, g);
        e.phibar = f;
        e.phi = g;
        // consistency of the h-slot with ∂_Θ φ̄ is automatic for cocycles
    }
    return e;
}

HomValue random_hom_value(Rng& rng, const TwistedHom& th) {
    int d = th.hom_dim({0, 0});
    RatVector x(d);
    for (int i = 0; i < d; ++i) x[i] = rng.small_rational();
    return th.hom_from_coords({0, 0}, x);
}

}  // namespace bct
