#include "bct/decomp.hpp"

#include <algorithm>
#include <stdexcept>

namespace bct {

Bicomplex Summand::local() const {
    return is_square ? Bicomplex::square_at(anchor) : make_zigzag(desc);
}

std::map<Bidegree, int> Decomposition::square_counts() const {
    std::map<Bidegree, int> c;
    for (const auto& s : summands)
        if (s.is_square) c[s.anchor] += 1;
    return c;
}

std::map<ZigZagDescriptor, int> Decomposition::zigzag_counts() const {
    std::map<ZigZagDescriptor, int> c;
    for (const auto& s : summands)
        if (!s.is_square) c[s.desc] += 1;
    return c;
}

void Decomposition::sort_canonical() {
    std::stable_sort(summands.begin(), summands.end(), [](const Summand& a, const Summand& b) {
        if (a.is_square != b.is_square) return a.is_square;
        if (a.is_square) return a.anchor < b.anchor;
        return a.desc < b.desc;
    });
}

Bicomplex Decomposition::model() const {
    Bicomplex m;
    for (const auto& s : summands) m = direct_sum(m, s.local());
    return m;
}

std::map<Bidegree, RatMatrix> Decomposition::basis_change(const Bicomplex& input) const {
    std::map<Bidegree, std::vector<RatVector>> cols;
    for (const auto& s : summands)
        for (const auto& [bd, v] : s.vectors) cols[bd].push_back(v);
    std::map<Bidegree, RatMatrix> t;
    for (const auto& [bd, vs] : cols) t[bd] = from_cols(input.dim(bd), vs);
    return t;
}

bool Decomposition::verify(const Bicomplex& input, std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    Bicomplex mod = model();
    if (mod.dims() != input.dims()) return fail("model dimensions differ from input");
    auto t = basis_change(input);
    for (const auto& [bd, m] : t) {
        if (m.rows() != m.cols()) return fail("basis change not square at " + bd.str());
        if (rank(m) != m.rows()) return fail("basis change singular at " + bd.str());
    }
    auto tat = [&](Bidegree bd) {
        auto it = t.find(bd);
        if (it != t.end()) return it->second;
        return RatMatrix(input.dim(bd), input.dim(bd));
    };
    for (const auto& [bd, d] : input.dims()) {
        if (!(input.del_block(bd) * tat(bd) == tat(dp(bd)) * mod.del_block(bd)))
            return fail("del conjugation fails out of " + bd.str());
        if (!(input.delbar_block(bd) * tat(bd) == tat(dq(bd)) * mod.delbar_block(bd)))
            return fail("delbar conjugation fails out of " + bd.str());
    }
    return true;
}

std::map<Bidegree, int> predicted_coh_dims(const Decomposition& d, CohKind kind) {
    std::map<Bidegree, int> out;
    for (const auto& s : d.summands) {
        if (s.is_square) continue;
        for (const auto& [bd, n] : zigzag_coh_dims(s.desc, kind)) out[bd] += n;
    }
    return out;
}

bool reconcile_with_cohomology(const Decomposition& d, const Bicomplex& input, std::string* why) {
    for (CohKind kind : kAllCohKinds) {
        auto predicted = predicted_coh_dims(d, kind);
        auto actual = cohomology_dims(input, kind);
        if (predicted != actual) {
            if (why) *why = "cohomology table mismatch for kind " + coh_kind_name(kind);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Square splitting.

namespace {

// Greedily extend `base` (columns independent) to a basis of Q^n with unit
// vectors; returns the chosen unit-vector indices.
std::vector<int> completing_units(const RatMatrix& base) {
    int n = base.rows();
    RatMatrix cur = base;
    std::vector<int> picked;
    int r = rank(cur);
    for (int i = 0; i < n && r < n; ++i) {
        RatMatrix unit(n, 1);
        unit.at(i, 0) = 1;
        RatMatrix cand = hstack(cur, unit);
        if (rank(cand) > r) {
            picked.push_back(i);
            cur = cand;
            ++r;
        }
    }
    return picked;
}

void change_basis_at(Bicomplex& c, Bidegree x, const RatMatrix& n, const RatMatrix& ninv) {
    // blocks out of x
    if (c.dim(dp(x)) > 0) c.set_del(x, c.del_block(x) * n);
    if (c.dim(dq(x)) > 0) c.set_delbar(x, c.delbar_block(x) * n);
    // blocks into x
    Bidegree from_p{x.p - 1, x.q}, from_q{x.p, x.q - 1};
    if (c.dim(from_p) > 0) c.set_del(from_p, ninv * c.del_block(from_p));
    if (c.dim(from_q) > 0) c.set_delbar(from_q, ninv * c.delbar_block(from_q));
}

// Remove the first r coordinates at bidegree x, asserting that no block mixes
// the removed and kept ranges.
void shrink_at(Bicomplex& c, Bidegree x, int r) {
    auto keep_cols = [&](const RatMatrix& m) {
        RatMatrix out(m.rows(), m.cols() - r);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = r; j < m.cols(); ++j) out.at(i, j - r) = m.at(i, j);
        return out;
    };
    auto keep_rows = [&](const RatMatrix& m) {
        RatMatrix out(m.rows() - r, m.cols());
        for (int i = r; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out.at(i - r, j) = m.at(i, j);
        return out;
    };
    if (c.dim(dp(x)) > 0) c.set_del(x, keep_cols(c.del_block(x)));
    if (c.dim(dq(x)) > 0) c.set_delbar(x, keep_cols(c.delbar_block(x)));
    Bidegree from_p{x.p - 1, x.q}, from_q{x.p, x.q - 1};
    if (c.dim(from_p) > 0) {
        RatMatrix m = c.del_block(from_p);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(i, j) != 0)
                    throw std::logic_error("split_squares: complement is not closed at " + x.str());
        c.set_del(from_p, keep_rows(m));
    }
    if (c.dim(from_q) > 0) {
        RatMatrix m = c.delbar_block(from_q);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(i, j) != 0)
                    throw std::logic_error("split_squares: complement is not closed at " + x.str());
        c.set_delbar(from_q, keep_rows(m));
    }
    c.set_dim(x, c.dim(x) - r);
}

}  // namespace

SquareSplit split_squares(const Bicomplex& b) {
    Diagnostics diag = b.validate();
    if (!diag.ok()) throw std::invalid_argument("split_squares: invalid bicomplex:\n" + diag.str());

    SquareSplit res;
    Bicomplex cur = b;
    std::map<Bidegree, RatMatrix> emb;  // ambient × current dim
    for (const auto& [bd, d] : b.dims()) emb[bd] = RatMatrix::identity(d);

    std::vector<Bidegree> order;
    for (const auto& [bd, d] : b.dims()) order.push_back(bd);

    for (const Bidegree& bd : order) {
        if (cur.dim(bd) == 0) continue;
        RatMatrix d2 = cur.deldelbar_block(bd);
        RrefResult rr = rref(d2);
        int r = rr.rank;
        if (r == 0) continue;

        Bidegree bp = dp(bd), bq = dq(bd), bpq = dpq(bd);
        int n0 = cur.dim(bd), n3 = cur.dim(bpq);

        // Generators: unit vectors at the pivot columns of the ∂∂̄ block.
        RatMatrix x(n0, r);
        for (int k = 0; k < r; ++k) x.at(rr.pivot_cols[k], k) = 1;
        RatMatrix s2 = cur.del_block(bd) * x;
        RatMatrix s3 = cur.delbar_block(bd) * x;
        RatMatrix s4 = d2 * x;

        // σ : V^{p+1,q+1} → Q^r picking ∂∂̄x coordinates.
        std::vector<int> extra = completing_units(s4);
        RatMatrix f = s4;
        for (int i : extra) {
            RatMatrix unit(n3, 1);
            unit.at(i, 0) = 1;
            f = hstack(f, unit);
        }
        auto finv = inverse(f);
        if (!finv) throw std::logic_error("split_squares: frame not invertible");
        RatMatrix sigma(r, n3);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n3; ++j) sigma.at(i, j) = finv->at(i, j);

        // New bases [square part | complement part] at the four bidegrees.
        auto make_basis = [&](const RatMatrix& sq_part, const RatMatrix& constraint) {
            RatMatrix comp = kernel_basis(constraint);
            return hstack(sq_part, comp);
        };
        RatMatrix nb0 = make_basis(x, d2);                                // ker ∂∂̄
        RatMatrix nb1 = make_basis(s2, sigma * cur.delbar_block(bp));     // ker σ∂̄
        RatMatrix nb2 = make_basis(s3, sigma * cur.del_block(bq));        // ker σ∂
        RatMatrix nb3 = make_basis(s4, sigma);                            // ker σ
        struct Change { Bidegree at; RatMatrix n; };
        std::vector<Change> changes = {{bd, nb0}, {bp, nb1}, {bq, nb2}, {bpq, nb3}};
        for (auto& ch : changes) {
            if (ch.n.rows() != ch.n.cols())
                throw std::logic_error("split_squares: complement has wrong dimension");
            auto ninv = inverse(ch.n);
            if (!ninv) throw std::logic_error("split_squares: basis change singular");
            change_basis_at(cur, ch.at, ch.n, *ninv);
            emb[ch.at] = emb[ch.at] * ch.n;
        }

        // Record the squares (first r coordinates at each of the four spots).
        for (int k = 0; k < r; ++k) {
            Summand s;
            s.is_square = true;
            s.anchor = bd;
            s.vectors[bd] = emb[bd].col(k);
            s.vectors[bp] = emb[bp].col(k);
            s.vectors[bq] = emb[bq].col(k);
            s.vectors[bpq] = emb[bpq].col(k);
            res.squares.push_back(std::move(s));
        }

        // The square part must sit block-diagonally; check the model blocks.
        auto expect = [&](const RatMatrix& blk, const Rational& diag_val) {
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    Rational want = (i == j) ? diag_val : Rational(0);
                    if (blk.at(i, j) != want)
                        throw std::logic_error("split_squares: square block not in normal form");
                }
        };
        expect(cur.del_block(bd), 1);
        expect(cur.delbar_block(bd), 1);
        expect(cur.del_block(bq), 1);
        expect(cur.delbar_block(bp), -1);

        // Cross terms between square part and complement must vanish before
        // shrinking; shrink_at checks the into-blocks, the out-blocks are
        // checked through the normal-form assertion plus these:
        auto check_out = [&](const RatMatrix& blk) {
            for (int i = r; i < blk.rows(); ++i)
                for (int j = 0; j < r; ++j)
                    if (blk.at(i, j) != 0)
                        throw std::logic_error("split_squares: square leaks into complement");
            for (int i = 0; i < r && blk.rows() >= r; ++i)
                for (int j = r; j < blk.cols(); ++j)
                    if (blk.at(i, j) != 0)
                        throw std::logic_error("split_squares: complement leaks into square");
        };
        check_out(cur.del_block(bd));
        check_out(cur.delbar_block(bd));
        check_out(cur.del_block(bq));
        check_out(cur.delbar_block(bp));

        for (auto& ch : changes) {
            shrink_at(cur, ch.at, r);
            RatMatrix e = emb[ch.at];
            RatMatrix kept(e.rows(), e.cols() - r);
            for (int i = 0; i < e.rows(); ++i)
                for (int j = r; j < e.cols(); ++j) kept.at(i, j - r) = e.at(i, j);
            emb[ch.at] = kept;
        }
        cur.normalize();

        if (!cur.deldelbar_block(bd).is_zero())
            throw std::logic_error("split_squares: residual ∂∂̄ after split at " + bd.str());
    }

    if (!cur.is_minimal()) throw std::logic_error("split_squares: result not minimal");
    res.minimal_part = cur;
    for (auto& [bd, e] : emb)
        if (e.cols() > 0) res.embedding[bd] = e;
    return res;
}

// ---------------------------------------------------------------------------
// Zig-zag decomposition of a minimal bicomplex.
//
// After the three-way splitting V = C ⊕ H ⊕ I per bidegree (C a complement of
// ker∂ ∩ ker∂̄, H a complement of im∂ + im∂̄ inside the kernels, I the images),
// the H part gives dots and each adjacent pair of total degrees carries an
// alternating line-quiver representation with blocks R_p = ∂̄ : C_p → I_p and
// Q_p = ∂ : C_p → I_{p+1}. The sweep below normalizes every block to a
// partial matching working left to right; the elimination order is the
// functorial-filtration order on left tails (tails ending at a sink, by
// ascending length, then tails ending at a source by descending length),
// which is exactly the order making every clearing operation repairable by a
// chain of compensations running down the two strings involved.

namespace {

struct LineSpace {
    Bidegree bd;
    int dim = 0;
    RatMatrix u;  // part coordinates ← current coordinates
    std::vector<int> left_match, right_match;
};

struct PairSweep {
    // col -> space; sinks at total k+1, sources at total k
    std::map<int, LineSpace> src, snk;
    std::map<int, RatMatrix> r_blk;  // R_p : C_p -> I_p
    std::map<int, RatMatrix> q_blk;  // Q_p : C_p -> I_{p+1}

    bool has_src(int p) const { return src.count(p) && src.at(p).dim > 0; }
    bool has_snk(int p) const { return snk.count(p) && snk.at(p).dim > 0; }

    // row op row_dst += coef * row_src on everything into sink col p
    void target_op(int p, int dst, int srci, const Rational& coef) {
        if (auto it = r_blk.find(p); it != r_blk.end())
            for (int j = 0; j < it->second.cols(); ++j)
                it->second.at(dst, j) += coef * it->second.at(srci, j);
        if (auto it = q_blk.find(p - 1); it != q_blk.end())
            for (int j = 0; j < it->second.cols(); ++j)
                it->second.at(dst, j) += coef * it->second.at(srci, j);
        LineSpace& s = snk.at(p);
        for (int i = 0; i < s.dim; ++i) s.u.at(i, srci) -= coef * s.u.at(i, dst);
    }
    void target_scale(int p, int i, const Rational& c) {
        if (auto it = r_blk.find(p); it != r_blk.end())
            for (int j = 0; j < it->second.cols(); ++j) it->second.at(i, j) *= c;
        if (auto it = q_blk.find(p - 1); it != q_blk.end())
            for (int j = 0; j < it->second.cols(); ++j) it->second.at(i, j) *= c;
        LineSpace& s = snk.at(p);
        for (int k = 0; k < s.dim; ++k) s.u.at(k, i) /= c;
    }
    // col op col_dst += coef * col_src on everything out of source col p
    void source_op(int p, int dst, int srci, const Rational& coef) {
        if (auto it = r_blk.find(p); it != r_blk.end())
            for (int i = 0; i < it->second.rows(); ++i)
                it->second.at(i, dst) += coef * it->second.at(i, srci);
        if (auto it = q_blk.find(p); it != q_blk.end())
            for (int i = 0; i < it->second.rows(); ++i)
                it->second.at(i, dst) += coef * it->second.at(i, srci);
        LineSpace& s = src.at(p);
        for (int i = 0; i < s.dim; ++i) s.u.at(i, dst) += coef * s.u.at(i, srci);
    }
    void source_scale(int p, int j, const Rational& c) {
        if (auto it = r_blk.find(p); it != r_blk.end())
            for (int i = 0; i < it->second.rows(); ++i) it->second.at(i, j) *= c;
        if (auto it = q_blk.find(p); it != q_blk.end())
            for (int i = 0; i < it->second.rows(); ++i) it->second.at(i, j) *= c;
        LineSpace& s = src.at(p);
        for (int i = 0; i < s.dim; ++i) s.u.at(i, j) *= c;
    }

    // Left tail length: edges walked toward smaller line positions.
    int tail_len(bool sink, int p, int idx) const {
        int len = 0;
        bool is_sink = sink;
        int col = p, i = idx;
        while (true) {
            const LineSpace& s = is_sink ? snk.at(col) : src.at(col);
            int lm = s.left_match[i];
            if (lm < 0) return len;
            ++len;
            if (is_sink) {
                // sink col p ← source col p−1 (via Q_{p−1})
                i = lm;
                col = col - 1;
                is_sink = false;
            } else {
                // source col p ← sink col p (via R_p)
                i = lm;
                is_sink = true;
            }
        }
    }

    // Functorial-filtration order: even tails (ending at a sink-side object)
    // ascending, then odd tails descending.
    std::pair<int, int> order_key(bool sink, int p, int idx) const {
        int len = tail_len(sink, p, idx);
        if (len % 2 == 0) return {0, len};
        return {1, -len};
    }

    // First op of a clearing plus its chain of left compensations. dst/src
    // live in the sink (is_sink) or source space at column p.
    void absorb(bool is_sink, int p, int dst, int srci, Rational coef) {
        bool cs = is_sink;
        int col = p, d = dst, s = srci;
        while (true) {
            if (cs)
                target_op(col, d, s, coef);
            else
                source_op(col, d, s, coef);
            const LineSpace& sp = cs ? snk.at(col) : src.at(col);
            int ls = sp.left_match[s];
            if (ls < 0) break;
            int ld = sp.left_match[d];
            if (ld < 0)
                throw std::logic_error("zigzag_decompose: absorption order violated");
            int nd = ls, ns = ld;
            coef = -coef;
            if (cs) {
                cs = false;
                col = col - 1;  // to source col p−1
            } else {
                cs = true;  // to sink col p
            }
            d = nd;
            s = ns;
        }
    }
};

}  // namespace

Decomposition zigzag_decompose(const Bicomplex& minimal) {
    Diagnostics diag = minimal.validate();
    if (!diag.ok())
        throw std::invalid_argument("zigzag_decompose: invalid bicomplex:\n" + diag.str());
    if (!minimal.is_minimal())
        throw std::invalid_argument("zigzag_decompose: input is not minimal (∂∂̄ ≠ 0)");

    Decomposition out;
    if (minimal.is_zero()) return out;

    // Three-way splitting per bidegree: T0 = [C | H | I].
    struct Split {
        RatMatrix t0;
        int nc = 0, nh = 0, ni = 0;
    };
    std::map<Bidegree, Split> split;
    for (const auto& [bd, d] : minimal.dims()) {
        Subspace imd = image(minimal.del_block({bd.p - 1, bd.q}));
        Subspace imdb = image(minimal.delbar_block({bd.p, bd.q - 1}));
        Subspace i_part = sum(imd, imdb);
        Subspace k_part =
            intersection(kernel(minimal.del_block(bd)), kernel(minimal.delbar_block(bd)));
        if (!k_part.contains(i_part))
            throw std::logic_error("zigzag_decompose: images not inside kernels");

        // H: columns of K extending I; C: unit vectors extending K.
        RatMatrix hi = i_part.basis();
        int cur_rank = i_part.dim();
        RatMatrix h(d, 0);
        for (int j = 0; j < k_part.dim(); ++j) {
            RatMatrix cand = hstack(hi, from_cols(d, {k_part.basis().col(j)}));
            if (rank(cand) > cur_rank) {
                hi = cand;
                ++cur_rank;
                h = hstack(h, from_cols(d, {k_part.basis().col(j)}));
            }
        }
        RatMatrix c(d, 0);
        {
            RatMatrix acc = hi;
            for (int i = 0; i < d && cur_rank < d; ++i) {
                RatMatrix unit(d, 1);
                unit.at(i, 0) = 1;
                RatMatrix cand = hstack(acc, unit);
                if (rank(cand) > cur_rank) {
                    acc = cand;
                    ++cur_rank;
                    c = hstack(c, unit);
                }
            }
        }
        Split s;
        s.nc = c.cols();
        s.nh = h.cols();
        s.ni = i_part.dim();
        s.t0 = hstack(hstack(c, h), i_part.basis());
        if (s.t0.cols() != d || rank(s.t0) != d)
            throw std::logic_error("zigzag_decompose: splitting is not a basis at " + bd.str());
        split.emplace(bd, std::move(s));
    }

    // Dots from the H parts.
    for (const auto& [bd, s] : split)
        for (int j = 0; j < s.nh; ++j) {
            Summand dot;
            dot.desc = {ZigZagFamily::A, 0, bd};
            dot.vectors[bd] = s.t0.col(s.nc + j);
            out.summands.push_back(std::move(dot));
        }

    // Blocks in split coordinates; C columns must land in I rows.
    auto part_block = [&](Bidegree src_bd, Bidegree tgt_bd, const RatMatrix& blk) -> RatMatrix {
        const Split& ss = split.at(src_bd);
        const Split& ts = split.at(tgt_bd);
        auto coords = solve_matrix(ts.t0, blk * ss.t0);
        if (!coords) throw std::logic_error("zigzag_decompose: block solve failed");
        RatMatrix m(ts.ni, ss.nc);
        for (int i = 0; i < coords->rows(); ++i)
            for (int j = 0; j < coords->cols(); ++j) {
                const Rational& v = coords->at(i, j);
                if (v == 0) continue;
                bool row_i_part = i >= ts.nc + ts.nh;
                bool col_c_part = j < ss.nc;
                if (!row_i_part || !col_c_part)
                    throw std::logic_error("zigzag_decompose: block outside C -> I structure");
                m.at(i - ts.nc - ts.nh, j) = v;
            }
        return m;
    };

    // Process pairs of adjacent total degrees independently.
    for (int k = minimal.min_total(); k <= minimal.max_total(); ++k) {
        PairSweep sweep;
        for (const auto& [bd, s] : split) {
            if (bd.total() == k && s.nc > 0) {
                LineSpace ls;
                ls.bd = bd;
                ls.dim = s.nc;
                ls.u = RatMatrix::identity(s.nc);
                ls.left_match.assign(s.nc, -1);
                ls.right_match.assign(s.nc, -1);
                sweep.src.emplace(bd.p, std::move(ls));
            }
            if (bd.total() == k + 1 && s.ni > 0) {
                LineSpace ls;
                ls.bd = bd;
                ls.dim = s.ni;
                ls.u = RatMatrix::identity(s.ni);
                ls.left_match.assign(s.ni, -1);
                ls.right_match.assign(s.ni, -1);
                sweep.snk.emplace(bd.p, std::move(ls));
            }
        }
        if (sweep.src.empty()) continue;
        for (const auto& [p, ss] : sweep.src) {
            Bidegree bd = ss.bd;
            if (sweep.has_snk(p))
                sweep.r_blk[p] = part_block(bd, dq(bd), minimal.delbar_block(bd));
            if (sweep.has_snk(p + 1))
                sweep.q_blk[p] = part_block(bd, dp(bd), minimal.del_block(bd));
        }

        std::vector<int> cols;
        for (const auto& [p, s] : sweep.src) cols.push_back(p);
        std::sort(cols.begin(), cols.end());

        for (int p : cols) {
            // --- normalize R_p (rows in tail order) ---
            if (sweep.has_snk(p) && sweep.r_blk.count(p)) {
                LineSpace& sink = sweep.snk.at(p);
                std::vector<int> rows(sink.dim);
                for (int i = 0; i < sink.dim; ++i) rows[i] = i;
                std::stable_sort(rows.begin(), rows.end(), [&](int a, int b) {
                    return sweep.order_key(true, p, a) < sweep.order_key(true, p, b);
                });
                for (int r : rows) {
                    RatMatrix& rb = sweep.r_blk.at(p);
                    int piv = -1;
                    for (int j = 0; j < rb.cols(); ++j)
                        if (rb.at(r, j) != 0) { piv = j; break; }
                    if (piv < 0) continue;
                    sweep.source_scale(p, piv, Rational(1) / rb.at(r, piv));
                    // clear the rest of row r with column ops (nothing finalized is hit)
                    for (int j = 0; j < rb.cols(); ++j) {
                        if (j == piv) continue;
                        if (rb.at(r, j) != 0) sweep.source_op(p, j, piv, -rb.at(r, j));
                    }
                    // clear the rest of column piv with absorptions
                    for (int r2 = 0; r2 < rb.rows(); ++r2) {
                        if (r2 == r) continue;
                        if (rb.at(r2, piv) != 0) sweep.absorb(true, p, r2, r, -rb.at(r2, piv));
                    }
                    sweep.src.at(p).left_match[piv] = r;
                    sink.right_match[r] = piv;
                }
            }
            // --- normalize Q_p (columns in tail order) ---
            if (sweep.has_snk(p + 1) && sweep.q_blk.count(p)) {
                LineSpace& source = sweep.src.at(p);
                LineSpace& sink = sweep.snk.at(p + 1);
                std::vector<int> order(source.dim);
                for (int j = 0; j < source.dim; ++j) order[j] = j;
                std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                    return sweep.order_key(false, p, a) < sweep.order_key(false, p, b);
                });
                for (int c : order) {
                    RatMatrix& qb = sweep.q_blk.at(p);
                    // clear entries at already matched rows
                    for (int rho = 0; rho < qb.rows(); ++rho) {
                        if (sink.left_match[rho] < 0) continue;
                        if (qb.at(rho, c) != 0)
                            sweep.absorb(false, p, c, sink.left_match[rho], -qb.at(rho, c));
                    }
                    int piv = -1;
                    for (int i = 0; i < qb.rows(); ++i)
                        if (qb.at(i, c) != 0) {
                            if (sink.left_match[i] >= 0)
                                throw std::logic_error("zigzag_decompose: matched row survived");
                            piv = i;
                            break;
                        }
                    if (piv < 0) continue;
                    sweep.target_scale(p + 1, piv, Rational(1) / qb.at(piv, c));
                    for (int i = 0; i < qb.rows(); ++i) {
                        if (i == piv) continue;
                        if (qb.at(i, c) != 0) sweep.target_op(p + 1, i, piv, -qb.at(i, c));
                    }
                    sink.left_match[piv] = c;
                    source.right_match[c] = piv;
                }
            }
        }

        // All blocks must now be partial matchings.
        auto expect_matching = [&](const RatMatrix& m, const LineSpace& rows, bool from_r,
                                   int p) {
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) {
                    bool matched = from_r ? (rows.right_match[i] == j && sweep.src.at(p).left_match[j] == i)
                                          : (rows.left_match[i] == j);
                    Rational want = matched ? 1 : 0;
                    if (m.at(i, j) != want)
                        throw std::logic_error("zigzag_decompose: block not in matching form");
                }
        };
        for (const auto& [p, m] : sweep.r_blk) expect_matching(m, sweep.snk.at(p), true, p);
        for (const auto& [p, m] : sweep.q_blk) expect_matching(m, sweep.snk.at(p + 1), false, p);

        // Every object must sit on a string.
        for (const auto& [p, s] : sweep.src)
            for (int j = 0; j < s.dim; ++j)
                if (s.left_match[j] < 0 && s.right_match[j] < 0)
                    throw std::logic_error("zigzag_decompose: source vector maps to zero");
        for (const auto& [p, s] : sweep.snk)
            for (int i = 0; i < s.dim; ++i)
                if (s.left_match[i] < 0 && s.right_match[i] < 0)
                    throw std::logic_error("zigzag_decompose: sink vector is not hit");

        // Walk the strings.
        struct Obj {
            bool sink;
            int col;
            int idx;
        };
        std::map<std::tuple<bool, int, int>, bool> used;
        auto left_of = [&](const Obj& o) -> std::optional<Obj> {
            const LineSpace& s = o.sink ? sweep.snk.at(o.col) : sweep.src.at(o.col);
            int lm = s.left_match[o.idx];
            if (lm < 0) return std::nullopt;
            if (o.sink) return Obj{false, o.col - 1, lm};
            return Obj{true, o.col, lm};
        };
        auto right_of = [&](const Obj& o) -> std::optional<Obj> {
            const LineSpace& s = o.sink ? sweep.snk.at(o.col) : sweep.src.at(o.col);
            int rm = s.right_match[o.idx];
            if (rm < 0) return std::nullopt;
            if (o.sink) return Obj{false, o.col, rm};
            return Obj{true, o.col + 1, rm};
        };
        auto emit_string = [&](Obj start) {
            std::vector<Obj> chain;
            Obj cur = start;
            chain.push_back(cur);
            while (auto nxt = right_of(cur)) {
                cur = *nxt;
                chain.push_back(cur);
            }
            int sources = 0, sinks = 0;
            for (const Obj& o : chain) (o.sink ? sinks : sources) += 1;
            ZigZagDescriptor desc;
            bool first_sink = chain.front().sink, last_sink = chain.back().sink;
            if (first_sink && last_sink)
                desc = {ZigZagFamily::A, sources, {}};
            else if (!first_sink && !last_sink)
                desc = {ZigZagFamily::A, -sinks, {}};
            else if (first_sink && !last_sink)
                desc = {ZigZagFamily::B, sources, {}};
            else
                desc = {ZigZagFamily::C, sources, {}};
            for (const Obj& o : chain)
                if (!o.sink) {
                    desc.anchor = sweep.src.at(o.col).bd;
                    break;
                }
            Summand s;
            s.desc = desc;
            for (const Obj& o : chain) {
                const LineSpace& sp = o.sink ? sweep.snk.at(o.col) : sweep.src.at(o.col);
                const Split& spl = split.at(sp.bd);
                RatVector part = sp.u.col(o.idx);
                RatVector full(spl.t0.rows());
                int offset = o.sink ? spl.nc + spl.nh : 0;
                RatVector t0coords(spl.t0.cols());
                for (int i = 0; i < sp.dim; ++i) t0coords[offset + i] = part[i];
                s.vectors[sp.bd] = mat_vec(spl.t0, t0coords);
                used[{o.sink, o.col, o.idx}] = true;
            }
            if (make_zigzag(desc).dims() != s.local().dims())
                throw std::logic_error("zigzag_decompose: inconsistent string shape");
            out.summands.push_back(std::move(s));
        };
        for (const auto& [p, s] : sweep.snk)
            for (int i = 0; i < s.dim; ++i) {
                Obj o{true, p, i};
                if (!left_of(o) && !used.count({true, p, i})) emit_string(o);
            }
        for (const auto& [p, s] : sweep.src)
            for (int j = 0; j < s.dim; ++j) {
                Obj o{false, p, j};
                if (!left_of(o) && !used.count({false, p, j})) emit_string(o);
            }
    }

    out.sort_canonical();
    std::string why;
    if (!out.verify(minimal, &why))
        throw std::logic_error("zigzag_decompose: verification failed: " + why);
    return out;
}

Decomposition full_decompose(const Bicomplex& b) {
    SquareSplit sq = split_squares(b);
    Decomposition inner = zigzag_decompose(sq.minimal_part);
    Decomposition out;
    out.summands = sq.squares;
    for (auto& s : inner.summands) {
        Summand lifted;
        lifted.is_square = false;
        lifted.desc = s.desc;
        for (const auto& [bd, v] : s.vectors)
            lifted.vectors[bd] = mat_vec(sq.embedding.at(bd), v);
        out.summands.push_back(std::move(lifted));
    }
    out.sort_canonical();
    std::string why;
    if (!out.verify(b, &why))
        throw std::logic_error("full_decompose: verification failed: " + why);
    return out;
}

}  // namespace bct
