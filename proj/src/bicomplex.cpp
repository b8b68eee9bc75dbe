#include "bct/bicomplex.hpp"

#include <sstream>
#include <stdexcept>

namespace bct {

std::string Diagnostics::str() const {
    std::ostringstream os;
    for (const auto& s : issues) os << s << "\n";
    return os.str();
}

void Bicomplex::set_dim(Bidegree bd, int d) {
    if (d < 0) throw std::invalid_argument("negative dimension at " + bd.str());
    if (d == 0)
        dims_.erase(bd);
    else
        dims_[bd] = d;
}

void Bicomplex::set_del(Bidegree bd, RatMatrix m) { del_[bd] = std::move(m); }
void Bicomplex::set_delbar(Bidegree bd, RatMatrix m) { delbar_[bd] = std::move(m); }

void Bicomplex::normalize() {
    for (auto it = del_.begin(); it != del_.end();) {
        if (it->second.is_zero() || dim(it->first) == 0 || dim(dp(it->first)) == 0)
            it = del_.erase(it);
        else
            ++it;
    }
    for (auto it = delbar_.begin(); it != delbar_.end();) {
        if (it->second.is_zero() || dim(it->first) == 0 || dim(dq(it->first)) == 0)
            it = delbar_.erase(it);
        else
            ++it;
    }
}

int Bicomplex::dim(Bidegree bd) const {
    auto it = dims_.find(bd);
    return it == dims_.end() ? 0 : it->second;
}

int Bicomplex::total_dim() const {
    int t = 0;
    for (const auto& [bd, d] : dims_) t += d;
    return t;
}

RatMatrix Bicomplex::del_block(Bidegree bd) const {
    auto it = del_.find(bd);
    if (it != del_.end()) return it->second;
    return RatMatrix(dim(dp(bd)), dim(bd));
}

RatMatrix Bicomplex::delbar_block(Bidegree bd) const {
    auto it = delbar_.find(bd);
    if (it != delbar_.end()) return it->second;
    return RatMatrix(dim(dq(bd)), dim(bd));
}

RatMatrix Bicomplex::deldelbar_block(Bidegree bd) const {
    return del_block(dq(bd)) * delbar_block(bd);
}

int Bicomplex::min_total() const {
    if (dims_.empty()) return 0;
    int m = dims_.begin()->first.total();
    for (const auto& [bd, d] : dims_) m = std::min(m, bd.total());
    return m;
}

int Bicomplex::max_total() const {
    if (dims_.empty()) return 0;
    int m = dims_.begin()->first.total();
    for (const auto& [bd, d] : dims_) m = std::max(m, bd.total());
    return m;
}

bool Bicomplex::is_minimal() const {
    for (const auto& [bd, d] : dims_)
        if (!deldelbar_block(bd).is_zero()) return false;
    return true;
}

Diagnostics Bicomplex::validate() const {
    Diagnostics diag;
    for (const auto& [bd, m] : del_) {
        if (m.rows() != dim(dp(bd)) || m.cols() != dim(bd))
            diag.add("del block at " + bd.str() + " has shape " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ", expected " +
                     std::to_string(dim(dp(bd))) + "x" + std::to_string(dim(bd)));
    }
    for (const auto& [bd, m] : delbar_) {
        if (m.rows() != dim(dq(bd)) || m.cols() != dim(bd))
            diag.add("delbar block at " + bd.str() + " has shape " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ", expected " +
                     std::to_string(dim(dq(bd))) + "x" + std::to_string(dim(bd)));
    }
    if (!diag.ok()) return diag;
    for (const auto& [bd, d] : dims_) {
        if (!(del_block(dp(bd)) * del_block(bd)).is_zero())
            diag.add("del^2 != 0 out of " + bd.str());
        if (!(delbar_block(dq(bd)) * delbar_block(bd)).is_zero())
            diag.add("delbar^2 != 0 out of " + bd.str());
        RatMatrix anti = del_block(dq(bd)) * delbar_block(bd) +
                         delbar_block(dp(bd)) * del_block(bd);
        if (!anti.is_zero()) diag.add("anticommutation fails out of " + bd.str());
    }
    return diag;
}

bool Bicomplex::operator==(const Bicomplex& o) const {
    if (dims_ != o.dims_) return false;
    for (const auto& [bd, d] : dims_) {
        if (!(del_block(bd) == o.del_block(bd))) return false;
        if (!(delbar_block(bd) == o.delbar_block(bd))) return false;
    }
    return true;
}

Bicomplex Bicomplex::dot(Bidegree bd) {
    Bicomplex b;
    b.set_dim(bd, 1);
    return b;
}

Bicomplex Bicomplex::square_at(Bidegree a) {
    Bicomplex b;
    Bidegree x = a, px = dp(a), qx = dq(a), pq = dpq(a);
    b.set_dim(x, 1);
    b.set_dim(px, 1);
    b.set_dim(qx, 1);
    b.set_dim(pq, 1);
    RatMatrix one(1, 1), minus(1, 1);
    one.at(0, 0) = 1;
    minus.at(0, 0) = -1;
    b.set_del(x, one);        // x -> ∂x
    b.set_del(qx, one);       // ∂̄x -> ∂∂̄x
    b.set_delbar(x, one);     // x -> ∂̄x
    b.set_delbar(px, minus);  // ∂x -> −∂∂̄x
    return b;
}

Bicomplex Bicomplex::shape_lower() {
    Bicomplex b;
    Bidegree x{-1, -1};
    b.set_dim(x, 1);
    b.set_dim(dp(x), 1);
    b.set_dim(dq(x), 1);
    RatMatrix one(1, 1);
    one.at(0, 0) = 1;
    b.set_del(x, one);
    b.set_delbar(x, one);
    return b;
}

Bicomplex Bicomplex::shape_upper() {
    Bicomplex b;
    Bidegree x{1, 1};
    Bidegree y{0, 1}, z{1, 0};
    b.set_dim(x, 1);
    b.set_dim(y, 1);
    b.set_dim(z, 1);
    RatMatrix one(1, 1);
    one.at(0, 0) = 1;
    b.set_del(y, one);     // y -> x
    b.set_delbar(z, one);  // z -> x
    return b;
}

Bicomplex direct_sum(const Bicomplex& a, const Bicomplex& b) {
    Bicomplex s;
    std::map<Bidegree, int> adim = a.dims(), bdim = b.dims();
    std::map<Bidegree, int> alldims;
    for (const auto& [bd, d] : adim) alldims[bd] += d;
    for (const auto& [bd, d] : bdim) alldims[bd] += d;
    for (const auto& [bd, d] : alldims) s.set_dim(bd, d);

    auto block = [&](Bidegree src, Bidegree tgt, bool bar) {
        RatMatrix am = bar ? a.delbar_block(src) : a.del_block(src);
        RatMatrix bm = bar ? b.delbar_block(src) : b.del_block(src);
        RatMatrix m(a.dim(tgt) + b.dim(tgt), a.dim(src) + b.dim(src));
        for (int i = 0; i < am.rows(); ++i)
            for (int j = 0; j < am.cols(); ++j) m.at(i, j) = am.at(i, j);
        for (int i = 0; i < bm.rows(); ++i)
            for (int j = 0; j < bm.cols(); ++j) m.at(a.dim(tgt) + i, a.dim(src) + j) = bm.at(i, j);
        return m;
    };
    for (const auto& [bd, d] : alldims) {
        if (s.dim(dp(bd)) > 0) s.set_del(bd, block(bd, dp(bd), false));
        if (s.dim(dq(bd)) > 0) s.set_delbar(bd, block(bd, dq(bd), true));
    }
    s.normalize();
    return s;
}

int TensorResult::index_of(Bidegree bd, Bidegree bda, int ia, Bidegree bdb, int ib) const {
    auto it = basis.find(bd);
    if (it == basis.end()) return -1;
    const auto& list = it->second;
    for (size_t k = 0; k < list.size(); ++k) {
        const TensorEntry& e = list[k];
        if (e.bda == bda && e.ia == ia && e.bdb == bdb && e.ib == ib)
            return static_cast<int>(k);
    }
    return -1;
}

TensorResult tensor(const Bicomplex& a, const Bicomplex& b) {
    TensorResult res;
    for (const auto& [bda, da] : a.dims())
        for (const auto& [bdb, db] : b.dims()) {
            Bidegree bd = bda + bdb;
            auto& list = res.basis[bd];
            for (int i = 0; i < da; ++i)
                for (int j = 0; j < db; ++j) list.push_back({bda, i, bdb, j});
        }
    for (const auto& [bd, list] : res.basis)
        res.bc.set_dim(bd, static_cast<int>(list.size()));

    auto build = [&](bool bar) {
        for (const auto& [bd, list] : res.basis) {
            Bidegree tgt = bar ? dq(bd) : dp(bd);
            auto tit = res.basis.find(tgt);
            if (tit == res.basis.end()) continue;
            RatMatrix m(static_cast<int>(tit->second.size()), static_cast<int>(list.size()));
            bool nonzero = false;
            for (size_t j = 0; j < list.size(); ++j) {
                const TensorEntry& e = list[j];
                // differential on the first factor
                RatMatrix da = bar ? a.delbar_block(e.bda) : a.del_block(e.bda);
                Bidegree bda2 = bar ? dq(e.bda) : dp(e.bda);
                for (int i2 = 0; i2 < da.rows(); ++i2) {
                    if (da.at(i2, e.ia) == 0) continue;
                    int row = res.index_of(tgt, bda2, i2, e.bdb, e.ib);
                    if (row >= 0) {
                        m.at(row, static_cast<int>(j)) += da.at(i2, e.ia);
                        nonzero = true;
                    }
                }
                // Koszul sign on the second factor
                Rational sign = (e.bda.total() % 2 == 0) ? 1 : -1;
                RatMatrix db = bar ? b.delbar_block(e.bdb) : b.del_block(e.bdb);
                Bidegree bdb2 = bar ? dq(e.bdb) : dp(e.bdb);
                for (int j2 = 0; j2 < db.rows(); ++j2) {
                    if (db.at(j2, e.ib) == 0) continue;
                    int row = res.index_of(tgt, e.bda, e.ia, bdb2, j2);
                    if (row >= 0) {
                        m.at(row, static_cast<int>(j)) += sign * db.at(j2, e.ib);
                        nonzero = true;
                    }
                }
            }
            if (nonzero) {
                if (bar)
                    res.bc.set_delbar(bd, std::move(m));
                else
                    res.bc.set_del(bd, std::move(m));
            }
        }
    };
    build(false);
    build(true);
    res.bc.normalize();
    return res;
}

TensorResult shift(const Bicomplex& b, int direction) {
    if (direction == 1) return tensor(Bicomplex::shape_lower(), b);
    if (direction == -1) return tensor(Bicomplex::shape_upper(), b);
    throw std::invalid_argument("shift direction must be +1 or -1");
}

}  // namespace bct
