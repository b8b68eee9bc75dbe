#include "bct/cbba.hpp"

#include <algorithm>
#include <stdexcept>

namespace bct {

void AlgebraElement::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, -c);
    return r;
}

AlgebraElement operator*(const Rational& c, const AlgebraElement& a) {
    AlgebraElement r;
    if (c == 0) return r;
    for (const auto& [m, k] : a.terms) r.terms.emplace(m, c * k);
    return r;
}

TruncatedCbba::TruncatedCbba(std::vector<Generator> gens, int truncation)
    : gens_(std::move(gens)), trunc_(truncation) {
    for (const auto& g : gens_) {
        if (g.bd.p < 0 || g.bd.q < 0)
            throw std::invalid_argument("generator " + g.name + " outside the first quadrant");
        if (g.bd.total() < 1)
            throw std::invalid_argument("generator " + g.name + " has total degree < 1");
        if (g.bd.total() > trunc_)
            throw std::invalid_argument("generator " + g.name + " above the truncation degree");
    }
    std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
        if (a.bd.total() != b.bd.total()) return a.bd.total() < b.bd.total();
        if (a.bd.p != b.bd.p) return a.bd.p < b.bd.p;
        return a.name < b.name;
    });
    for (size_t i = 0; i + 1 < gens_.size(); ++i)
        if (gens_[i].name == gens_[i + 1].name)
            throw std::invalid_argument("duplicate generator name " + gens_[i].name);
    dgen_.assign(gens_.size(), AlgebraElement{});
    dbargen_.assign(gens_.size(), AlgebraElement{});
    enumerate_basis();
}

void TruncatedCbba::enumerate_basis() {
    Monomial m(gens_.size(), 0);
    // depth-first over exponents, pruning by total degree
    auto rec = [&](auto&& self, size_t i, int total) -> void {
        if (i == gens_.size()) {
            basis_[mono_bidegree(m)].push_back(m);
            return;
        }
        int deg = gens_[i].bd.total();
        bool odd = deg % 2 == 1;
        int emax = odd ? 1 : (deg > 0 ? (trunc_ - total) / deg : 0);
        for (int e = 0; e <= emax && total + e * deg <= trunc_; ++e) {
            m[i] = e;
            self(self, i + 1, total + e * deg);
        }
        m[i] = 0;
    };
    rec(rec, 0, 0);
    for (auto& [bd, list] : basis_) {
        std::sort(list.begin(), list.end());
        for (size_t k = 0; k < list.size(); ++k) index_[bd].emplace(list[k], static_cast<int>(k));
    }
}

int TruncatedCbba::gen_index(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return -1;
}

void TruncatedCbba::set_del_gen(int gen, AlgebraElement v) { dgen_[gen] = std::move(v); }
void TruncatedCbba::set_delbar_gen(int gen, AlgebraElement v) { dbargen_[gen] = std::move(v); }

Bidegree TruncatedCbba::mono_bidegree(const Monomial& m) const {
    Bidegree bd{0, 0};
    for (size_t i = 0; i < m.size(); ++i) {
        bd.p += m[i] * gens_[i].bd.p;
        bd.q += m[i] * gens_[i].bd.q;
    }
    return bd;
}

int TruncatedCbba::word_length(const Monomial& m) const {
    int l = 0;
    for (int e : m) l += e;
    return l;
}

AlgebraElement TruncatedCbba::one() const {
    AlgebraElement e;
    e.terms.emplace(Monomial(gens_.size(), 0), Rational(1));
    return e;
}

AlgebraElement TruncatedCbba::gen_elem(int gen) const {
    AlgebraElement e;
    Monomial m(gens_.size(), 0);
    m[gen] = 1;
    e.terms.emplace(std::move(m), Rational(1));
    return e;
}

void TruncatedCbba::mono_mul(const Monomial& a, const Monomial& b, AlgebraElement& out,
                             const Rational& coeff) const {
    int total = 0;
    for (size_t i = 0; i < a.size(); ++i) total += (a[i] + b[i]) * gens_[i].bd.total();
    if (total > trunc_) return;  // truncated to zero
    int sign = 0;
    // move each factor of b left past the later factors of a
    for (size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        int di = gens_[i].bd.total();
        if (di % 2 == 1 && a[i] + b[i] > 1) return;  // odd square
        int pass = 0;
        for (size_t j = i + 1; j < a.size(); ++j) pass += a[j] * gens_[j].bd.total();
        sign += b[i] * di * pass;
    }
    Monomial m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
    out.add_term(m, (sign % 2 == 0) ? coeff : -coeff);
}

AlgebraElement TruncatedCbba::mul(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) mono_mul(ma, mb, out, ca * cb);
    return out;
}

namespace {

// Derivation extension: d(m) = Σ_k e_k (−1)^{pre_k} (m − g_k) · d(g_k) with the
// extra (−1)^{(|g_k|+1)·suf_k} from commuting d(g_k) to the right.
AlgebraElement apply_derivation(const TruncatedCbba& alg, const AlgebraElement& a,
                                const std::vector<AlgebraElement>& dg) {
    AlgebraElement out;
    const auto& gens = alg.generators();
    for (const auto& [m, c] : a.terms) {
        for (size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0 || dg[k].is_zero()) continue;
            int pre = 0, suf = 0;
            for (size_t j = 0; j < k; ++j) pre += m[j] * gens[j].bd.total();
            for (size_t j = k + 1; j < m.size(); ++j) suf += m[j] * gens[j].bd.total();
            int dk = gens[k].bd.total();
            int sign = pre + (dk + 1) * suf;
            Rational coeff = Rational(m[k]) * c;
            if (sign % 2 == 1) coeff = -coeff;
            Monomial reduced = m;
            reduced[k] -= 1;
            AlgebraElement base;
            base.terms.emplace(std::move(reduced), coeff);
            out = out + alg.mul(base, dg[k]);
        }
    }
    return out;
}

}  // namespace

AlgebraElement TruncatedCbba::del(const AlgebraElement& a) const {
    return apply_derivation(*this, a, dgen_);
}

AlgebraElement TruncatedCbba::delbar(const AlgebraElement& a) const {
    return apply_derivation(*this, a, dbargen_);
}

const std::vector<Monomial>& TruncatedCbba::basis(Bidegree bd) const {
    auto it = basis_.find(bd);
    return it == basis_.end() ? empty_ : it->second;
}

int TruncatedCbba::dim(Bidegree bd) const { return static_cast<int>(basis(bd).size()); }

std::map<Bidegree, int> TruncatedCbba::dims() const {
    std::map<Bidegree, int> d;
    for (const auto& [bd, list] : basis_)
        if (!list.empty()) d[bd] = static_cast<int>(list.size());
    return d;
}

int TruncatedCbba::index_of(const Monomial& m) const {
    auto it = index_.find(mono_bidegree(m));
    if (it == index_.end()) return -1;
    auto jt = it->second.find(m);
    return jt == it->second.end() ? -1 : jt->second;
}

Diagnostics TruncatedCbba::validate() const {
    Diagnostics diag;
    for (size_t i = 0; i < gens_.size(); ++i) {
        Bidegree want_d = dp(gens_[i].bd), want_db = dq(gens_[i].bd);
        for (const auto& [m, c] : dgen_[i].terms)
            if (mono_bidegree(m) != want_d)
                diag.add("del(" + gens_[i].name + ") is not homogeneous of bidegree " +
                         want_d.str());
        for (const auto& [m, c] : dbargen_[i].terms)
            if (mono_bidegree(m) != want_db)
                diag.add("delbar(" + gens_[i].name + ") is not homogeneous of bidegree " +
                         want_db.str());
    }
    if (!diag.ok()) return diag;
    for (const auto& [bd, list] : basis_) {
        if (bd.total() > trunc_ - 2) continue;
        for (const auto& m : list) {
            AlgebraElement e;
            e.terms.emplace(m, Rational(1));
            if (!del(del(e)).is_zero()) diag.add("del^2 != 0 on " + mono_str(m));
            if (!delbar(delbar(e)).is_zero()) diag.add("delbar^2 != 0 on " + mono_str(m));
            if (!(del(delbar(e)) + delbar(del(e))).is_zero())
                diag.add("anticommutation fails on " + mono_str(m));
        }
    }
    return diag;
}

Bicomplex TruncatedCbba::to_bicomplex() const {
    Bicomplex b;
    for (const auto& [bd, list] : basis_)
        if (!list.empty()) b.set_dim(bd, static_cast<int>(list.size()));
    for (const auto& [bd, list] : basis_) {
        if (list.empty()) continue;
        auto fill = [&](bool bar) {
            Bidegree tgt = bar ? dq(bd) : dp(bd);
            int td = dim(tgt);
            if (td == 0) return;
            RatMatrix m(td, static_cast<int>(list.size()));
            bool nz = false;
            for (size_t j = 0; j < list.size(); ++j) {
                AlgebraElement e;
                e.terms.emplace(list[j], Rational(1));
                AlgebraElement de = bar ? delbar(e) : del(e);
                for (const auto& [mono, c] : de.terms) {
                    int i = index_of(mono);
                    if (i < 0) throw std::logic_error("differential leaves the basis");
                    m.at(i, static_cast<int>(j)) = c;
                    nz = true;
                }
            }
            if (!nz) return;
            if (bar)
                b.set_delbar(bd, std::move(m));
            else
                b.set_del(bd, std::move(m));
        };
        fill(false);
        fill(true);
    }
    b.normalize();
    return b;
}

std::string TruncatedCbba::mono_str(const Monomial& m) const {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += " ";
        s += gens_[i].name;
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::vector<std::string> TruncatedCbba::unverifiable_identities() const {
    std::vector<std::string> out;
    for (const auto& [bd, list] : basis_) {
        if (bd.total() <= trunc_ - 2) continue;
        for (const auto& m : list)
            out.push_back("d^2(" + mono_str(m) + ") lives above the cutoff");
    }
    return out;
}

bool TruncatedCbba::wedge_degrees_ok() const {
    if (gens_.empty()) return true;
    int kmin = gens_.front().bd.total();
    for (const auto& g : gens_) kmin = std::min(kmin, g.bd.total());
    for (const auto& [bd, list] : basis_)
        for (const auto& m : list)
            if (bd.total() < word_length(m) * kmin) return false;
    return true;
}

bool TruncatedCbba::same_presentation(const TruncatedCbba& o) const {
    if (trunc_ != o.trunc_ || gens_.size() != o.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].bd != o.gens_[i].bd) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (!(dgen_[i] == o.dgen_[i]) || !(dbargen_[i] == o.dbargen_[i])) return false;
    return true;
}

}  // namespace bct
