#pragma once

#include <string>
#include <vector>

#include "bct/bicomplex.hpp"

namespace bct {

struct Generator {
    std::string name;
    Bidegree bd;  // first quadrant, total degree ≥ 1
};

// Exponent vector over the algebra's (sorted) generator list.
using Monomial = std::vector<int>;

// Sparse rational combination of canonical monomials.
struct AlgebraElement {
    std::map<Monomial, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const Monomial& m, const Rational& c);
    bool operator==(const AlgebraElement& o) const { return terms == o.terms; }
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const Rational& c, const AlgebraElement& a);

// Free graded-commutative bigraded algebra on named generators, truncated at
// total degree N: products landing above N are dropped. Sign rule is by total
// degree, (−1)^{|a||b|}; odd generators square to zero. The monomial basis is
// enumerated per bidegree; monomials are kept in the canonical generator
// order (generators sorted by (total degree, p, name)).
class TruncatedCbba {
public:
    TruncatedCbba() = default;
    // Zero differentials; use set_del_gen/set_delbar_gen + validate().
    TruncatedCbba(std::vector<Generator> gens, int truncation);

    int truncation() const { return trunc_; }
    const std::vector<Generator>& generators() const { return gens_; }
    int gen_index(const std::string& name) const;  // -1 when absent

    void set_del_gen(int gen, AlgebraElement v);
    void set_delbar_gen(int gen, AlgebraElement v);
    const AlgebraElement& del_gen(int gen) const { return dgen_[gen]; }
    const AlgebraElement& delbar_gen(int gen) const { return dbargen_[gen]; }

    // Sign/degree consistency of the generator differentials plus
    // ∂² = ∂̄² = ∂∂̄+∂̄∂ = 0 on every monomial of total degree ≤ N−2 (beyond
    // that both sides are truncated and the identity is unverifiable).
    Diagnostics validate() const;

    Bidegree mono_bidegree(const Monomial& m) const;
    int mono_total(const Monomial& m) const { return mono_bidegree(m).total(); }
    int word_length(const Monomial& m) const;

    AlgebraElement one() const;
    AlgebraElement gen_elem(int gen) const;

    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
    AlgebraElement del(const AlgebraElement& a) const;
    AlgebraElement delbar(const AlgebraElement& a) const;

    const std::vector<Monomial>& basis(Bidegree bd) const;
    int dim(Bidegree bd) const;
    std::map<Bidegree, int> dims() const;
    // Index of a monomial within its bidegree's basis; -1 when truncated away.
    int index_of(const Monomial& m) const;

    // Underlying truncated bicomplex (differentials out of total degree N are
    // truncated to zero).
    Bicomplex to_bicomplex() const;

    // Monomials whose d²-identities live above the cutoff.
    std::vector<std::string> unverifiable_identities() const;
    std::string mono_str(const Monomial& m) const;

    // Word-length degree bound: every length-n monomial has total degree at
    // least n times the smallest generator degree.
    bool wedge_degrees_ok() const;

    bool same_presentation(const TruncatedCbba& o) const;

private:
    std::vector<Generator> gens_;
    int trunc_ = 0;
    std::vector<AlgebraElement> dgen_, dbargen_;
    std::map<Bidegree, std::vector<Monomial>> basis_;
    std::map<Bidegree, std::map<Monomial, int>> index_;
    std::vector<Monomial> empty_;

    void enumerate_basis();
    // signed product of two monomials (zero on odd square or truncation)
    void mono_mul(const Monomial& a, const Monomial& b, AlgebraElement& out,
                  const Rational& coeff) const;
};

}  // namespace bct
