#pragma once

#include <map>
#include <string>
#include <vector>

#include "bct/bidegree.hpp"
#include "bct/matrix.hpp"

namespace bct {

struct Diagnostics {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    void add(std::string s) { issues.push_back(std::move(s)); }
    std::string str() const;
};

// Finite-support bigraded space over Q with anticommuting differentials
// ∂ of bidegree (1,0) and ∂̄ of bidegree (0,1). A block stores the matrix of
// the differential out of its bidegree; absent blocks are zero. Values are
// immutable after normalize(); all queries are const and thread-safe.
class Bicomplex {
public:
    Bicomplex() = default;

    void set_dim(Bidegree bd, int d);
    void set_del(Bidegree bd, RatMatrix m);
    void set_delbar(Bidegree bd, RatMatrix m);
    // Drops zero-dimensional entries and zero blocks; call after building.
    void normalize();

    int dim(Bidegree bd) const;
    const std::map<Bidegree, int>& dims() const { return dims_; }
    int total_dim() const;

    // Zero matrices of the correct shape when the block is absent.
    RatMatrix del_block(Bidegree bd) const;
    RatMatrix delbar_block(Bidegree bd) const;
    // ∂∘∂̄ out of bd (the map into bidegree (p+1,q+1)).
    RatMatrix deldelbar_block(Bidegree bd) const;

    bool is_zero() const { return dims_.empty(); }
    int min_total() const;  // 0 on the zero bicomplex
    int max_total() const;

    // ∂∂̄ = 0 blockwise.
    bool is_minimal() const;

    // Shape checks, ∂² = 0, ∂̄² = 0, ∂∂̄ + ∂̄∂ = 0, reported per block.
    Diagnostics validate() const;
    bool is_valid() const { return validate().ok(); }

    bool operator==(const Bicomplex& o) const;

    static Bicomplex zero() { return {}; }
    static Bicomplex dot(Bidegree bd);
    // Free square on a generator x at `anchor`: basis (x, ∂x, ∂̄x, ∂∂̄x) with
    // ∂̄(∂x) = −∂∂̄x.
    static Bicomplex square_at(Bidegree anchor);
    // 3-dot corner shapes used by the shift operators: shape_lower has its
    // corner (the generator) at (−1,−1), shape_upper has its corner (the
    // target of both arrows) at (1,1).
    static Bicomplex shape_lower();
    static Bicomplex shape_upper();

private:
    std::map<Bidegree, int> dims_;
    std::map<Bidegree, RatMatrix> del_, delbar_;
};

Bicomplex direct_sum(const Bicomplex& a, const Bicomplex& b);

struct TensorEntry {
    Bidegree bda;
    int ia;
    Bidegree bdb;
    int ib;
};

struct TensorResult {
    Bicomplex bc;
    // Basis of each tensor bidegree, aligned with coordinate order.
    std::map<Bidegree, std::vector<TensorEntry>> basis;
    int index_of(Bidegree bd, Bidegree bda, int ia, Bidegree bdb, int ib) const;
};

// Koszul convention: ∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b with |a| the total degree.
TensorResult tensor(const Bicomplex& a, const Bicomplex& b);

// V[1] = shape_lower ⊗ V, V[−1] = shape_upper ⊗ V.
TensorResult shift(const Bicomplex& b, int direction);

}  // namespace bct
