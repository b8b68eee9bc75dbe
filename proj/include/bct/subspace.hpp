#pragma once

#include <utility>

#include "bct/matrix.hpp"

namespace bct {

// Linear subspace of Q^n. The basis is held in reduced column echelon form,
// which is a canonical representative: two Subspace values are equal as sets
// iff they are structurally equal.
class Subspace {
public:
    Subspace() : ambient_(0) {}

    // Canonicalizes the column span of `cols`.
    static Subspace span(int ambient, const RatMatrix& cols);
    static Subspace full(int n) { return span(n, RatMatrix::identity(n)); }
    static Subspace zero_sub(int n) { return span(n, RatMatrix(n, 0)); }

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const RatMatrix& basis() const { return basis_; }

    bool contains(const RatVector& v) const;
    bool contains(const Subspace& other) const;

    // Coordinates of v in the basis, if v lies in the subspace.
    std::optional<RatVector> coords_of(const RatVector& v) const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    int ambient_;
    RatMatrix basis_;
};

// {v : Av = 0} inside Q^cols.
Subspace kernel(const RatMatrix& a);
// Column span of A inside Q^rows.
Subspace image(const RatMatrix& a);

// (U + W, U ∩ W). Throws on ambient mismatch.
std::pair<Subspace, Subspace> sum_and_intersection(const Subspace& u, const Subspace& w);

Subspace sum(const Subspace& u, const Subspace& w);
Subspace intersection(const Subspace& u, const Subspace& w);

// Presentation of numerator/denominator. projection maps numerator
// coordinates onto quotient coordinates, section picks representatives;
// projection∘section = id and projection kills the denominator.
class QuotientPresentation {
public:
    QuotientPresentation() = default;

    // Throws std::invalid_argument unless denominator ⊆ numerator.
    static QuotientPresentation make(const Subspace& numerator, const Subspace& denominator);

    int dim() const { return proj_.rows(); }
    const Subspace& numerator() const { return num_; }
    const Subspace& denominator() const { return den_; }
    const RatMatrix& projection() const { return proj_; }
    const RatMatrix& section() const { return sect_; }

    // Quotient coordinates of an ambient vector (must lie in the numerator).
    RatVector project_ambient(const RatVector& v) const;
    // Ambient representative of the j-th quotient basis vector.
    RatVector representative(int j) const;

private:
    Subspace num_, den_;
    RatMatrix proj_, sect_;
};

inline QuotientPresentation quotient_present(const Subspace& num, const Subspace& den) {
    return QuotientPresentation::make(num, den);
}

}  // namespace bct
