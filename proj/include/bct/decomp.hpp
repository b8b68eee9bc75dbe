#pragma once

#include "bct/zigzag.hpp"

namespace bct {

// One indecomposable summand of a decomposition, together with the ambient
// vectors realizing it (one vector per occupied bidegree, spanning the
// summand inside the input bicomplex).
struct Summand {
    bool is_square = false;
    Bidegree anchor;         // square anchor; unused for zig-zags
    ZigZagDescriptor desc;   // zig-zag descriptor; unused for squares
    std::map<Bidegree, RatVector> vectors;

    Bicomplex local() const;
};

// Result of the structure decomposition. Summands are kept in canonical
// order (squares sorted by anchor, then zig-zags sorted by descriptor), so
// the assembled model and the basis change are deterministic.
struct Decomposition {
    std::vector<Summand> summands;

    std::map<Bidegree, int> square_counts() const;
    std::map<ZigZagDescriptor, int> zigzag_counts() const;
    Bicomplex model() const;
    // Per-bidegree invertible matrix whose columns list the summand vectors
    // in model order; conjugating the input by it gives the model exactly.
    std::map<Bidegree, RatMatrix> basis_change(const Bicomplex& input) const;
    bool verify(const Bicomplex& input, std::string* why = nullptr) const;

    void sort_canonical();
};

struct SquareSplit {
    std::vector<Summand> squares;
    Bicomplex minimal_part;  // ∂∂̄ = 0
    // Columns embed minimal_part coordinates into the input at each bidegree.
    std::map<Bidegree, RatMatrix> embedding;
};

// Peels squares off by the effective contraction argument: per bidegree in
// lexicographic order, echelon pivots of the ∂∂̄ block generate squares which
// split against an explicitly constructed complement subcomplex.
SquareSplit split_squares(const Bicomplex& b);

// String-module decomposition of a minimal bicomplex. Throws
// std::invalid_argument when the input is not minimal.
Decomposition zigzag_decompose(const Bicomplex& minimal);

// split_squares followed by zigzag_decompose on the minimal part.
Decomposition full_decompose(const Bicomplex& b);

// Per-bidegree cohomology dimensions the decomposition predicts from the
// known zig-zag signatures (squares contribute nothing). Reconciling these
// against the computed tables is the independent correctness oracle.
std::map<Bidegree, int> predicted_coh_dims(const Decomposition& d, CohKind kind);

// Predicted tables match the computed cohomology of `input` for all seven
// kinds at every bidegree.
bool reconcile_with_cohomology(const Decomposition& d, const Bicomplex& input,
                               std::string* why = nullptr);

}  // namespace bct
