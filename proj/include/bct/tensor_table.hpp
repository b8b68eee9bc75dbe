#pragma once

#include "bct/decomp.hpp"

namespace bct {

struct TensorTableEntry {
    ZigZagDescriptor left, right;                 // factors, anchored at (0,0)
    std::map<ZigZagDescriptor, int> got;          // surviving zig-zags with anchors
    std::vector<std::pair<ZigZagFamily, int>> expected;  // family/param multiset
    int squares = 0;
    bool ok = false;
    std::string detail;
};

struct TensorTableReport {
    std::vector<TensorTableEntry> entries;
    bool ok = true;
};

// Checks every pair of zig-zags with parameters in range (A: |n| ≤ max,
// B/C: 1 ≤ n ≤ max) against the tensor equivalences, modulo squares and
// degree shifts:
//   A_i ⊗ A_j ≡ A_{i+j},  A_i ⊗ B_j ≡ B_j,  A_i ⊗ C_j ≡ C_j,
//   B_i ⊗ B_j ≡ 2 B_min(i,j),  C_i ⊗ C_j ≡ 2 C_min(i,j),  B_i ⊗ C_j ≡ 0.
// Anchors are reported and pinned by the Künneth check: the Dolbeault tables
// of the product must equal the convolution of the factors' tables.
TensorTableReport tensor_table(int max_param);

}  // namespace bct
