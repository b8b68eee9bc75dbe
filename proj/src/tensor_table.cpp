#include "bct/tensor_table.hpp"

#include <algorithm>

namespace bct {

namespace {

std::vector<std::pair<ZigZagFamily, int>> expected_multiset(const ZigZagDescriptor& a,
                                                            const ZigZagDescriptor& b) {
    using F = ZigZagFamily;
    auto fam = [](const ZigZagDescriptor& d) { return d.family; };
    if (fam(a) == F::A && fam(b) == F::A) return {{F::A, a.param + b.param}};
    if (fam(a) == F::A) return {{fam(b), b.param}};
    if (fam(b) == F::A) return {{fam(a), a.param}};
    if (fam(a) == F::B && fam(b) == F::B) {
        int m = std::min(a.param, b.param);
        return {{F::B, m}, {F::B, m}};
    }
    if (fam(a) == F::C && fam(b) == F::C) {
        int m = std::min(a.param, b.param);
        return {{F::C, m}, {F::C, m}};
    }
    return {};  // B ⊗ C ≡ 0
}

std::map<Bidegree, int> convolve(const std::map<Bidegree, int>& x,
                                 const std::map<Bidegree, int>& y) {
    std::map<Bidegree, int> out;
    for (const auto& [b1, d1] : x)
        for (const auto& [b2, d2] : y) out[b1 + b2] += d1 * d2;
    return out;
}

}  // namespace

TensorTableReport tensor_table(int max_param) {
    std::vector<ZigZagDescriptor> shapes;
    for (int n = -max_param; n <= max_param; ++n)
        shapes.push_back({ZigZagFamily::A, n, {0, 0}});
    for (int n = 1; n <= max_param; ++n) shapes.push_back({ZigZagFamily::B, n, {0, 0}});
    for (int n = 1; n <= max_param; ++n) shapes.push_back({ZigZagFamily::C, n, {0, 0}});

    TensorTableReport rep;
    for (const auto& left : shapes)
        for (const auto& right : shapes) {
            TensorTableEntry e;
            e.left = left;
            e.right = right;
            e.expected = expected_multiset(left, right);
            std::sort(e.expected.begin(), e.expected.end());

            Bicomplex lz = make_zigzag(left), rz = make_zigzag(right);
            TensorResult prod = tensor(lz, rz);
            Decomposition dec = full_decompose(prod.bc);

            std::vector<std::pair<ZigZagFamily, int>> got_fp;
            for (const auto& [desc, count] : dec.zigzag_counts()) {
                e.got[desc] = count;
                for (int i = 0; i < count; ++i) got_fp.push_back({desc.family, desc.param});
            }
            for (const auto& [bd, count] : dec.square_counts()) e.squares += count;
            std::sort(got_fp.begin(), got_fp.end());

            e.ok = (got_fp == e.expected);
            if (!e.ok) e.detail = "zig-zag multiset differs from the tensor theorem";

            // Künneth pin: Dolbeault tables of the product are the
            // convolutions of the factors' tables.
            if (e.ok) {
                for (CohKind kind : {CohKind::Dol_del, CohKind::Dol_delbar}) {
                    auto want = convolve(cohomology_dims(lz, kind), cohomology_dims(rz, kind));
                    auto have = cohomology_dims(prod.bc, kind);
                    if (want != have) {
                        e.ok = false;
                        e.detail = "Kunneth mismatch for " + coh_kind_name(kind);
                        break;
                    }
                }
            }
            // Reconciliation of the decomposition against cohomology.
            if (e.ok) {
                std::string why;
                if (!reconcile_with_cohomology(dec, prod.bc, &why)) {
                    e.ok = false;
                    e.detail = why;
                }
            }
            if (!e.ok) rep.ok = false;
            rep.entries.push_back(std::move(e));
        }
    return rep;
}

}  // namespace bct
