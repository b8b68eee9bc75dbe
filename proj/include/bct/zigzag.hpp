#pragma once

#include "bct/cohomology.hpp"

namespace bct {

// The three zig-zag families. A_n is balanced (n may be any integer, A_0 is
// the dot), B_n has vertical ends, C_n horizontal ends (n ≥ 1). Dots come in
// sources (arrows out) and sinks (arrows in); sources sit one total degree
// below sinks. The anchor is the source of smallest p (for A_0 the dot).
enum class ZigZagFamily { A, B, C };

struct ZigZagDescriptor {
    ZigZagFamily family = ZigZagFamily::A;
    int param = 0;
    Bidegree anchor;

    int dot_count() const;
    auto operator<=>(const ZigZagDescriptor&) const = default;
    std::string str() const;
};

// Dot positions relative to (0,0); add the anchor to place the shape.
struct ZigZagShape {
    std::vector<Bidegree> sources;
    std::vector<Bidegree> sinks;
    // Arrows as (source index, sink index, is_delbar).
    struct Arrow {
        int src;
        int snk;
        bool bar;
    };
    std::vector<Arrow> arrows;
};

ZigZagShape zigzag_shape(ZigZagFamily family, int param);

// The pictured shape with all structure maps equal to 1.
Bicomplex make_zigzag(const ZigZagDescriptor& d);

// Family from the Dolbeault signature (A: (1,1), B: (2,0), C: (0,2)),
// parameter from the dot count, anchor from the support. Throws
// std::invalid_argument when z is not an indecomposable zig-zag.
ZigZagDescriptor classify_zigzag(const Bicomplex& z);

// Per-bidegree cohomology dimensions of a zig-zag, computed combinatorially
// from the shape (never through the cohomology machinery); this is the
// independent signature table used to reconcile decompositions.
std::map<Bidegree, int> zigzag_coh_dims(const ZigZagDescriptor& d, CohKind kind);

}  // namespace bct
