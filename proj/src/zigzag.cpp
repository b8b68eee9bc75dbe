#include "bct/zigzag.hpp"

#include <stdexcept>

namespace bct {

int ZigZagDescriptor::dot_count() const {
    if (family == ZigZagFamily::A) return 2 * (param < 0 ? -param : param) + 1;
    return 2 * param;
}

std::string ZigZagDescriptor::str() const {
    const char* f = family == ZigZagFamily::A ? "A" : family == ZigZagFamily::B ? "B" : "C";
    return std::string(f) + std::to_string(param) + "@" + anchor.str();
}

ZigZagShape zigzag_shape(ZigZagFamily family, int param) {
    ZigZagShape s;
    if (family == ZigZagFamily::A) {
        if (param == 0) {
            s.sources.push_back({0, 0});
            return s;
        }
        if (param > 0) {
            int n = param;
            for (int i = 0; i < n; ++i) s.sources.push_back({i, -i});
            for (int i = 0; i <= n; ++i) s.sinks.push_back({i, 1 - i});
            for (int i = 0; i < n; ++i) {
                s.arrows.push_back({i, i, true});       // ∂̄ up
                s.arrows.push_back({i, i + 1, false});  // ∂ right
            }
            return s;
        }
        int n = -param;
        for (int i = 0; i <= n; ++i) s.sources.push_back({i, -i});
        for (int i = 0; i < n; ++i) s.sinks.push_back({i + 1, -i});
        for (int i = 0; i < n; ++i) {
            s.arrows.push_back({i, i, false});     // ∂ right
            s.arrows.push_back({i + 1, i, true});  // ∂̄ up
        }
        return s;
    }
    if (param < 1) throw std::invalid_argument("zig-zag parameter must be positive for B/C");
    int n = param;
    if (family == ZigZagFamily::B) {
        for (int i = 0; i < n; ++i) s.sources.push_back({i, -i});
        for (int i = 0; i < n; ++i) s.sinks.push_back({i, 1 - i});
        for (int i = 0; i < n; ++i) s.arrows.push_back({i, i, true});
        for (int i = 0; i + 1 < n; ++i) s.arrows.push_back({i, i + 1, false});
        return s;
    }
    for (int i = 0; i < n; ++i) s.sources.push_back({i, -i});
    for (int i = 0; i < n; ++i) s.sinks.push_back({i + 1, -i});
    for (int i = 0; i < n; ++i) s.arrows.push_back({i, i, false});
    for (int i = 0; i + 1 < n; ++i) s.arrows.push_back({i + 1, i, true});
    return s;
}

Bicomplex make_zigzag(const ZigZagDescriptor& d) {
    ZigZagShape s = zigzag_shape(d.family, d.param);
    Bicomplex b;
    for (const auto& bd : s.sources) b.set_dim(bd + d.anchor, 1);
    for (const auto& bd : s.sinks) b.set_dim(bd + d.anchor, 1);
    RatMatrix one(1, 1);
    one.at(0, 0) = 1;
    for (const auto& arr : s.arrows) {
        Bidegree from = s.sources[arr.src] + d.anchor;
        if (arr.bar)
            b.set_delbar(from, one);
        else
            b.set_del(from, one);
    }
    b.normalize();
    return b;
}

ZigZagDescriptor classify_zigzag(const Bicomplex& z) {
    if (z.is_zero()) throw std::invalid_argument("classify_zigzag: zero bicomplex");
    if (!z.is_minimal()) throw std::invalid_argument("classify_zigzag: input is not minimal");
    int m = z.total_dim();
    int hd = 0, hdb = 0;
    for (const auto& [bd, d] : cohomology_dims(z, CohKind::Dol_del)) hd += d;
    for (const auto& [bd, d] : cohomology_dims(z, CohKind::Dol_delbar)) hdb += d;
    int ha = 0, hbc = 0;
    for (const auto& [bd, d] : cohomology_dims(z, CohKind::A)) ha += d;
    for (const auto& [bd, d] : cohomology_dims(z, CohKind::BC)) hbc += d;

    ZigZagDescriptor desc;
    if (m % 2 == 1) {
        desc.family = ZigZagFamily::A;
        if (m == 1)
            desc.param = 0;
        else if (hbc == ha + 1)
            desc.param = (m - 1) / 2;
        else if (ha == hbc + 1)
            desc.param = -(m - 1) / 2;
        else
            throw std::invalid_argument("classify_zigzag: inconsistent source/sink counts");
        if (hd != 1 || hdb != 1)
            throw std::invalid_argument("classify_zigzag: Dolbeault signature is not (1,1)");
    } else {
        if (hd == 2 && hdb == 0)
            desc.family = ZigZagFamily::B;
        else if (hd == 0 && hdb == 2)
            desc.family = ZigZagFamily::C;
        else
            throw std::invalid_argument("classify_zigzag: Dolbeault signature matches no family");
        desc.param = m / 2;
    }

    // Anchor: lowest total degree, ties by smallest p.
    int lo = z.min_total();
    bool found = false;
    for (const auto& [bd, d] : z.dims()) {
        if (bd.total() != lo) continue;
        if (!found || bd.p < desc.anchor.p) desc.anchor = bd;
        found = true;
    }

    // The support must regenerate exactly, every dot 1-dimensional, and the
    // maps must be nonzero precisely on the pictured arrows.
    Bicomplex model = make_zigzag(desc);
    if (model.dims() != z.dims())
        throw std::invalid_argument("classify_zigzag: support does not match any zig-zag");
    for (const auto& [bd, d] : z.dims()) {
        if (d != 1) throw std::invalid_argument("classify_zigzag: dot dimension exceeds 1");
        bool want_del = !model.del_block(bd).is_zero();
        bool want_delbar = !model.delbar_block(bd).is_zero();
        if (want_del != !z.del_block(bd).is_zero() ||
            want_delbar != !z.delbar_block(bd).is_zero())
            throw std::invalid_argument("classify_zigzag: arrow pattern mismatch at " + bd.str());
    }
    return desc;
}

std::map<Bidegree, int> zigzag_coh_dims(const ZigZagDescriptor& d, CohKind kind) {
    ZigZagShape s = zigzag_shape(d.family, d.param);
    std::map<Bidegree, int> out;
    auto add = [&](Bidegree rel) { out[rel + d.anchor] += 1; };

    bool is_dot = (d.family == ZigZagFamily::A && d.param == 0);
    int ns = static_cast<int>(s.sources.size());

    switch (kind) {
        case CohKind::A:
            // sources (for the dot, the dot itself)
            for (const auto& bd : s.sources) add(bd);
            break;
        case CohKind::BC:
            if (is_dot) add({0, 0});
            for (const auto& bd : s.sinks) add(bd);
            break;
        case CohKind::Dot:
            if (is_dot) add({0, 0});
            break;
        case CohKind::BC_red:
            for (const auto& bd : s.sinks) add(bd);
            break;
        case CohKind::A_red:
            if (!is_dot)
                for (const auto& bd : s.sources) add(bd);
            break;
        case CohKind::Dol_del:
            if (is_dot) {
                add({0, 0});
            } else if (d.family == ZigZagFamily::A) {
                if (d.param > 0)
                    add(s.sinks.front());  // top-left sink
                else
                    add(s.sources.back());  // bottom-right source
            } else if (d.family == ZigZagFamily::B) {
                add(s.sinks.front());
                add(s.sources[ns - 1]);
            }
            break;
        case CohKind::Dol_delbar:
            if (is_dot) {
                add({0, 0});
            } else if (d.family == ZigZagFamily::A) {
                if (d.param > 0)
                    add(s.sinks.back());  // bottom-right sink
                else
                    add(s.sources.front());  // top-left source
            } else if (d.family == ZigZagFamily::C) {
                add(s.sources.front());
                add(s.sinks.back());
            }
            break;
    }
    return out;
}

}  // namespace bct
