#pragma once

#include <compare>
#include <string>

namespace bct {

struct Bidegree {
    int p = 0;
    int q = 0;

    int total() const { return p + q; }
    auto operator<=>(const Bidegree&) const = default;

    Bidegree operator+(const Bidegree& o) const { return {p + o.p, q + o.q}; }
    Bidegree operator-(const Bidegree& o) const { return {p - o.p, q - o.q}; }

    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

inline Bidegree dp(const Bidegree& b) { return {b.p + 1, b.q}; }     // ∂ target
inline Bidegree dq(const Bidegree& b) { return {b.p, b.q + 1}; }     // ∂̄ target
inline Bidegree dpq(const Bidegree& b) { return {b.p + 1, b.q + 1}; }

}  // namespace bct
