#include "bct/subspace.hpp"

#include <stdexcept>

namespace bct {

Subspace Subspace::span(int ambient, const RatMatrix& cols) {
    if (cols.rows() != ambient) throw std::invalid_argument("span: ambient mismatch");
    // Reduced column echelon form = transpose of the RREF of the transpose.
    RrefResult r = rref(cols.transpose());
    RatMatrix b(ambient, r.rank);
    for (int k = 0; k < r.rank; ++k)
        for (int j = 0; j < ambient; ++j) b.at(j, k) = r.mat.at(k, j);
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = std::move(b);
    return s;
}

bool Subspace::contains(const RatVector& v) const {
    return coords_of(v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) return false;
    for (int j = 0; j < other.dim(); ++j)
        if (!contains(other.basis_.col(j))) return false;
    return true;
}

std::optional<RatVector> Subspace::coords_of(const RatVector& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw std::invalid_argument("coords_of: ambient mismatch");
    return solve_linear(basis_, v);
}

Subspace kernel(const RatMatrix& a) {
    return Subspace::span(a.cols(), kernel_basis(a));
}

Subspace image(const RatMatrix& a) {
    return Subspace::span(a.rows(), a);
}

std::pair<Subspace, Subspace> sum_and_intersection(const Subspace& u, const Subspace& w) {
    if (u.ambient_dim() != w.ambient_dim())
        throw std::invalid_argument("sum_and_intersection: ambient mismatch");
    Subspace s = Subspace::span(u.ambient_dim(), hstack(u.basis(), w.basis()));
    // Pairs (a, b) with Ua = Wb give intersection vectors Ua.
    RatMatrix uw = hstack(u.basis(), -w.basis());
    RatMatrix ker = kernel_basis(uw);
    RatMatrix apart(u.dim(), ker.cols());
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < ker.cols(); ++j) apart.at(i, j) = ker.at(i, j);
    Subspace inter = Subspace::span(u.ambient_dim(), u.basis() * apart);
    return {s, inter};
}

Subspace sum(const Subspace& u, const Subspace& w) { return sum_and_intersection(u, w).first; }

Subspace intersection(const Subspace& u, const Subspace& w) {
    return sum_and_intersection(u, w).second;
}

QuotientPresentation QuotientPresentation::make(const Subspace& numerator,
                                                const Subspace& denominator) {
    if (numerator.ambient_dim() != denominator.ambient_dim())
        throw std::invalid_argument("quotient: ambient mismatch");
    // Denominator basis in numerator coordinates; existence is the containment check.
    auto coords = solve_matrix(numerator.basis(), denominator.basis());
    if (!coords)
        throw std::invalid_argument("quotient: denominator is not contained in numerator");
    const int m = numerator.dim();
    const int d = denominator.dim();

    // Column-echelonize the coordinate matrix; its pivot rows are the
    // numerator coordinates absorbed by the denominator, the complementary
    // rows become quotient coordinates.
    RrefResult r = rref(coords->transpose());
    RatMatrix c(m, d);  // echelonized denominator coordinates
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < m; ++i) c.at(i, k) = r.mat.at(k, i);
    if (r.rank != d) throw std::logic_error("quotient: denominator basis not independent");
    std::vector<int> pivot_row(d);
    std::vector<bool> is_pivot(m, false);
    for (int k = 0; k < d; ++k) {
        int row = -1;
        for (int i = 0; i < m; ++i)
            if (c.at(i, k) != 0) { row = i; break; }
        pivot_row[k] = row;
        is_pivot[row] = true;
    }
    std::vector<int> free_rows;
    for (int i = 0; i < m; ++i)
        if (!is_pivot[i]) free_rows.push_back(i);
    const int q = static_cast<int>(free_rows.size());

    // P x = (x - sum_k x[pivot_k] * c_k) restricted to free rows.
    RatMatrix proj(q, m);
    for (int t = 0; t < q; ++t) {
        proj.at(t, free_rows[t]) = 1;
        for (int k = 0; k < d; ++k) proj.at(t, pivot_row[k]) -= c.at(free_rows[t], k);
    }
    RatMatrix sect(m, q);
    for (int t = 0; t < q; ++t) sect.at(free_rows[t], t) = 1;

    QuotientPresentation pres;
    pres.num_ = numerator;
    pres.den_ = denominator;
    pres.proj_ = std::move(proj);
    pres.sect_ = std::move(sect);
    return pres;
}

RatVector QuotientPresentation::project_ambient(const RatVector& v) const {
    auto coords = num_.coords_of(v);
    if (!coords) throw std::invalid_argument("project_ambient: vector not in numerator");
    return mat_vec(proj_, *coords);
}

RatVector QuotientPresentation::representative(int j) const {
    return mat_vec(num_.basis(), sect_.col(j));
}

}  // namespace bct
