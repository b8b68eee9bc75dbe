#include "bct/matrix.hpp"

#include <stdexcept>

namespace bct {

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rational& x = a.at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const Rational& y = b.at(k, j);
                if (y != 0) c.at(i, j) += x * y;
            }
        }
    return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum shape mismatch");
    RatMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference shape mismatch");
    RatMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

RatMatrix operator-(const RatMatrix& a) {
    RatMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = -a.at(i, j);
    return c;
}

RatMatrix operator*(const Rational& c, const RatMatrix& a) {
    RatMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = c * a.at(i, j);
    return r;
}

RatVector mat_vec(const RatMatrix& a, const RatVector& v) {
    if (a.cols() != static_cast<int>(v.size()))
        throw std::invalid_argument("matrix-vector shape mismatch");
    RatVector r(a.rows());
    for (int j = 0; j < a.cols(); ++j) {
        if (v[j] == 0) continue;
        for (int i = 0; i < a.rows(); ++i)
            if (a.at(i, j) != 0) r[i] += a.at(i, j) * v[j];
    }
    return r;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
    RatVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
    RatVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVector operator*(const Rational& c, const RatVector& v) {
    RatVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool is_zero_vec(const RatVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    RatMatrix c(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack col mismatch");
    RatMatrix c(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) c.at(a.rows() + i, j) = b.at(i, j);
    return c;
}

RatMatrix from_cols(int rows, const std::vector<RatVector>& cols) {
    RatMatrix m(rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) m.set_col(static_cast<int>(j), cols[j]);
    return m;
}

RrefResult rref(const RatMatrix& a) {
    RrefResult res;
    res.mat = a;
    RatMatrix& m = res.mat;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rational f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

int rank(const RatMatrix& a) { return rref(a).rank; }

RatMatrix kernel_basis(const RatMatrix& a) {
    RrefResult r = rref(a);
    std::vector<int> is_pivot(a.cols(), -1);
    for (size_t k = 0; k < r.pivot_cols.size(); ++k) is_pivot[r.pivot_cols[k]] = static_cast<int>(k);
    std::vector<RatVector> cols;
    for (int j = 0; j < a.cols(); ++j) {
        if (is_pivot[j] >= 0) continue;
        RatVector v(a.cols());
        v[j] = 1;
        for (size_t k = 0; k < r.pivot_cols.size(); ++k)
            v[r.pivot_cols[k]] = -r.mat.at(static_cast<int>(k), j);
        cols.push_back(std::move(v));
    }
    return from_cols(a.cols(), cols);
}

std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b) {
    if (a.rows() != static_cast<int>(b.size()))
        throw std::invalid_argument("solve_linear shape mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult r = rref(aug);
    // Inconsistent iff some pivot lands in the augmented column.
    for (int c : r.pivot_cols)
        if (c == a.cols()) return std::nullopt;
    RatVector x(a.cols());
    for (size_t k = 0; k < r.pivot_cols.size(); ++k)
        x[r.pivot_cols[k]] = r.mat.at(static_cast<int>(k), a.cols());
    return x;
}

std::optional<RatMatrix> solve_matrix(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_matrix shape mismatch");
    RatMatrix aug = hstack(a, b);
    RrefResult r = rref(aug);
    for (int c : r.pivot_cols)
        if (c >= a.cols()) return std::nullopt;
    RatMatrix x(a.cols(), b.cols());
    for (size_t k = 0; k < r.pivot_cols.size(); ++k)
        for (int j = 0; j < b.cols(); ++j)
            x.at(r.pivot_cols[k], j) = r.mat.at(static_cast<int>(k), a.cols() + j);
    return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    return solve_matrix(a, RatMatrix::identity(a.rows()));
}

}  // namespace bct
