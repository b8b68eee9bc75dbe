#pragma once

#include <optional>
#include <vector>

#include "bct/rational.hpp"

namespace bct {

using RatVector = std::vector<Rational>;

// Dense matrix of rationals, row-major. All arithmetic is exact; there is no
// tolerance anywhere (pivot tests are == 0).
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    RatMatrix transpose() const;

    RatVector col(int j) const {
        RatVector v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }
    void set_col(int j, const RatVector& v) {
        for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a);
RatMatrix operator*(const Rational& c, const RatMatrix& a);

RatVector mat_vec(const RatMatrix& a, const RatVector& v);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator*(const Rational& c, const RatVector& v);
bool is_zero_vec(const RatVector& v);

// Columns of a next to columns of b.
RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
// Rows of a above rows of b.
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix from_cols(int rows, const std::vector<RatVector>& cols);

struct RrefResult {
    RatMatrix mat;
    std::vector<int> pivot_cols;  // ascending
    int rank = 0;
};

// Reduced row echelon form. Pivot rule: columns left to right, first row
// with a nonzero entry.
RrefResult rref(const RatMatrix& a);

int rank(const RatMatrix& a);

// Columns span the nullspace {v : Av = 0}. Not canonicalized.
RatMatrix kernel_basis(const RatMatrix& a);

// Some solution of Ax = b, or nullopt when inconsistent. Exact decision.
std::optional<RatVector> solve_linear(const RatMatrix& a, const RatVector& b);

// X with AX = B, or nullopt.
std::optional<RatMatrix> solve_matrix(const RatMatrix& a, const RatMatrix& b);

std::optional<RatMatrix> inverse(const RatMatrix& a);

}  // namespace bct
