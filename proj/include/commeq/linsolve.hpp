#pragma once

#include <optional>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/matrix.hpp"

namespace commeq {

// Reduced row echelon form computed in place with exact arithmetic.
// Pivot choice is the first nonzero entry in column order, so the result
// (and every basis derived from it) is deterministic.
struct Rref {
    Matrix m;
    std::vector<int> pivot_cols;  // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

inline Rref rref(Matrix a) {
    int rows = a.rows(), cols = a.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (!a.at(i, c).is_zero()) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        if (p != r)
            for (int j = c; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
        Scalar inv = a.at(r, c).inverse();
        for (int j = c; j < cols; ++j) a.at(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Scalar f = a.at(i, c);
            for (int j = c; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return Rref{std::move(a), std::move(pivots)};
}

inline int rank(const Matrix& a) { return rref(a).rank(); }

// Canonical kernel basis from the RREF: one vector per free column, with
// a 1 in the free coordinate and pivot coordinates back-filled. Free
// columns are visited in ascending order.
inline std::vector<std::vector<Scalar>> kernel_basis(const Matrix& a) {
    Rref r = rref(a);
    int cols = a.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : r.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Scalar> v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(f)] = Scalar(1);
        for (int row = 0; row < r.rank(); ++row) {
            int pc = r.pivot_cols[static_cast<std::size_t>(row)];
            v[static_cast<std::size_t>(pc)] = -r.m.at(row, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

struct LinearSolution {
    bool consistent = false;
    std::vector<Scalar> particular;            // one solution, free vars = 0
    std::vector<std::vector<Scalar>> kernel;   // canonical nullspace basis
    std::vector<int> free_cols;                // marker coordinate of each kernel vector
};

// Solve A x = b exactly; A may be rectangular.
inline LinearSolution linear_solve(const Matrix& a, const std::vector<Scalar>& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw DimensionMismatch("right-hand side length mismatch");
    int rows = a.rows(), cols = a.cols();
    Matrix aug(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, cols) = b[static_cast<std::size_t>(i)];
    }
    Rref r = rref(std::move(aug));
    LinearSolution sol;
    for (int c : r.pivot_cols)
        if (c == cols) return sol;  // pivot in the RHS column: inconsistent
    sol.consistent = true;
    sol.particular.assign(static_cast<std::size_t>(cols), Scalar());
    for (int row = 0; row < r.rank(); ++row) {
        int pc = r.pivot_cols[static_cast<std::size_t>(row)];
        sol.particular[static_cast<std::size_t>(pc)] = r.m.at(row, cols);
    }
    sol.kernel = kernel_basis(a);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : r.pivot_cols)
        if (c < cols) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) sol.free_cols.push_back(c);
    return sol;
}

inline Matrix inverse(const Matrix& a) {
    int n = a.n();
    Matrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = Scalar(1);
    }
    Rref r = rref(std::move(aug));
    if (r.rank() != n || r.pivot_cols[static_cast<std::size_t>(n - 1)] != n - 1)
        throw SingularError("matrix is singular");
    return r.m.block(0, n, n, n);
}

// Is v in the column span of basis vectors? Used for invariance checks.
inline bool in_span(const std::vector<std::vector<Scalar>>& basis,
                    const std::vector<Scalar>& v) {
    if (basis.empty()) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }
    int rows = static_cast<int>(v.size());
    Matrix m(rows, static_cast<int>(basis.size()));
    for (int j = 0; j < static_cast<int>(basis.size()); ++j)
        for (int i = 0; i < rows; ++i)
            m.at(i, j) = basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return linear_solve(m, v).consistent;
}

} // namespace commeq
