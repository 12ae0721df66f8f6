#pragma once

#include <vector>

#include "commeq/errors.hpp"
#include "commeq/linsolve.hpp"
#include "commeq/matrix.hpp"

// Sylvester-type equations X B - C X = D for rectangular X, solved by
// vectorization. The operator x -> xB - Cx on p x q matrices is linear;
// flattening X row-major gives a pq x pq system.

namespace commeq {

// Operator matrix of x -> xB - Cx in the given flattening order.
// `order` maps flat index -> (row, col) of X; it must list every cell once.
inline Matrix sylvester_operator(const Matrix& b, const Matrix& c,
                                 const std::vector<std::pair<int, int>>& order) {
    int p = c.n();
    int q = b.n();
    int dim = p * q;
    if (static_cast<int>(order.size()) != dim)
        throw DimensionMismatch("flattening order must cover every entry");
    std::vector<int> flat_of(static_cast<size_t>(dim), -1);
    for (int t = 0; t < dim; ++t) {
        auto [r, col] = order[static_cast<size_t>(t)];
        flat_of[static_cast<size_t>(r * q + col)] = t;
    }
    Matrix op(dim, dim);
    for (int t = 0; t < dim; ++t) {
        auto [i, j] = order[static_cast<size_t>(t)];
        // (XB)_{ij} = sum_k x_{ik} b_{kj};  (CX)_{ij} = sum_k c_{ik} x_{kj}
        for (int k = 0; k < q; ++k) {
            int u = flat_of[static_cast<size_t>(i * q + k)];
            op.at(t, u) += b.at(k, j);
        }
        for (int k = 0; k < p; ++k) {
            int u = flat_of[static_cast<size_t>(k * q + j)];
            op.at(t, u) -= c.at(i, k);
        }
    }
    return op;
}

inline std::vector<std::pair<int, int>> row_major_order(int p, int q) {
    std::vector<std::pair<int, int>> order;
    order.reserve(static_cast<size_t>(p * q));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) order.emplace_back(i, j);
    return order;
}

// Ordering by row descending, then column ascending. For upper triangular
// B and C this makes the operator matrix lower triangular with diagonal
// entries b_{jj} - c_{ii}, which is how solvability is read off.
inline std::vector<std::pair<int, int>> triangular_order(int p, int q) {
    std::vector<std::pair<int, int>> order;
    order.reserve(static_cast<size_t>(p * q));
    for (int i = p - 1; i >= 0; --i)
        for (int j = 0; j < q; ++j) order.emplace_back(i, j);
    return order;
}

struct SylvesterSolution {
    bool consistent = false;
    Matrix particular;           // one solution of XB - CX = D
    std::vector<Matrix> kernel;  // basis of XB - CX = 0
    std::vector<std::pair<int, int>> kernel_markers;  // (row, col) of each basis vector's free coordinate
};

inline SylvesterSolution sylvester_solve(const Matrix& b, const Matrix& c, const Matrix& d) {
    int p = c.n();
    int q = b.n();
    if (d.rows() != p || d.cols() != q)
        throw DimensionMismatch("right-hand side shape must match the unknown");
    auto order = row_major_order(p, q);
    Matrix op = sylvester_operator(b, c, order);
    std::vector<Scalar> rhs(static_cast<size_t>(p * q));
    for (int t = 0; t < p * q; ++t) {
        auto [i, j] = order[static_cast<size_t>(t)];
        rhs[static_cast<size_t>(t)] = d.at(i, j);
    }
    LinearSolution ls = linear_solve(op, rhs);
    SylvesterSolution out;
    out.consistent = ls.consistent;
    if (!ls.consistent) return out;
    auto unflatten = [&](const std::vector<Scalar>& v) {
        Matrix m(p, q);
        for (int t = 0; t < p * q; ++t) {
            auto [i, j] = order[static_cast<size_t>(t)];
            m.at(i, j) = v[static_cast<size_t>(t)];
        }
        return m;
    };
    out.particular = unflatten(ls.particular);
    for (const auto& kv : ls.kernel) out.kernel.push_back(unflatten(kv));
    for (int f : ls.free_cols)
        out.kernel_markers.push_back(order[static_cast<size_t>(f)]);
    return out;
}

} // namespace commeq
