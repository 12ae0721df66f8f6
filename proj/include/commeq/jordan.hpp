#pragma once

#include <utility>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/linsolve.hpp"
#include "commeq/matrix.hpp"
#include "commeq/scalar.hpp"

namespace commeq {

struct JordanBlockInfo {
    Scalar eigenvalue;
    int size;
};

// Exact Jordan decomposition A = P * J * P^{-1}. Blocks appear grouped by
// eigenvalue in the caller-supplied order; within one eigenvalue, sizes
// are non-increasing. identity_similarity marks P == I so callers can
// skip conjugation.
struct JordanStructure {
    std::vector<JordanBlockInfo> blocks;
    Matrix p;
    Matrix p_inv;
    bool identity_similarity = false;

    Matrix jordan_form() const {
        std::vector<Matrix> parts;
        parts.reserve(blocks.size());
        for (const auto& b : blocks) parts.push_back(Matrix::jordan_block(b.size, b.eigenvalue));
        return Matrix::direct_sum(parts);
    }

    int dimension() const {
        int n = 0;
        for (const auto& b : blocks) n += b.size;
        return n;
    }
};

struct EigenspaceDecomposition {
    std::vector<Scalar> eigenvalues;                       // distinct, caller order
    std::vector<int> dims;                                 // algebraic multiplicities
    std::vector<std::vector<std::vector<Scalar>>> bases;   // generalized eigenspace bases
};

namespace detail {

// Deduplicate while preserving first-occurrence order.
inline std::vector<Scalar> distinct_eigenvalues(const std::vector<Scalar>& values) {
    std::vector<Scalar> out;
    for (const auto& v : values) {
        bool seen = false;
        for (const auto& u : out)
            if (u == v) { seen = true; break; }
        if (!seen) out.push_back(v);
    }
    return out;
}

inline Matrix columns_to_matrix(const std::vector<std::vector<Scalar>>& cols, int rows) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (int i = 0; i < rows; ++i)
            m.at(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return m;
}

// Kernel filtration ker(M) c ker(M^2) c ... until the dimension stops
// growing; bases are the canonical RREF kernel bases.
inline std::vector<std::vector<std::vector<Scalar>>> kernel_filtration(const Matrix& m) {
    std::vector<std::vector<std::vector<Scalar>>> filt;
    Matrix power = m;
    int prev = 0;
    while (true) {
        auto basis = kernel_basis(power);
        int dim = static_cast<int>(basis.size());
        if (dim == prev) break;
        filt.push_back(std::move(basis));
        prev = dim;
        if (dim == m.n()) break;
        power = power * m;
    }
    return filt;
}

inline std::vector<Scalar> apply(const Matrix& m, const std::vector<Scalar>& v) {
    std::vector<Scalar> r(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        Scalar acc;
        for (int j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).is_zero()) continue;
            acc += m.at(i, j) * v[static_cast<std::size_t>(j)];
        }
        r[static_cast<std::size_t>(i)] = acc;
    }
    return r;
}

} // namespace detail

// Generalized eigenspaces ker (A - lambda I)^n for the supplied distinct
// eigenvalue list. Dimensions must sum to n: the list is the complete
// spectrum or the call refuses (IncompleteSpectrum). No factoring of the
// characteristic polynomial ever happens here.
inline EigenspaceDecomposition generalized_eigenspaces(const Matrix& a,
                                                       const std::vector<Scalar>& eigenvalues) {
    int n = a.n();
    EigenspaceDecomposition dec;
    dec.eigenvalues = detail::distinct_eigenvalues(eigenvalues);
    int total = 0;
    for (const auto& lambda : dec.eigenvalues) {
        Matrix m = a - lambda * Matrix::identity(n);
        auto filt = detail::kernel_filtration(m);
        auto basis = filt.empty() ? std::vector<std::vector<Scalar>>{} : filt.back();
        total += static_cast<int>(basis.size());
        dec.dims.push_back(static_cast<int>(basis.size()));
        dec.bases.push_back(std::move(basis));
    }
    if (total != n)
        throw IncompleteSpectrum("generalized eigenspace dimensions sum to " +
                                 std::to_string(total) + ", expected " + std::to_string(n));
    return dec;
}

// Jordan chains via the kernel filtration. Chain tops are chosen greedily
// from the canonical kernel bases in order, so the decomposition is
// deterministic; ties go to the basis vector with the lowest free column.
inline JordanStructure jordan_structure(const Matrix& a, const std::vector<Scalar>& eigenvalues) {
    int n = a.n();
    auto distinct = detail::distinct_eigenvalues(eigenvalues);

    JordanStructure js;
    std::vector<std::vector<Scalar>> columns;
    int total = 0;

    for (const auto& lambda : distinct) {
        Matrix m = a - lambda * Matrix::identity(n);
        auto filt = detail::kernel_filtration(m);
        if (filt.empty()) continue;  // not actually an eigenvalue
        int q = static_cast<int>(filt.size());
        auto dim_at = [&](int j) {
            if (j <= 0) return 0;
            if (j > q) return static_cast<int>(filt.back().size());
            return static_cast<int>(filt[static_cast<std::size_t>(j - 1)].size());
        };
        total += dim_at(q);

        // Chains alive at the current level; each is the list of vectors
        // collected so far, newest (the top) last.
        std::vector<std::vector<std::vector<Scalar>>> chains;
        std::vector<int> alive;  // indices into `chains`

        for (int j = q; j >= 1; --j) {
            // Extend chains that came from level j+1 by applying M.
            std::vector<std::vector<Scalar>> span_cols;
            if (j >= 2)
                for (const auto& v : filt[static_cast<std::size_t>(j - 2)])
                    span_cols.push_back(v);
            for (int idx : alive) {
                auto& chain = chains[static_cast<std::size_t>(idx)];
                chain.push_back(detail::apply(m, chain.back()));
                span_cols.push_back(chain.back());
            }
            // Chains of height >= j number dim ker M^j - dim ker M^{j-1};
            // subtracting the ones already alive leaves the births at j.
            int want = dim_at(j) - dim_at(j - 1) - static_cast<int>(alive.size());
            if (want > 0) {
                Matrix span_m = detail::columns_to_matrix(span_cols, n);
                int base_rank = span_cols.empty() ? 0 : rank(span_m);
                for (const auto& cand : filt[static_cast<std::size_t>(j - 1)]) {
                    if (want == 0) break;
                    auto cols = span_cols;
                    cols.push_back(cand);
                    if (rank(detail::columns_to_matrix(cols, n)) > base_rank) {
                        span_cols = std::move(cols);
                        ++base_rank;
                        chains.push_back({cand});
                        alive.push_back(static_cast<int>(chains.size()) - 1);
                        --want;
                    }
                }
                if (want != 0)
                    throw Error("jordan chain selection failed");  // unreachable on valid input
            }
        }

        // Emit chains in creation order (longest first). Within a chain the
        // basis is M^{len-1} v, ..., M v, v so that M maps each column to
        // the previous one.
        for (const auto& chain : chains) {
            js.blocks.push_back({lambda, static_cast<int>(chain.size())});
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) columns.push_back(*it);
        }
    }

    if (total != n)
        throw IncompleteSpectrum("eigenvalue list does not span: dimensions sum to " +
                                 std::to_string(total) + ", expected " + std::to_string(n));

    js.p = detail::columns_to_matrix(columns, n);
    js.p_inv = inverse(js.p);
    js.identity_similarity = (js.p == Matrix::identity(n));
    return js;
}

// One Jordan block per distinct eigenvalue.
inline bool is_non_derogatory(const JordanStructure& js) {
    std::vector<Scalar> seen;
    for (const auto& b : js.blocks) {
        for (const auto& v : seen)
            if (v == b.eigenvalue) return false;
        seen.push_back(b.eigenvalue);
    }
    return true;
}

} // namespace commeq
