#pragma once

#include <string>
#include <utility>
#include <vector>

#include "commeq/errors.hpp"
#include "commeq/scalar.hpp"

namespace commeq {

// Dense exact matrix over Q(i). Rectangular shapes are allowed so the
// linear-solve layer can reuse the type; the solver-facing operations
// check squareness where the math requires it.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
        return m;
    }

    // Nilpotent Jordan block: ones on the superdiagonal.
    static Matrix jordan_nilpotent(int n) {
        Matrix m(n, n);
        for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = Scalar(1);
        return m;
    }

    static Matrix jordan_block(int n, const Scalar& lambda) {
        Matrix m = jordan_nilpotent(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = lambda;
        return m;
    }

    static Matrix diagonal(const std::vector<Scalar>& d) {
        Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (int i = 0; i < m.rows_; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    int n() const {
        if (!is_square()) throw DimensionMismatch("matrix is not square");
        return rows_;
    }

    Scalar& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_upper_triangular() const {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < i && j < cols_; ++j)
                if (!at(i, j).is_zero()) return false;
        return true;
    }

    bool is_strictly_upper_triangular() const {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j <= i && j < cols_; ++j)
                if (!at(i, j).is_zero()) return false;
        return true;
    }

    std::vector<Scalar> diagonal_entries() const {
        int k = rows_ < cols_ ? rows_ : cols_;
        std::vector<Scalar> d(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) d[static_cast<std::size_t>(i)] = at(i, i);
        return d;
    }

    Scalar trace() const {
        Scalar t;
        for (int i = 0; i < n(); ++i) t += at(i, i);
        return t;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.e_) x = -x;
        return r;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }
    Matrix& operator*=(const Scalar& s) {
        for (auto& x : e_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const Scalar& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    r.at(i, j) += aik * bkj;
                }
            }
        }
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix pow(unsigned e) const {
        Matrix acc = identity(n());
        Matrix base = *this;
        unsigned k = e;
        while (k) {
            if (k & 1u) acc = acc * base;
            if (k >>= 1u) base = base * base;
        }
        return acc;
    }

    Matrix block(int r0, int c0, int h, int w) const {
        if (r0 < 0 || c0 < 0 || r0 + h > rows_ || c0 + w > cols_)
            throw DimensionMismatch("block out of range");
        Matrix b(h, w);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) b.at(i, j) = at(r0 + i, c0 + j);
        return b;
    }

    void set_block(int r0, int c0, const Matrix& b) {
        if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw DimensionMismatch("block out of range");
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
    }

    static Matrix direct_sum(const std::vector<Matrix>& parts) {
        int n = 0;
        for (const auto& p : parts) n += p.n();
        Matrix r(n, n);
        int off = 0;
        for (const auto& p : parts) {
            r.set_block(off, off, p);
            off += p.n();
        }
        return r;
    }

    std::vector<Scalar> column(int j) const {
        std::vector<Scalar> c(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i) c[static_cast<std::size_t>(i)] = at(i, j);
        return c;
    }

    std::vector<Scalar> row(int i) const {
        std::vector<Scalar> r(static_cast<std::size_t>(cols_));
        for (int j = 0; j < cols_; ++j) r[static_cast<std::size_t>(j)] = at(i, j);
        return r;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            s += i == 0 ? "[" : " ";
            s += "[";
            for (int j = 0; j < cols_; ++j) {
                if (j) s += ", ";
                s += at(i, j).str();
            }
            s += i + 1 == rows_ ? "]]" : "]\n";
        }
        return s;
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("matrix shape mismatch");
    }

    int rows_;
    int cols_;
    std::vector<Scalar> e_;
};

inline Matrix commutator(const Matrix& x, const Matrix& a) {
    if (!x.is_square() || !a.is_square() || x.n() != a.n())
        throw DimensionMismatch("commutator needs square matrices of equal size");
    return x * a - a * x;
}

// Smallest k >= 1 with M^k = 0; k = n reached means checking M^n alone
// decides nilpotency (Cayley-Hamilton). Throws NotNilpotent otherwise.
// The zero matrix has index 1 by this convention; callers that need the
// "index of the zero part" handle n = 0 themselves.
inline int nilpotency_index(const Matrix& m) {
    int n = m.n();
    if (n == 0) return 1;
    Matrix p = m;
    for (int k = 1; k <= n; ++k) {
        if (p.is_zero()) return k;
        if (k < n) p = p * m;
    }
    throw NotNilpotent("matrix is not nilpotent");
}

inline bool is_nilpotent(const Matrix& m) {
    if (m.n() == 0) return true;
    return m.pow(static_cast<unsigned>(m.n())).is_zero();
}

// Entries (j, j+i) for i >= 0; i = 1 is the superdiagonal. The slot
// count shrinks with i, matching the grading used by the solvers.
inline std::vector<Scalar> false_diagonal(const Matrix& m, int i) {
    int n = m.n();
    if (i < 0 || i >= n) throw DimensionMismatch("false diagonal index out of range");
    std::vector<Scalar> d(static_cast<std::size_t>(n - i));
    for (int j = 0; j + i < n; ++j) d[static_cast<std::size_t>(j)] = m.at(j, j + i);
    return d;
}

} // namespace commeq
