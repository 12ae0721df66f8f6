#pragma once

#include <random>
#include <string>
#include <vector>

#include "commeq/matrix.hpp"
#include "commeq/scalar.hpp"

namespace testutil {

inline commeq::Scalar sc(const std::string& text) { return commeq::Scalar::parse(text); }

inline commeq::Matrix mat(const std::vector<std::vector<std::string>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    commeq::Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = sc(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return m;
}

// Deterministic integer draws; modulo bias is irrelevant for test data.
class Rng {
public:
    explicit Rng(unsigned long long seed) : g_(seed) {}

    long long igen(long long lo, long long hi) {
        auto span = static_cast<unsigned long long>(hi - lo + 1);
        return lo + static_cast<long long>(g_() % span);
    }

    commeq::Scalar iscalar(long long lo, long long hi) {
        return commeq::Scalar(commeq::Rational(static_cast<long>(igen(lo, hi))));
    }

    commeq::Scalar nonzero(long long lo, long long hi) {
        for (;;) {
            commeq::Scalar s = iscalar(lo, hi);
            if (!s.is_zero()) return s;
        }
    }

private:
    std::mt19937_64 g_;
};

inline commeq::Matrix upper_triangular(Rng& rng, const std::vector<commeq::Scalar>& diag,
                                       long long range) {
    int n = static_cast<int>(diag.size());
    commeq::Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = diag[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) m.at(i, j) = rng.iscalar(-range, range);
    }
    return m;
}

// Integer matrix with unit diagonal; its inverse is exact and integer.
inline commeq::Matrix unit_upper(Rng& rng, int n, long long range) {
    commeq::Matrix m = commeq::Matrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.at(i, j) = rng.iscalar(-range, range);
    return m;
}

} // namespace testutil
