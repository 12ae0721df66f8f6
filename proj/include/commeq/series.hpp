#pragma once

#include <vector>

#include "commeq/errors.hpp"
#include "commeq/scalar.hpp"

namespace commeq {

// Truncated power series with zero constant term: coeffs[k-1] is the
// coefficient of t^k. The fluctuation part of an analytic function around
// a point is always of this shape, which is all the solvers need.
struct SeriesCoeffs {
    std::vector<Scalar> c;

    int order() const { return static_cast<int>(c.size()); }

    // Coefficient of t^k, zero-padded beyond the stored order.
    Scalar coeff(int k) const {
        if (k < 1 || k > order()) return Scalar();
        return c[static_cast<std::size_t>(k - 1)];
    }

    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
};

// Product of two zero-constant series, truncated at `order`.
inline SeriesCoeffs series_mul(const SeriesCoeffs& a, const SeriesCoeffs& b, int order) {
    SeriesCoeffs r;
    r.c.assign(static_cast<std::size_t>(order), Scalar());
    for (int i = 1; i <= a.order() && i < order; ++i) {
        const Scalar& ai = a.coeff(i);
        if (ai.is_zero()) continue;
        for (int j = 1; j <= b.order() && i + j <= order; ++j) {
            const Scalar& bj = b.coeff(j);
            if (bj.is_zero()) continue;
            r.c[static_cast<std::size_t>(i + j - 1)] += ai * bj;
        }
    }
    return r;
}

// outer(inner(t)) truncated at `order`; both series have zero constant
// term, so the composition does too.
inline SeriesCoeffs series_compose(const SeriesCoeffs& outer, const SeriesCoeffs& inner,
                                   int order) {
    SeriesCoeffs r;
    r.c.assign(static_cast<std::size_t>(order), Scalar());
    SeriesCoeffs pw;  // inner^j, truncated
    pw.c.assign(static_cast<std::size_t>(order), Scalar());
    for (int k = 1; k <= order; ++k) pw.c[static_cast<std::size_t>(k - 1)] = inner.coeff(k);
    for (int j = 1; j <= order; ++j) {
        const Scalar& gj = outer.coeff(j);
        if (!gj.is_zero())
            for (int k = j; k <= order; ++k)
                r.c[static_cast<std::size_t>(k - 1)] += gj * pw.coeff(k);
        if (j < order) pw = series_mul(pw, inner, order);
    }
    return r;
}

// Compositional inverse: returns g with g(f(t)) = t (mod t^{order+1}).
// Solved order by order; the t^m equation is triangular with pivot c_1^m.
inline SeriesCoeffs series_reversion(const SeriesCoeffs& f, int order) {
    Scalar c1 = f.coeff(1);
    if (c1.is_zero())
        throw PreconditionFailed("series reversion needs a nonzero linear coefficient");
    SeriesCoeffs g;
    g.c.assign(static_cast<std::size_t>(order), Scalar());
    if (order == 0) return g;
    g.c[0] = c1.inverse();

    // pw[j] holds f^j truncated at `order`; built incrementally.
    std::vector<SeriesCoeffs> pw(static_cast<std::size_t>(order) + 1);
    pw[1].c.assign(static_cast<std::size_t>(order), Scalar());
    for (int k = 1; k <= order; ++k) pw[1].c[static_cast<std::size_t>(k - 1)] = f.coeff(k);
    for (int j = 2; j <= order; ++j)
        pw[static_cast<std::size_t>(j)] =
            series_mul(pw[static_cast<std::size_t>(j - 1)], pw[1], order);

    for (int m = 2; m <= order; ++m) {
        Scalar acc;
        for (int j = 1; j < m; ++j)
            acc += g.c[static_cast<std::size_t>(j - 1)] * pw[static_cast<std::size_t>(j)].coeff(m);
        g.c[static_cast<std::size_t>(m - 1)] = -acc / c1.pow(static_cast<unsigned>(m));
    }
    return g;
}

} // namespace commeq
